#pragma once

#include <stdexcept>
#include <string>

namespace gw2 {

// Physical parameters of the matrix-regularized model. Matrix indices run
// 0..cutoff inclusive, so arrays have side cutoff+1.
struct ModelParams {
    double theta = 4.0;   // noncommutativity parameter, > 0
    double mu2 = 0.0;     // mass squared, >= 0
    double omega = 1.0;   // oscillator frequency, in (0, 1]
    int cutoff = 3;       // ultraviolet index cutoff, >= 1

    void validate() const {
        if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
        if (mu2 < 0.0) throw std::invalid_argument("mu2 must be nonnegative");
        if (!(omega > 0.0) || omega > 1.0)
            throw std::invalid_argument("omega must lie in (0, 1]");
        if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
    }

    int dim() const { return cutoff + 1; }
};

inline ModelParams default_params(int cutoff) {
    ModelParams p;
    p.cutoff = cutoff;
    p.validate();
    return p;
}

}  // namespace gw2
