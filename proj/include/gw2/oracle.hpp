#pragma once

#include <string>
#include <vector>

#include "gw2/params.hpp"
#include "gw2/propagator.hpp"
#include "gw2/rational.hpp"

namespace gw2::oracle {

// Subtraction scheme of the quartic vertex: the interaction is
//   (lambda/4) [ sum phi^4  -  beta * sum phi^2 T  +  c0 * T2 ].
// beta=8, c0=6 is the full tadpole+vacuum subtraction; beta=2, c0=0 is the
// variant whose intermediate-field representation carries no residual linear
// sigma term (see normalization note in lve.hpp), used for the loop-vertex
// Monte Carlo comparisons.
struct WickScheme {
    int beta = 8;
    int c0 = 6;
};

inline constexpr WickScheme kSubtractedScheme{8, 6};
inline constexpr WickScheme kLeafCancelledScheme{2, 0};

/// Coefficient of lambda^k in log Z, exact, by Wick-pairing enumeration over
/// the Gaussian measure with covariance <phi_mn phi_kl> = C_mn d_ml d_nk and
/// cumulant extraction. k <= 2, cutoff <= 10.
Rational vacuum_coefficient(int order, const prop::RationalCovariance& cov,
                            WickScheme scheme = kSubtractedScheme);

/// Same coefficient through the second, independent route: only pairings
/// whose contraction graph connects all interaction vertices are summed
/// (connected enumeration instead of moment cumulants).
Rational vacuum_coefficient_connected(int order, const prop::RationalCovariance& cov,
                                      WickScheme scheme = kSubtractedScheme);

/// Total of the contraction terms classified as pure tadpole-sum structures
/// (every propagator factor closes into a free row sum or carries an explicit
/// counterterm mark). These are the divergent structures; renormalization
/// means this total vanishes.
Rational divergent_structure_total(int order, const prop::RationalCovariance& cov,
                                   WickScheme scheme = kSubtractedScheme);

/// Coefficient of lambda^k in the connected 2-point function S(mn, nm);
/// k = 0 returns C_mn.
Rational two_point_coefficient(int order, int m, int n, const prop::RationalCovariance& cov,
                               WickScheme scheme = kSubtractedScheme);

struct GroupedAmplitude {
    std::string name;
    Rational value;      // in units of the common coupling power
    long multiplicity;   // contraction count entering the value
};

struct GroupedAmplitudes {
    int order = 0;
    std::vector<GroupedAmplitude> parts;
    Rational total;
};

/// The three first-order amplitudes (coefficients -3/2, -1, +5/2 of the
/// common T2 structure), each evaluated by its own index summation.
GroupedAmplitudes grouped_order1(const prop::RationalCovariance& cov);

/// The three second-order amplitudes with contraction multiplicities
/// (8, 9, 4); prefactors reduce to (D_A/8, -D_B/6, D_C/8) of the common T3
/// structure, each again evaluated by its own summation. `perturb_b` shifts
/// the class-B multiplicity (mutation testing).
GroupedAmplitudes grouped_order2(const prop::RationalCovariance& cov, int perturb_b = 0);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Direct Monte Carlo of log Z at small coupling: averages exp(-S_int) over
/// the Gaussian matrix ensemble. Deterministic for fixed seed regardless of
/// worker count.
McEstimate mc_log_z(const ModelParams& p, double lambda, WickScheme scheme, long samples,
                    std::uint64_t seed, int workers = 1);

}  // namespace gw2::oracle
