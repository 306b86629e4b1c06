#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace gw2 {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // relative to weight function exp(-x^2)
};

// Gauss-Hermite rule: sum_i w_i f(x_i) ~ integral exp(-x^2) f(x) dx.
QuadRule gauss_hermite(int n);

// Adaptive Gauss-Kronrod (G7/K15) on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 1e-14, int max_depth = 40);

// Laplace-type integral over [0, inf): integral f(t) dt where f decays like
// exp(-t). Integrates on dyadic panels until the tail is negligible.
double integrate_laplace(const std::function<double(double)>& f, double rel_tol = 1e-9,
                         double tail_abs = 1e-15);

}  // namespace gw2
