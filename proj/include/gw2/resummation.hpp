#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gw2/rational.hpp"

namespace gw2::resum {

// Expansion coefficients a_k in the coupling, k = 0..K_max.
struct PowerSeries {
    std::vector<double> a;
};

PowerSeries from_rationals(const std::vector<Rational>& coeffs);

struct BorelSeries {
    std::vector<double> b;          // b_k = a_k / k!
    double radius_estimate = 0.0;   // from the last coefficient ratio
};

BorelSeries borel_transform(const PowerSeries& s);

/// Inverse check helper: multiply back by k!.
PowerSeries inverse_borel(const BorelSeries& b);

// [p/q] rational approximant of a truncated series.
struct PadeApproximant {
    std::vector<double> num;  // degree p
    std::vector<double> den;  // degree q, den[0] = 1
    int p = 0;
    int q = 0;
    bool reduced = false;  // degrees lowered after a singular system

    double eval(double t) const;
    std::complex<double> eval(std::complex<double> t) const;
    std::vector<std::complex<double>> poles() const;
};

PadeApproximant pade_approximant(const std::vector<double>& coeffs, int p, int q);

struct BorelSumResult {
    double value = 0.0;
    PadeApproximant pade;
};

/// Laplace integral int_0^inf e^{-t} B(lambda t) dt of the Pade-continued
/// Borel transform. Throws when a real pole of the approximant lies on the
/// integration ray.
BorelSumResult borel_sum(const PowerSeries& s, double lambda, int p, int q);

struct GrowthFit {
    double K = 0.0;          // fitted scale of |a_k| ~ K^k k!
    bool factorial_type = false;
    int points = 0;
};

/// Least-squares fit of log|a_k| against log(K^k k!).
GrowthFit remainder_growth(const PowerSeries& s);

struct NelsonReport {
    double t2 = 0.0;                   // counterterm square sum at the cutoff
    double naive_exponent = 0.0;       // lambda * T2
    double improved_exponent = 0.0;    // sum_{1<=m<=lnL} ln^2(L/m), scale-restricted
    double cube = 0.0;                 // (ln L)^3, bounds the improved exponent
    double bound_2lambda = 0.0;        // 2 lambda (ln L)^3
    long j_max = 0;                    // floor(ln L / (2 ln M))
    double combined_log = 0.0;         // full stopping-factor exponent at j_max
    double dominance_log = 0.0;        // (lambda - a) j_max^3
    bool convergent_dominates = false;
};

NelsonReport nelson_report(long long cutoff, double lambda, double a, double slice_base = 2.0);

}  // namespace gw2::resum
