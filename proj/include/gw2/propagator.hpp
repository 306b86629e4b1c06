#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gw2/params.hpp"
#include "gw2/rational.hpp"

namespace gw2::prop {

/// Kinetic matrix Delta on the doubled index space, size (cutoff+1)^2.
/// Row index (m,n) -> m*N+n, column (k,l) -> k*N+l. Diagonal part
/// [mu2 + (2/theta)(1+Omega^2)(m+n+1)] delta_ml delta_nk, plus the
/// off-diagonal (1-Omega^2) ladder terms.
Eigen::MatrixXd kinetic_matrix(const ModelParams& p);

// Diagonal covariance kernel at Omega = 1 with its square root and the
// Schwinger slice base M.
struct Covariance {
    ModelParams params;
    double slice_base = 2.0;
    Eigen::ArrayXXd diag;       // C_mn
    Eigen::ArrayXXd sqrt_diag;  // C_mn^(1/2)
    Eigen::ArrayXXd rate;       // mu2 + (4/theta)(m+n+1)
};

/// Closed-form covariance; requires omega == 1 (otherwise invert
/// kinetic_matrix numerically).
Covariance covariance(const ModelParams& p, double slice_base = 2.0);

/// Schwinger slice C^j: integral of exp(-alpha * rate) over the alpha-window
/// [M^-2j, M^-(2j-2)] for j >= 1; j = 0 is the tail window [1, inf).
Eigen::ArrayXXd sliced_propagator(const Covariance& cov, int j);

struct CountertermTable {
    std::vector<double> T;  // tadpole counterterm T_m = sum_q C_mq
    double T2 = 0.0;        // sum_m T_m^2
    double T3 = 0.0;        // sum_p T_p^3
    int cutoff = 0;
};

CountertermTable counterterms(const Covariance& cov);

/// Per-slice counterterm table built from C^j in place of C. Row sums are
/// accumulated in ascending q order (the inner-tadpole cancellation check
/// relies on reproducible accumulation).
CountertermTable sliced_counterterms(const Covariance& cov, int j);

// --- exact rational side ------------------------------------------------------

struct RationalCovariance {
    Rational theta;
    Rational mu2;
    int cutoff = 0;
    Rational at(int m, int n) const;
};

RationalCovariance rational_covariance(const Rational& theta, const Rational& mu2, int cutoff);

struct RationalCounterterms {
    std::vector<Rational> T;
    Rational T2;
    Rational T3;
    int cutoff = 0;
};

RationalCounterterms rational_counterterms(const RationalCovariance& cov);

/// Exact composition sum_{r,s} Delta_{mn,rs} C_{sr,kl} at Omega = 1; returns
/// the maximum absolute deviation from delta_ml delta_nk (exactly zero when
/// the defining relation holds).
bool kinetic_covariance_identity_exact(const Rational& theta, const Rational& mu2, int cutoff);

// --- asymptotics ---------------------------------------------------------------

/// 2 ln^2 2 + pi^2/6, the coefficient of the linear growth of T2 in the cutoff.
double asymptotic_constant();

/// Independent evaluation of integral_0^1 ln^2((1+x)/x) dx by quadrature.
double asymptotic_constant_quadrature();

/// T_m for large cutoffs via digamma: H_{cutoff+m+1} - H_m.
double tadpole_large(int m, long long cutoff);

/// T2(cutoff) = sum_m T_m^2 evaluated with the digamma form.
double t2_large(long long cutoff);

}  // namespace gw2::prop
