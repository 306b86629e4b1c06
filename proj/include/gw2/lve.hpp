#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gw2/oracle.hpp"
#include "gw2/params.hpp"
#include "gw2/propagator.hpp"
#include "gw2/rational.hpp"

namespace gw2::lve {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Normalization note. The interaction (lambda/4) Tr :phi^4: decouples through
// a Hermitian intermediate field with coupling c = sqrt(lambda/2), i.e. the
// resolvent scale s = sqrt(2 mu) at mu = lambda/4. The loop vertex in the
// subtracted scheme (beta=8, c0=6) keeps a residual linear term 3ic Tr(T
// sigma) after the leaf tadpole cancels part of the counterterm; the
// leaf-cancelled scheme (beta=2, c0=0) has none, which makes the tree
// expansion match the perturbative series order by order (n vertices start
// contributing at lambda^n). The Monte Carlo tree machinery uses the latter.
// ---------------------------------------------------------------------------

/// sigma_hat = I (x) sigma + sigma (x) I; rejects non-Hermitian input
/// (tolerance 1e-10).
Eigen::MatrixXcd lift_sigma(const Eigen::MatrixXcd& sigma);

/// C^{1/2} sigma_hat C^{1/2}, Hermitian for Hermitian sigma.
Eigen::MatrixXcd sandwich(const Eigen::MatrixXcd& sigma_hat, const prop::Covariance& cov);

struct ResolventResult {
    Eigen::MatrixXcd matrix;
    double condition = 0.0;   // estimate, reported when outside the safe domain
    bool in_domain = true;    // |Arg sqrt(lambda)| <= pi/4
};

/// R = (1 + i sqrt(2 lambda) C^{1/2} sigma_hat C^{1/2})^{-1}.
ResolventResult resolvent(const Eigen::MatrixXcd& sigma, Complex lambda,
                          const prop::Covariance& cov);

struct ResolventNorms {
    double r_norm = 0.0;       // ||R||
    double k_norm = 0.0;       // ||R - 1||
};

/// Operator norms from the spectrum of the Hermitian sandwich.
ResolventNorms resolvent_norms(const Eigen::MatrixXcd& sigma, Complex lambda,
                               const prop::Covariance& cov);

/// Loop vertex V(sigma) = -1/2 Tr log2(1 + i c H) + 3 i c Tr(T sigma)
/// + (5/2) lambda T2, c = sqrt(lambda/2), H the Hermitian sandwich,
/// log2(1+x) = log(1+x) - x. V(0) = (5/2) lambda T2.
Complex loop_vertex(const Eigen::MatrixXcd& sigma, Complex lambda, const prop::Covariance& cov);

/// p-th sigma-derivative of -1/2 Tr log(1 + i c H) at the given index pairs
/// (p >= 2: sum over insertion orderings of full-resolvent chains; p = 1
/// returns the leaf value, the derivative of the log2 form).
Complex loop_vertex_derivative(const Eigen::MatrixXcd& sigma,
                               const std::vector<std::pair<int, int>>& index_pairs,
                               Complex lambda, const prop::Covariance& cov);

// --- spanning trees and the interpolated ensemble -----------------------------

struct SpanningTree {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // n-1 edges on labeled vertices
    std::vector<double> weights;             // per-edge weakening parameters
};

/// All labeled trees on n vertices (n^(n-2) of them), n <= 6, by Prufer
/// sequence decoding.
std::vector<SpanningTree> spanning_trees(int n);

/// W_vv' = 1 on the diagonal, otherwise the minimum weight along the unique
/// tree path. Positive semidefinite for weights in [0,1].
Eigen::MatrixXd weakening_matrix(const SpanningTree& tree);

/// Correlated Hermitian ensemble: <sigma^u_mn sigma^v_kl> = W_uv d_ml d_nk.
/// Cholesky square root with an eigenvalue-clamp fallback (tolerance 1e-10).
std::vector<Eigen::MatrixXcd> sample_sigma_ensemble(const Eigen::MatrixXd& weakening,
                                                    int cutoff, std::uint64_t seed);

// --- tree amplitudes -----------------------------------------------------------

struct TreeAmplitude {
    Complex mean{0.0, 0.0};
    double stderr_ = 0.0;
    long n_samples = 0;
    SpanningTree tree;
};

/// Monte Carlo estimate of the BKAR amplitude of one spanning tree (n <= 3):
/// stratified weakening parameters, correlated sigma ensemble, and the
/// explicit edge-derivative calculus for these orders.
TreeAmplitude tree_amplitude(const SpanningTree& tree, double lambda,
                             const prop::Covariance& cov, long n_samples, std::uint64_t seed,
                             int workers = 1);

struct LveResult {
    Complex log_z{0.0, 0.0};
    double stderr_ = 0.0;
    std::vector<TreeAmplitude> trees;
    std::vector<double> order_totals;  // |sum of tree amplitudes| per vertex count
    double fitted_growth_constant = 0.0;
};

LveResult log_z_lve(double lambda, int n_max, const prop::Covariance& cov, long samples,
                    std::uint64_t seed, int workers = 1);

// --- multiscale identities ------------------------------------------------------

/// Residual of R^j = R^(j-1) - R^(j-1) sigma_hat D^j R^j with
/// D^k = i sqrt(2 lambda) C^k, in operator norm relative to ||R^j||.
double resolvent_induction_residual(const Eigen::MatrixXcd& sigma, Complex lambda, int scale,
                                    const prop::Covariance& cov);

struct TadpolePair {
    Rational tadpole;      // -2 lambda sum_m T_m^2
    Rational counterterm;  // +2 lambda sum_m T_m^2
};

/// Inner tadpole against its counterterm, both evaluated through second
/// moments of the diagonal sigma ensemble; the two sides use independently
/// constructed tadpole tables. Exact rationals.
TadpolePair inner_tadpole_cancellation(const Rational& lambda,
                                       const prop::RationalCovariance& cov);

struct SlicedTadpolePair {
    double tadpole = 0.0;
    double counterterm = 0.0;
};

/// Per-scale version with C replaced by the Schwinger slice C^j and T by the
/// slice row sums.
SlicedTadpolePair sliced_inner_tadpole_cancellation(double lambda, const prop::Covariance& cov,
                                                    int scale);

// --- stopping budget -------------------------------------------------------------

struct BudgetReport {
    double exp_convergent = 0.0;     // -a j^3
    double exp_combinatorial = 0.0;  // 2 j^2 ln j
    double exp_nelson = 0.0;         // lambda j^3
    double combined_log = 0.0;       // sum of the three exponents
    bool combined_below_one = false;
    double dominance_log = 0.0;      // (lambda - a) j^3
    bool convergent_dominates = false;
    bool bound_violated = false;     // a <= lambda
    long threshold_j = -1;           // least j with combined factor < 1 onward
};

BudgetReport stopping_budget(long j_max, double lambda, double a);

}  // namespace gw2::lve
