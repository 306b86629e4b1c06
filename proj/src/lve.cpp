#include "gw2/lve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gw2/mc.hpp"
#include "gw2/rng.hpp"

namespace gw2::lve {

namespace {

int flat(int a, int b, int N) { return a * N + b; }

Eigen::VectorXd flat_sqrt_cov(const prop::Covariance& cov) {
    const int N = cov.diag.rows();
    Eigen::VectorXd s(N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) s(flat(a, b, N)) = cov.sqrt_diag(a, b);
    return s;
}

Complex action_coupling(Complex lambda) { return std::sqrt(0.5 * lambda); }

Complex log2c(Complex z) { return std::log(Complex(1.0, 0.0) + z) - z; }

// I (x) M + M (x) I
Eigen::MatrixXcd kron_lift(const Eigen::MatrixXcd& m) {
    const int N = m.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N * N, N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int d = 0; d < N; ++d) {
                out(flat(a, b, N), flat(a, d, N)) += m(b, d);  // I (x) M
                out(flat(b, a, N), flat(d, a, N)) += m(b, d);  // M (x) I
            }
    return out;
}

Eigen::MatrixXcd resolvent_matrix(const Eigen::MatrixXcd& sigma_hat, Complex scale,
                                  const prop::Covariance& cov) {
    const int NN = sigma_hat.rows();
    const Eigen::VectorXd s = flat_sqrt_cov(cov);
    Eigen::MatrixXcd h = sigma_hat;
    for (int i = 0; i < NN; ++i)
        for (int j = 0; j < NN; ++j) h(i, j) *= s(i) * s(j);
    const Eigen::MatrixXcd A =
        Eigen::MatrixXcd::Identity(NN, NN) + Complex(0, 1) * scale * h;
    return A.partialPivLu().solve(Eigen::MatrixXcd::Identity(NN, NN));
}

}  // namespace

Eigen::MatrixXcd lift_sigma(const Eigen::MatrixXcd& sigma) {
    if ((sigma - sigma.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("lift_sigma: sigma must be Hermitian");
    return kron_lift(sigma);
}

Eigen::MatrixXcd sandwich(const Eigen::MatrixXcd& sigma_hat, const prop::Covariance& cov) {
    const int NN = sigma_hat.rows();
    const Eigen::VectorXd s = flat_sqrt_cov(cov);
    Eigen::MatrixXcd h = sigma_hat;
    for (int i = 0; i < NN; ++i)
        for (int j = 0; j < NN; ++j) h(i, j) *= s(i) * s(j);
    return h;
}

ResolventResult resolvent(const Eigen::MatrixXcd& sigma, Complex lambda,
                          const prop::Covariance& cov) {
    const Eigen::MatrixXcd sh = lift_sigma(sigma);
    const Complex scale = std::sqrt(2.0 * lambda);
    ResolventResult res;
    res.matrix = resolvent_matrix(sh, scale, cov);
    res.in_domain = std::abs(std::arg(std::sqrt(lambda))) <= M_PI / 4 + 1e-12;
    if (!res.in_domain) {
        // report conditioning through the singular values of 1 + i s H
        const Eigen::MatrixXcd h = sandwich(sh, cov);
        const Eigen::MatrixXcd A =
            Eigen::MatrixXcd::Identity(h.rows(), h.cols()) + Complex(0, 1) * scale * h;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
        const double smin = svd.singularValues().tail(1)(0);
        const double smax = svd.singularValues()(0);
        res.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
    }
    return res;
}

ResolventNorms resolvent_norms(const Eigen::MatrixXcd& sigma, Complex lambda,
                               const prop::Covariance& cov) {
    const Eigen::MatrixXcd h = sandwich(lift_sigma(sigma), cov);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Complex scale = std::sqrt(2.0 * lambda);
    ResolventNorms norms;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const Complex den = Complex(1, 0) + Complex(0, 1) * scale * es.eigenvalues()(i);
        norms.r_norm = std::max(norms.r_norm, 1.0 / std::abs(den));
        norms.k_norm = std::max(norms.k_norm, std::abs(Complex(1, 0) / den - Complex(1, 0)));
    }
    return norms;
}

Complex loop_vertex(const Eigen::MatrixXcd& sigma, Complex lambda,
                    const prop::Covariance& cov) {
    const auto ct = prop::counterterms(cov);
    const Eigen::MatrixXcd h = sandwich(lift_sigma(sigma), cov);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Complex c = action_coupling(lambda);
    Complex v = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        v += -0.5 * log2c(Complex(0, 1) * c * es.eigenvalues()(i));
    Complex linear = 0.0;
    for (int m = 0; m < sigma.rows(); ++m) linear += ct.T[m] * sigma(m, m);
    v += 3.0 * Complex(0, 1) * c * linear;
    v += 2.5 * lambda * ct.T2;
    return v;
}

namespace {

// Loop vertex of the leaf-cancelled scheme: no residual linear term, constant
// (lambda/4) T2. This is the vertex the tree expansion integrates.
Complex mc_vertex(const Eigen::MatrixXcd& sigma, double lambda, const prop::Covariance& cov,
                  const prop::CountertermTable& ct) {
    const Eigen::MatrixXcd h = sandwich(kron_lift(sigma), cov);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Complex c = action_coupling(lambda);
    Complex v = 0.25 * lambda * ct.T2;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        v += -0.5 * log2c(Complex(0, 1) * c * es.eigenvalues()(i));
    return v;
}

// D(m,n) = d/d sigma_mn of -1/2 Tr log2(1 + i c H): partial traces of
// C^{1/2} (R - 1) C^{1/2} against both borders.
Eigen::MatrixXcd vertex_derivative_matrix(const Eigen::MatrixXcd& sigma, Complex lambda,
                                          const prop::Covariance& cov) {
    const int N = sigma.rows();
    const Complex c = action_coupling(lambda);
    const Eigen::MatrixXcd sh = kron_lift(sigma);
    const Eigen::MatrixXcd R = resolvent_matrix(sh, c, cov);
    const Eigen::VectorXd s = flat_sqrt_cov(cov);
    Eigen::MatrixXcd r2 = R - Eigen::MatrixXcd::Identity(N * N, N * N);
    for (int i = 0; i < N * N; ++i)
        for (int j = 0; j < N * N; ++j) r2(i, j) *= s(i) * s(j);

    Eigen::MatrixXcd d(N, N);
    const Complex pref = Complex(0, -0.5) * c;
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) {
            Complex left = 0.0, right = 0.0;
            for (int a = 0; a < N; ++a) left += r2(flat(a, n, N), flat(a, m, N));
            for (int b = 0; b < N; ++b) right += r2(flat(n, b, N), flat(m, b, N));
            d(m, n) = pref * (left + right);
        }
    return d;
}

// -(c^2/2) Tr[ Rhat lift(Dv^T) Rhat lift(Du^T) ] with Rhat the full resolvent
// C^{1/2} R C^{1/2}; this is the contraction of a middle vertex's Hessian
// against the derivative matrices of its two tree neighbors.
Complex hessian_contraction(const Eigen::MatrixXcd& du, const Eigen::MatrixXcd& dv,
                            const Eigen::MatrixXcd& sigma_center, double lambda,
                            const prop::Covariance& cov) {
    const int N = sigma_center.rows();
    const Complex c = action_coupling(lambda);
    const Eigen::MatrixXcd R = resolvent_matrix(kron_lift(sigma_center), c, cov);
    const Eigen::VectorXd s = flat_sqrt_cov(cov);
    Eigen::MatrixXcd rhat = R;
    for (int i = 0; i < N * N; ++i)
        for (int j = 0; j < N * N; ++j) rhat(i, j) *= s(i) * s(j);
    const Eigen::MatrixXcd eu = kron_lift(du.transpose());
    const Eigen::MatrixXcd ev = kron_lift(dv.transpose());
    return -0.5 * c * c * (rhat * ev * rhat * eu).trace();
}

}  // namespace

Complex loop_vertex_derivative(const Eigen::MatrixXcd& sigma,
                               const std::vector<std::pair<int, int>>& index_pairs,
                               Complex lambda, const prop::Covariance& cov) {
    const int p = static_cast<int>(index_pairs.size());
    if (p < 1) throw std::invalid_argument("loop_vertex_derivative: need >= 1 index pair");
    if (p == 1) {
        // leaf value: derivative of the log2 form
        const Eigen::MatrixXcd d = vertex_derivative_matrix(sigma, lambda, cov);
        return d(index_pairs[0].first, index_pairs[0].second);
    }
    if (p > 4) throw std::invalid_argument("loop_vertex_derivative: p <= 4 supported");

    const int N = sigma.rows();
    const Complex c = action_coupling(lambda);
    const Eigen::MatrixXcd R = resolvent_matrix(kron_lift(sigma), c, cov);
    const Eigen::VectorXd s = flat_sqrt_cov(cov);
    Eigen::MatrixXcd rhat = R;
    for (int i = 0; i < N * N; ++i)
        for (int j = 0; j < N * N; ++j) rhat(i, j) *= s(i) * s(j);

    std::vector<Eigen::MatrixXcd> lifted;
    for (auto [m, n] : index_pairs) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(N, N);
        e(m, n) = 1.0;
        lifted.push_back(kron_lift(e));
    }

    // d^p V = -1/2 (-1)^(p-1) (ic)^p sum over insertion orders of
    // Tr[Rhat E_{t1} ... Rhat E_{t(p-1)} Rhat E_1]
    std::vector<int> rest;
    for (int i = 1; i < p; ++i) rest.push_back(i);
    Complex sum = 0.0;
    std::sort(rest.begin(), rest.end());
    do {
        Eigen::MatrixXcd chain = rhat;
        for (int idx : rest) chain = chain * lifted[idx] * rhat;
        sum += (chain * lifted[0]).trace();
    } while (std::next_permutation(rest.begin(), rest.end()));

    const Complex ic = Complex(0, 1) * c;
    Complex pref = -0.5;
    for (int i = 0; i < p; ++i) pref *= ic;
    if (p % 2 == 0) pref = -pref;  // (-1)^(p-1)
    return pref * sum;
}

std::vector<SpanningTree> spanning_trees(int n) {
    if (n < 1 || n > 6)
        throw std::invalid_argument("spanning_trees: n must be 1..6 (exhaustive)");
    std::vector<SpanningTree> out;
    if (n == 1) {
        out.push_back({1, {}, {}});
        return out;
    }
    if (n == 2) {
        out.push_back({2, {{0, 1}}, {0.0}});
        return out;
    }
    // decode every Prufer sequence of length n-2
    std::vector<int> seq(n - 2, 0);
    while (true) {
        std::vector<int> degree(n, 1);
        for (int v : seq) ++degree[v];
        SpanningTree t;
        t.n = n;
        std::vector<int> deg = degree;
        for (int v : seq) {
            for (int leaf = 0; leaf < n; ++leaf) {
                if (deg[leaf] == 1) {
                    t.edges.push_back({leaf, v});
                    --deg[leaf];
                    --deg[v];
                    break;
                }
            }
        }
        std::vector<int> last;
        for (int v = 0; v < n; ++v)
            if (deg[v] == 1) last.push_back(v);
        t.edges.push_back({last[0], last[1]});
        t.weights.assign(n - 1, 0.0);
        out.push_back(std::move(t));

        int pos = n - 3;
        while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }
    return out;
}

Eigen::MatrixXd weakening_matrix(const SpanningTree& tree) {
    const int n = tree.n;
    if (static_cast<int>(tree.edges.size()) != n - 1)
        throw std::invalid_argument("weakening_matrix: not a tree");
    for (double w : tree.weights)
        if (w < 0.0 || w > 1.0)
            throw std::invalid_argument("weakening_matrix: weight outside [0,1]");

    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
        const auto [a, b] = tree.edges[e];
        const double w = tree.weights.at(e);
        adj[a].push_back({b, w});
        adj[b].push_back({a, w});
    }
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (int src = 0; src < n; ++src) {
        // depth-first propagation of the path minimum
        std::vector<double> wmin(n, -1.0);
        wmin[src] = 1.0;
        std::vector<int> stack{src};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (auto [u, w] : adj[v]) {
                if (wmin[u] >= 0.0) continue;
                wmin[u] = std::min(wmin[v], w);
                stack.push_back(u);
            }
        }
        for (int dst = 0; dst < n; ++dst) W(src, dst) = wmin[dst];
    }
    return W;
}

namespace {

Eigen::MatrixXd psd_square_root(const Eigen::MatrixXd& W) {
    Eigen::LLT<Eigen::MatrixXd> llt(W);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    // eigenvalue clamp fallback
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W);
    Eigen::VectorXd ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-10)
            throw std::invalid_argument("sigma ensemble: weakening matrix not PSD");
        ev(i) = std::sqrt(std::max(0.0, ev(i)));
    }
    return es.eigenvectors() * ev.asDiagonal();
}

std::vector<Eigen::MatrixXcd> draw_ensemble(const Eigen::MatrixXd& sqrtW, int dim, Rng& rng) {
    const int n = sqrtW.rows();
    std::vector<Eigen::MatrixXcd> g;
    g.reserve(n);
    for (int u = 0; u < n; ++u) g.push_back(random_hermitian(rng, dim));
    std::vector<Eigen::MatrixXcd> sigma(n, Eigen::MatrixXcd::Zero(dim, dim));
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (sqrtW(v, u) != 0.0) sigma[v] += sqrtW(v, u) * g[u];
    return sigma;
}

}  // namespace

std::vector<Eigen::MatrixXcd> sample_sigma_ensemble(const Eigen::MatrixXd& weakening,
                                                    int cutoff, std::uint64_t seed) {
    const Eigen::MatrixXd L = psd_square_root(weakening);
    Rng rng(seed, 0);
    return draw_ensemble(L, cutoff + 1, rng);
}

TreeAmplitude tree_amplitude(const SpanningTree& tree, double lambda,
                             const prop::Covariance& cov, long n_samples, std::uint64_t seed,
                             int workers) {
    if (tree.n < 1 || tree.n > 3)
        throw std::invalid_argument(
            "tree_amplitude: derivative calculus implemented for n <= 3");
    if (n_samples < 1) throw std::invalid_argument("tree_amplitude: need samples");
    const auto ct = prop::counterterms(cov);

    std::vector<Complex> values(n_samples);

    if (tree.n == 1) {
        parallel_fill(n_samples, workers, [&](std::size_t i) {
            Rng rng(seed, i);
            const Eigen::MatrixXcd sigma = random_hermitian(rng, cov.params.dim());
            values[i] = mc_vertex(sigma, lambda, cov, ct);
        });
    } else if (tree.n == 2) {
        constexpr long kStrata = 1024;
        parallel_fill(n_samples, workers, [&](std::size_t i) {
            Rng rng(seed, i);
            const double w = (static_cast<double>(i % kStrata) + rng.uniform()) / kStrata;
            Eigen::MatrixXd W(2, 2);
            W << 1.0, w, w, 1.0;
            const Eigen::MatrixXd L = psd_square_root(W);
            const auto sigma = draw_ensemble(L, cov.params.dim(), rng);
            const Eigen::MatrixXcd d1 = vertex_derivative_matrix(sigma[0], lambda, cov);
            const Eigen::MatrixXcd d2 = vertex_derivative_matrix(sigma[1], lambda, cov);
            values[i] = (d1 * d2).trace();
        });
    } else {
        // n = 3: every labeled tree is a path; the middle vertex carries the
        // Hessian, the ends carry derivative matrices.
        std::vector<int> degree(3, 0);
        for (auto [a, b] : tree.edges) {
            ++degree[a];
            ++degree[b];
        }
        int center = 0;
        while (degree[center] != 2) ++center;
        const int u = (center == 0) ? 1 : 0;
        const int v = (center == 2) ? 1 : 2;
        constexpr long kStrata = 64;
        parallel_fill(n_samples, workers, [&](std::size_t i) {
            Rng rng(seed, i);
            SpanningTree t = tree;
            t.weights.resize(2);
            t.weights[0] =
                (static_cast<double>(i % kStrata) + rng.uniform()) / kStrata;
            t.weights[1] =
                (static_cast<double>((i / kStrata) % kStrata) + rng.uniform()) / kStrata;
            const Eigen::MatrixXd W = weakening_matrix(t);
            const Eigen::MatrixXd L = psd_square_root(W);
            const auto sigma = draw_ensemble(L, cov.params.dim(), rng);
            const Eigen::MatrixXcd du = vertex_derivative_matrix(sigma[u], lambda, cov);
            const Eigen::MatrixXcd dv = vertex_derivative_matrix(sigma[v], lambda, cov);
            values[i] = hessian_contraction(du, dv, sigma[center], lambda, cov);
        });
    }

    const MeanStderr ms = mean_stderr(values);
    TreeAmplitude amp;
    amp.mean = ms.mean;
    amp.stderr_ = ms.stderr_;
    amp.n_samples = n_samples;
    amp.tree = tree;
    return amp;
}

LveResult log_z_lve(double lambda, int n_max, const prop::Covariance& cov, long samples,
                    std::uint64_t seed, int workers) {
    if (n_max < 1 || n_max > 3) throw std::invalid_argument("log_z_lve: n_max must be 1..3");
    LveResult res;
    double var = 0.0;
    long tree_ordinal = 0;
    std::vector<double> factorial{1, 1, 2, 6};
    res.order_totals.assign(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        Complex order_sum = 0.0;
        for (const SpanningTree& t : spanning_trees(n)) {
            // disjoint sample-index streams per tree keep the full run
            // reproducible for any worker count
            const std::uint64_t tree_seed = seed + 0x9e3779b97f4a7c15ULL * (tree_ordinal + 1);
            TreeAmplitude amp = tree_amplitude(t, lambda, cov, samples, tree_seed, workers);
            res.log_z += amp.mean / factorial[n];
            var += (amp.stderr_ / factorial[n]) * (amp.stderr_ / factorial[n]);
            order_sum += amp.mean;
            res.trees.push_back(std::move(amp));
            ++tree_ordinal;
        }
        res.order_totals[n] = std::abs(order_sum);
    }
    res.stderr_ = std::sqrt(var);

    // fitted K from |sum_T G_T| <= n^(n-2) (K lambda lnLambda)^n / n!
    const double log_cutoff = std::log(std::max(2.0, double(cov.params.cutoff)));
    double kmax = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double cayley = std::pow(double(n), std::max(0, n - 2));
        if (res.order_totals[n] <= 0.0) continue;
        const double k =
            std::pow(res.order_totals[n] * factorial[n] / cayley, 1.0 / n) /
            (std::abs(lambda) * log_cutoff);
        kmax = std::max(kmax, k);
    }
    res.fitted_growth_constant = kmax;
    return res;
}

double resolvent_induction_residual(const Eigen::MatrixXcd& sigma, Complex lambda, int scale,
                                    const prop::Covariance& cov) {
    if (scale < 1) throw std::invalid_argument("resolvent_induction_residual: scale >= 1");
    const int N = sigma.rows();
    const int NN = N * N;
    const Eigen::MatrixXcd sh = lift_sigma(sigma);
    const Complex s = std::sqrt(2.0 * lambda);

    auto slice_diag = [&](int k) {
        const Eigen::ArrayXXd cj = prop::sliced_propagator(cov, k);
        Eigen::VectorXcd d(NN);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) d(flat(a, b, N)) = Complex(0, 1) * s * cj(a, b);
        return d;
    };

    Eigen::VectorXcd dlow = Eigen::VectorXcd::Zero(NN);
    for (int k = 0; k < scale; ++k) dlow += slice_diag(k);
    const Eigen::VectorXcd dj = slice_diag(scale);

    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(NN, NN);
    const Eigen::MatrixXcd r_prev =
        (I + sh * dlow.asDiagonal()).partialPivLu().solve(I);
    const Eigen::MatrixXcd r_j =
        (I + sh * (dlow + dj).asDiagonal()).partialPivLu().solve(I);
    const Eigen::MatrixXcd rhs = r_prev - r_prev * (sh * dj.asDiagonal()) * r_j;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd_res(r_j - rhs);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd_rj(r_j);
    return svd_res.singularValues()(0) / svd_rj.singularValues()(0);
}

TadpolePair inner_tadpole_cancellation(const Rational& lambda,
                                       const prop::RationalCovariance& cov) {
    const int N = cov.cutoff + 1;
    // tadpole side: Taylor coefficient of the resolvent squared, with the
    // loop value built from local row sums of the covariance
    Rational m_tad = 0;
    {
        std::vector<Rational> loop(N, Rational(0));
        for (int m = 0; m < N; ++m)
            for (int q = 0; q < N; ++q) loop[m] += cov.at(m, q);
        for (int m = 0; m < N; ++m)
            for (int k = 0; k < N; ++k)
                if (m == k) m_tad += loop[m] * loop[k];  // <sigma_mm sigma_kk> = delta_mk
    }
    // counterterm side: cross moment of the linear counterterm against the
    // leaf, using the module's counterterm table
    Rational m_ct = 0;
    {
        const auto ct = prop::rational_counterterms(cov);
        for (int m = 0; m < N; ++m)
            for (int k = 0; k < N; ++k)
                if (m == k) m_ct += ct.T[m] * ct.T[k];
    }
    TadpolePair pair;
    pair.tadpole = -2 * lambda * m_tad;
    pair.counterterm = 2 * lambda * m_ct;
    return pair;
}

SlicedTadpolePair sliced_inner_tadpole_cancellation(double lambda,
                                                    const prop::Covariance& cov, int scale) {
    const int N = cov.diag.rows();
    // tadpole side: row sums of the slice, accumulated in ascending order
    double m_tad = 0.0;
    {
        const Eigen::ArrayXXd cj = prop::sliced_propagator(cov, scale);
        std::vector<double> loop(N, 0.0);
        for (int m = 0; m < N; ++m)
            for (int q = 0; q < N; ++q) loop[m] += cj(m, q);
        for (int m = 0; m < N; ++m) m_tad += loop[m] * loop[m];
    }
    // counterterm side: the sliced counterterm table
    double m_ct = 0.0;
    {
        const auto ct = prop::sliced_counterterms(cov, scale);
        for (int m = 0; m < N; ++m) m_ct += ct.T[m] * ct.T[m];
    }
    SlicedTadpolePair pair;
    pair.tadpole = -2.0 * lambda * m_tad;
    pair.counterterm = 2.0 * lambda * m_ct;
    return pair;
}

BudgetReport stopping_budget(long j_max, double lambda, double a) {
    if (j_max < 1) throw std::invalid_argument("stopping_budget: j_max >= 1");
    if (lambda < 0.0) throw std::invalid_argument("stopping_budget: lambda >= 0");
    BudgetReport r;
    const double j = static_cast<double>(j_max);
    r.exp_convergent = -a * j * j * j;
    r.exp_combinatorial = 2.0 * j * j * std::log(j);
    r.exp_nelson = lambda * j * j * j;
    r.combined_log = r.exp_convergent + r.exp_combinatorial + r.exp_nelson;
    r.combined_below_one = r.combined_log < 0.0;
    r.dominance_log = (lambda - a) * j * j * j;
    r.convergent_dominates = r.dominance_log < 0.0;
    r.bound_violated = a <= lambda;

    if (!r.bound_violated) {
        // least j beyond which -a j^3 + 2 j^2 ln j + lambda j^3 stays negative;
        // past 2/(a-lambda) the exponent is monotone decreasing in j
        auto exponent = [&](double jj) {
            return (lambda - a) * jj * jj * jj + 2.0 * jj * jj * std::log(jj);
        };
        const double turn = 2.0 / (a - lambda);
        long last_nonneg = 1;
        const long limit = static_cast<long>(std::max(16.0, 4.0 * turn)) + 16;
        for (long jj = 2; jj <= limit; ++jj) {
            if (exponent(static_cast<double>(jj)) >= 0.0) last_nonneg = jj;
        }
        r.threshold_j = last_nonneg + 1;
    }
    return r;
}

}  // namespace gw2::lve
