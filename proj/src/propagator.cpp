#include "gw2/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/digamma.hpp>

#include "gw2/quadrature.hpp"

namespace gw2::prop {

Eigen::MatrixXd kinetic_matrix(const ModelParams& p) {
    p.validate();
    const int N = p.dim();
    const double om2 = p.omega * p.omega;
    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(N * N, N * N);
    auto idx = [N](int a, int b) { return a * N + b; };
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) {
            delta(idx(m, n), idx(n, m)) +=
                p.mu2 + (2.0 / p.theta) * (1.0 + om2) * (m + n + 1);
            // ladder terms, delta_{m+1,l} delta_{n+1,k} and delta_{m-1,l} delta_{n-1,k}
            if (m + 1 < N && n + 1 < N)
                delta(idx(m, n), idx(n + 1, m + 1)) -=
                    (2.0 / p.theta) * (1.0 - om2) * std::sqrt(double(m + 1) * (n + 1));
            if (m >= 1 && n >= 1)
                delta(idx(m, n), idx(n - 1, m - 1)) -=
                    (2.0 / p.theta) * (1.0 - om2) * std::sqrt(double(m) * n);
        }
    return delta;
}

Covariance covariance(const ModelParams& p, double slice_base) {
    p.validate();
    if (p.omega != 1.0)
        throw std::domain_error(
            "covariance: closed form requires omega == 1; invert kinetic_matrix numerically "
            "for omega != 1");
    if (!(slice_base > 1.0)) throw std::invalid_argument("covariance: slice base must be > 1");
    const int N = p.dim();
    Covariance cov;
    cov.params = p;
    cov.slice_base = slice_base;
    cov.diag.resize(N, N);
    cov.sqrt_diag.resize(N, N);
    cov.rate.resize(N, N);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) {
            const double rate = p.mu2 + (4.0 / p.theta) * (m + n + 1);
            cov.rate(m, n) = rate;
            cov.diag(m, n) = 1.0 / rate;
            cov.sqrt_diag(m, n) = std::sqrt(1.0 / rate);
        }
    return cov;
}

Eigen::ArrayXXd sliced_propagator(const Covariance& cov, int j) {
    if (j < 0) throw std::invalid_argument("sliced_propagator: j must be >= 0");
    const double M = cov.slice_base;
    Eigen::ArrayXXd out(cov.diag.rows(), cov.diag.cols());
    if (j == 0) {
        out = (-cov.rate).exp() / cov.rate;  // tail window [1, inf)
    } else {
        const double lo = std::pow(M, -2.0 * j);
        const double hi = std::pow(M, -2.0 * (j - 1));
        out = ((-lo * cov.rate).exp() - (-hi * cov.rate).exp()) / cov.rate;
    }
    return out;
}

CountertermTable counterterms(const Covariance& cov) {
    const int N = cov.diag.rows();
    CountertermTable t;
    t.cutoff = cov.params.cutoff;
    t.T.resize(N);
    for (int m = 0; m < N; ++m) {
        double row = 0.0;
        for (int q = 0; q < N; ++q) row += cov.diag(m, q);
        t.T[m] = row;
    }
    for (int m = 0; m < N; ++m) t.T2 += t.T[m] * t.T[m];
    for (int m = 0; m < N; ++m) t.T3 += t.T[m] * t.T[m] * t.T[m];
    return t;
}

CountertermTable sliced_counterterms(const Covariance& cov, int j) {
    const Eigen::ArrayXXd cj = sliced_propagator(cov, j);
    const int N = cj.rows();
    CountertermTable t;
    t.cutoff = cov.params.cutoff;
    t.T.resize(N);
    for (int m = 0; m < N; ++m) {
        double row = 0.0;
        for (int q = 0; q < N; ++q) row += cj(m, q);
        t.T[m] = row;
    }
    for (int m = 0; m < N; ++m) t.T2 += t.T[m] * t.T[m];
    for (int m = 0; m < N; ++m) t.T3 += t.T[m] * t.T[m] * t.T[m];
    return t;
}

Rational RationalCovariance::at(int m, int n) const {
    return Rational(1) / (mu2 + Rational(4) / theta * (m + n + 1));
}

RationalCovariance rational_covariance(const Rational& theta, const Rational& mu2, int cutoff) {
    if (theta <= 0) throw std::invalid_argument("rational_covariance: theta must be positive");
    if (cutoff < 1) throw std::invalid_argument("rational_covariance: cutoff must be >= 1");
    return RationalCovariance{theta, mu2, cutoff};
}

RationalCounterterms rational_counterterms(const RationalCovariance& cov) {
    const int N = cov.cutoff + 1;
    RationalCounterterms t;
    t.cutoff = cov.cutoff;
    t.T.resize(N);
    for (int m = 0; m < N; ++m) {
        Rational row = 0;
        for (int q = 0; q < N; ++q) row += cov.at(m, q);
        t.T[m] = row;
    }
    t.T2 = 0;
    t.T3 = 0;
    for (int m = 0; m < N; ++m) t.T2 += t.T[m] * t.T[m];
    for (int m = 0; m < N; ++m) t.T3 += t.T[m] * t.T[m] * t.T[m];
    return t;
}

bool kinetic_covariance_identity_exact(const Rational& theta, const Rational& mu2, int cutoff) {
    // Literal composition sum_{r,s} Delta_{mn,rs} C_{sr,kl} against
    // delta_ml delta_nk, in exact arithmetic. At Omega = 1 the kinetic matrix
    // is Delta_{mn,rs} = rho_mn delta_ms delta_nr with
    // rho = mu2 + (4/theta)(m+n+1), and C_{ab,kl} = C_ab delta_al delta_bk.
    const RationalCovariance cov = rational_covariance(theta, mu2, cutoff);
    const int N = cutoff + 1;
    auto delta_entry = [&](int m, int n, int r, int s) -> Rational {
        if (s == m && r == n) return mu2 + Rational(4) / theta * (m + n + 1);
        return 0;
    };
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    Rational sum = 0;
                    for (int r = 0; r < N; ++r)
                        for (int s = 0; s < N; ++s) {
                            if (!(s == m && r == n)) continue;  // Delta entry vanishes
                            if (!(s == l && r == k)) continue;  // C entry vanishes
                            sum += delta_entry(m, n, r, s) * cov.at(s, r);
                        }
                    const Rational expected = (m == l && n == k) ? 1 : 0;
                    if (sum != expected) return false;
                }
    return true;
}

double asymptotic_constant() {
    const double l2 = std::log(2.0);
    return 2.0 * l2 * l2 + M_PI * M_PI / 6.0;
}

double asymptotic_constant_quadrature() {
    // integral_0^1 ln^2((1+x)/x) dx, with x = exp(-t) to tame the endpoint
    auto f = [](double t) {
        const double e = std::exp(-t);
        const double u = t + std::log1p(e);
        return e * u * u;
    };
    return integrate_laplace(f, 1e-12, 1e-16);
}

double tadpole_large(int m, long long cutoff) {
    using boost::math::digamma;
    return digamma(double(cutoff) + m + 2.0) - digamma(m + 1.0);
}

double t2_large(long long cutoff) {
    double sum = 0.0;
    for (long long m = 0; m <= cutoff; ++m) {
        const double t = tadpole_large(static_cast<int>(m), cutoff);
        sum += t * t;
    }
    return sum;
}

}  // namespace gw2::prop
