#include "gw2/resummation.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "gw2/lve.hpp"
#include "gw2/propagator.hpp"
#include "gw2/quadrature.hpp"

namespace gw2::resum {

PowerSeries from_rationals(const std::vector<Rational>& coeffs) {
    PowerSeries s;
    s.a.reserve(coeffs.size());
    for (const auto& c : coeffs) s.a.push_back(to_double(c));
    return s;
}

BorelSeries borel_transform(const PowerSeries& s) {
    BorelSeries b;
    b.b.resize(s.a.size());
    double fact = 1.0;
    for (std::size_t k = 0; k < s.a.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        b.b[k] = s.a[k] / fact;
    }
    for (std::size_t k = b.b.size(); k-- > 1;) {
        if (b.b[k] != 0.0 && b.b[k - 1] != 0.0) {
            b.radius_estimate = std::abs(b.b[k - 1] / b.b[k]);
            break;
        }
    }
    return b;
}

PowerSeries inverse_borel(const BorelSeries& b) {
    PowerSeries s;
    s.a.resize(b.b.size());
    double fact = 1.0;
    for (std::size_t k = 0; k < b.b.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        s.a[k] = b.b[k] * fact;
    }
    return s;
}

double PadeApproximant::eval(double t) const {
    double n = 0.0, d = 0.0;
    for (std::size_t i = num.size(); i-- > 0;) n = n * t + num[i];
    for (std::size_t i = den.size(); i-- > 0;) d = d * t + den[i];
    return n / d;
}

std::complex<double> PadeApproximant::eval(std::complex<double> t) const {
    std::complex<double> n = 0.0, d = 0.0;
    for (std::size_t i = num.size(); i-- > 0;) n = n * t + num[i];
    for (std::size_t i = den.size(); i-- > 0;) d = d * t + den[i];
    return n / d;
}

std::vector<std::complex<double>> PadeApproximant::poles() const {
    // roots of the denominator via the companion matrix
    int deg = static_cast<int>(den.size()) - 1;
    while (deg > 0 && den[deg] == 0.0) --deg;
    std::vector<std::complex<double>> roots;
    if (deg < 1) return roots;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -den[i] / den[deg];
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
    for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

namespace {

bool try_pade(const std::vector<double>& c, int p, int q, PadeApproximant& out) {
    // denominator from sum_{j} den_j c_{p+k-j} = 0, k = 1..q
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(q, q);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(q);
    auto coeff = [&](int i) { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0.0; };
    for (int k = 1; k <= q; ++k) {
        for (int j = 1; j <= q; ++j) A(k - 1, j - 1) = coeff(p + k - j);
        rhs(k - 1) = -coeff(p + k);
    }
    Eigen::VectorXd den_tail;
    if (q > 0) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (!lu.isInvertible()) return false;
        den_tail = lu.solve(rhs);
    }
    out.p = p;
    out.q = q;
    out.den.assign(q + 1, 0.0);
    out.den[0] = 1.0;
    for (int j = 1; j <= q; ++j) out.den[j] = den_tail(j - 1);
    out.num.assign(p + 1, 0.0);
    for (int k = 0; k <= p; ++k) {
        double v = 0.0;
        for (int j = 0; j <= std::min(k, q); ++j) v += out.den[j] * coeff(k - j);
        out.num[k] = v;
    }
    return true;
}

}  // namespace

PadeApproximant pade_approximant(const std::vector<double>& coeffs, int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("pade_approximant: negative degree");
    if (p + q + 1 > static_cast<int>(coeffs.size()))
        throw std::invalid_argument("pade_approximant: not enough coefficients");
    PadeApproximant out;
    if (try_pade(coeffs, p, q, out)) return out;
    // reduced-degree fallback
    for (int qq = q - 1; qq >= 0; --qq) {
        if (try_pade(coeffs, p, qq, out)) {
            out.reduced = true;
            return out;
        }
    }
    throw std::runtime_error("pade_approximant: singular system at every degree");
}

BorelSumResult borel_sum(const PowerSeries& s, double lambda, int p, int q) {
    if (lambda <= 0.0) throw std::invalid_argument("borel_sum: lambda must be positive");
    const BorelSeries b = borel_transform(s);
    BorelSumResult res;
    res.pade = pade_approximant(b.b, p, q);
    for (const auto& pole : res.pade.poles()) {
        if (std::abs(pole.imag()) < 1e-12 && pole.real() > 0.0)
            throw std::runtime_error("borel_sum: Pade pole on the positive axis at t = " +
                                     std::to_string(pole.real() / lambda));
    }
    auto integrand = [&](double t) { return std::exp(-t) * res.pade.eval(lambda * t); };
    res.value = integrate_laplace(integrand, 1e-9, 1e-14);
    return res;
}

GrowthFit remainder_growth(const PowerSeries& s) {
    GrowthFit fit;
    // log|a_k| = k log K + log k!; least squares in log K over k >= 1
    double num = 0.0, den = 0.0;
    double logfact = 0.0;
    for (std::size_t k = 1; k < s.a.size(); ++k) {
        logfact += std::log(static_cast<double>(k));
        if (s.a[k] == 0.0) continue;
        const double y = std::log(std::abs(s.a[k])) - logfact;
        num += static_cast<double>(k) * y;
        den += static_cast<double>(k) * static_cast<double>(k);
        ++fit.points;
    }
    if (fit.points == 0) return fit;
    fit.K = std::exp(num / den);
    fit.factorial_type = fit.K > 0.0 && std::isfinite(fit.K);
    return fit;
}

NelsonReport nelson_report(long long cutoff, double lambda, double a, double slice_base) {
    if (cutoff < 3) throw std::invalid_argument("nelson_report: cutoff >= 3");
    NelsonReport r;
    r.t2 = prop::t2_large(cutoff);
    r.naive_exponent = lambda * r.t2;
    const double logl = std::log(static_cast<double>(cutoff));
    const long mmax = static_cast<long>(std::floor(logl));
    for (long m = 1; m <= mmax; ++m) {
        const double l = std::log(static_cast<double>(cutoff) / static_cast<double>(m));
        r.improved_exponent += l * l;
    }
    r.cube = logl * logl * logl;
    r.bound_2lambda = 2.0 * lambda * r.cube;
    r.j_max = static_cast<long>(std::floor(logl / (2.0 * std::log(slice_base))));
    if (r.j_max >= 1) {
        const auto budget = lve::stopping_budget(r.j_max, lambda, a);
        r.combined_log = budget.combined_log;
        r.dominance_log = budget.dominance_log;
        r.convergent_dominates = budget.convergent_dominates;
    }
    return r;
}

}  // namespace gw2::resum
