#include "gw2/moyal.hpp"

#include <cmath>
#include <stdexcept>

#include "gw2/quadrature.hpp"

namespace gw2::moyal {

namespace {

constexpr int kMaxBasisOrder = 60;

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::complex<double> cpow(std::complex<double> base, int p) {
    std::complex<double> r = 1.0;
    for (int i = 0; i < p; ++i) r *= base;
    return r;
}

}  // namespace

MatrixFunction zero_function(const ModelParams& p) {
    p.validate();
    MatrixFunction f;
    f.params = p;
    f.coeffs = Eigen::MatrixXcd::Zero(p.dim(), p.dim());
    return f;
}

MatrixFunction basis_unit(const ModelParams& p, int m, int n) {
    MatrixFunction f = zero_function(p);
    if (m < 0 || n < 0 || m > p.cutoff || n > p.cutoff)
        throw std::out_of_range("basis_unit: index exceeds cutoff");
    f.coeffs(m, n) = 1.0;
    return f;
}

Complex basis_function(int m, int n, double x1, double x2, double theta) {
    if (theta <= 0.0) throw std::invalid_argument("basis_function: theta must be positive");
    if (m < 0 || n < 0) throw std::invalid_argument("basis_function: negative index");
    if (m + n > kMaxBasisOrder)
        throw std::domain_error("basis_function: m+n exceeds supported order (60)");

    const Complex a(x1 / std::sqrt(2.0), x2 / std::sqrt(2.0));
    const Complex abar = std::conj(a);
    const double f0 = 2.0 * std::exp(-(x1 * x1 + x2 * x2) / theta);
    const double log_norm =
        -0.5 * (log_factorial(m) + log_factorial(n) + (m + n) * std::log(theta));

    Complex sum = 0.0;
    const int kmax = std::min(m, n);
    for (int k = 0; k <= kmax; ++k) {
        // binom(m,k) binom(n,k) k! 2^(m+n-2k) theta^k, assembled in log space
        const double log_mag = log_factorial(m) - log_factorial(k) - log_factorial(m - k) +
                               log_factorial(n) - log_factorial(k) - log_factorial(n - k) +
                               log_factorial(k) + (m + n - 2 * k) * std::log(2.0) +
                               k * std::log(theta) + log_norm;
        const double coeff = ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(log_mag);
        sum += coeff * cpow(abar, m - k) * cpow(a, n - k);
    }
    return sum * f0;
}

MatrixFunction star_product(const MatrixFunction& a, const MatrixFunction& b) {
    if (a.params.cutoff != b.params.cutoff || a.params.theta != b.params.theta)
        throw std::invalid_argument("star_product: operands share neither cutoff nor theta");
    MatrixFunction out;
    out.params = a.params;
    out.coeffs = a.coeffs * b.coeffs;
    return out;
}

Complex integrate(const MatrixFunction& a) {
    return 2.0 * M_PI * a.params.theta * a.coeffs.trace();
}

Complex reconstruct(const MatrixFunction& a, double x1, double x2) {
    Complex sum = 0.0;
    const int d = a.params.dim();
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            const Complex c = a.coeffs(m, n);
            if (c == 0.0) continue;
            sum += c * basis_function(m, n, x1, x2, a.params.theta);
        }
    return sum;
}

namespace {

// Gauss-Hermite nodes with weights w_i exp(x_i^2); the Gaussian of f_0
// supplies the weight function once the integral is written in the scaled
// variable y = sqrt(theta) u - x.
struct BareRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const BareRule& bare_rule(int n) {
    static thread_local int cached_n = -1;
    static thread_local BareRule cached;
    if (cached_n != n) {
        QuadRule gh = gauss_hermite(n);
        cached.nodes = gh.nodes;
        cached.weights.resize(n);
        for (int i = 0; i < n; ++i)
            cached.weights[i] = gh.weights[i] * std::exp(gh.nodes[i] * gh.nodes[i]);
        cached_n = n;
    }
    return cached;
}

using Grid = Eigen::MatrixXcd;
using Evaluator = std::function<Complex(double, double)>;

// Weighted grid of phi(sqrt(theta) u) with the plane-wave factor that carries
// the base point x. `left` selects the factor for the y (left) integration
// variable, otherwise the z (right) one.
Grid field_grid(const Evaluator& phi, double theta, double x1, double x2, int n, bool left) {
    const BareRule& r = bare_rule(n);
    const double s = std::sqrt(theta);
    const double q = 2.0 / s;
    Grid g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double u1 = r.nodes[i];
            const double u2 = r.nodes[j];
            const double phase = left ? -q * (x2 * u1 - x1 * u2) : -q * (x1 * u2 - x2 * u1);
            g(i, j) = r.weights[i] * r.weights[j] * phi(s * u1, s * u2) *
                      std::polar(1.0, phase);
        }
    return g;
}

Complex star_quadrature_impl(const Evaluator& f, const Evaluator& g, double theta, double x1,
                             double x2, int n) {
    const BareRule& r = bare_rule(n);
    const Grid ga = field_grid(f, theta, x1, x2, n, true);
    const Grid gb = field_grid(g, theta, x1, x2, n, false);
    // coupling phases exp(2i u1 v2) and exp(-2i u2 v1)
    Grid phi1(n, n), phi2(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            phi1(i, j) = std::polar(1.0, 2.0 * r.nodes[i] * r.nodes[j]);
            phi2(i, j) = std::conj(phi1(i, j));
        }
    // sum_{u1 u2 v1 v2} A(u1,u2) B(v1,v2) phi1(u1,v2) phi2(u2,v1)
    const Grid m2 = (phi2 * gb) * phi1.transpose();  // index (u2, u1)
    return (ga * m2).trace() / (M_PI * M_PI);
}

}  // namespace

Complex star_product_quadrature(const MatrixFunction& a, const MatrixFunction& b, double x1,
                                double x2, int nodes_per_axis) {
    if (a.params.theta != b.params.theta)
        throw std::invalid_argument("star_product_quadrature: theta mismatch");
    const double theta = a.params.theta;
    auto fa = [&](double y1, double y2) { return reconstruct(a, y1, y2); };
    auto fb = [&](double z1, double z2) { return reconstruct(b, z1, z2); };
    return star_quadrature_impl(fa, fb, theta, x1, x2, nodes_per_axis);
}

Complex basis_star_quadrature(int m, int n, int k, int l, double theta, double x1, double x2,
                              int nodes_per_axis) {
    auto fa = [&](double y1, double y2) { return basis_function(m, n, y1, y2, theta); };
    auto fb = [&](double z1, double z2) { return basis_function(k, l, z1, z2, theta); };
    return star_quadrature_impl(fa, fb, theta, x1, x2, nodes_per_axis);
}

Complex integrate_quadrature(const MatrixFunction& a, int nodes_per_axis) {
    const BareRule& r = bare_rule(nodes_per_axis);
    const double theta = a.params.theta;
    const double s = std::sqrt(theta);
    Complex sum = 0.0;
    for (int i = 0; i < nodes_per_axis; ++i)
        for (int j = 0; j < nodes_per_axis; ++j)
            sum += r.weights[i] * r.weights[j] * reconstruct(a, s * r.nodes[i], s * r.nodes[j]);
    return theta * sum;
}

}  // namespace gw2::moyal
