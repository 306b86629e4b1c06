#include "gw2/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace gw2 {

QuadRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    // Golub-Welsch on the Hermite Jacobi matrix: diagonal 0, off-diagonal sqrt(k/2).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(k / 2.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = sqrt_pi * v0 * v0;
    }
    return rule;
}

namespace {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule, on [-1, 1].
constexpr double kKronrodNodes[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr double kKronrodWeights[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr double kGaussWeights[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double k_sum = 0.0;
    double g_sum = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fv = f(c + h * kKronrodNodes[i]);
        k_sum += kKronrodWeights[i] * fv;
        if (i % 2 == 1) g_sum += kGaussWeights[i / 2] * fv;
    }
    PanelResult r;
    r.value = k_sum * h;
    const double diff = (k_sum - g_sum) * h;
    r.error = std::pow(200.0 * std::abs(diff), 1.5);
    if (!std::isfinite(r.error)) r.error = std::abs(diff);
    return r;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b, double tol,
                    int depth, int max_depth) {
    const PanelResult whole = gk15(f, a, b);
    if (depth >= max_depth || whole.error <= tol) return whole.value;
    const double c = 0.5 * (a + b);
    return adaptive_rec(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           adaptive_rec(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
    const PanelResult first = gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(first.value));
    if (first.error <= tol) return first.value;
    const double c = 0.5 * (a + b);
    return adaptive_rec(f, a, c, 0.5 * tol, 1, max_depth) +
           adaptive_rec(f, c, b, 0.5 * tol, 1, max_depth);
}

double integrate_laplace(const std::function<double(double)>& f, double rel_tol,
                         double tail_abs) {
    double total = 0.0;
    double a = 0.0;
    double width = 1.0;
    for (int panel = 0; panel < 64; ++panel) {
        const double b = a + width;
        total += integrate_adaptive(f, a, b, rel_tol, tail_abs);
        a = b;
        width *= 2.0;
        // stop once the integrand at the panel edge is negligible
        if (std::abs(f(a)) < tail_abs && a > 30.0) break;
    }
    return total;
}

}  // namespace gw2
