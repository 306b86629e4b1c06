#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "gw2/propagator.hpp"
#include "gw2/quadrature.hpp"

using namespace gw2;
using namespace gw2::prop;
using doctest::Approx;

TEST_CASE("kinetic matrix at Omega = 1 is the diagonal m+n+1 form") {
    ModelParams p = default_params(3);  // theta 4, mu2 0, omega 1
    const Eigen::MatrixXd d = kinetic_matrix(p);
    const int N = p.dim();
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    const double expected = (l == m && k == n) ? m + n + 1 : 0.0;
                    CHECK(d(m * N + n, k * N + l) == Approx(expected));
                }
}

TEST_CASE("kinetic matrix is symmetric under the index-pair exchange") {
    ModelParams p = default_params(3);
    p.omega = 0.5;
    const Eigen::MatrixXd d = kinetic_matrix(p);
    CHECK((d - d.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("kinetic matrix at Omega = 0.5 inverts numerically") {
    ModelParams p = default_params(3);
    p.omega = 0.5;
    const Eigen::MatrixXd d = kinetic_matrix(p);
    const Eigen::MatrixXd inv = d.partialPivLu().solve(
        Eigen::MatrixXd::Identity(d.rows(), d.cols()));
    const Eigen::MatrixXd prod = d * inv;
    CHECK((prod - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("covariance closed form") {
    ModelParams p = default_params(3);
    const Covariance cov = covariance(p);
    CHECK(cov.diag(0, 0) == Approx(1.0));
    CHECK(cov.diag(1, 2) == Approx(0.25));
    CHECK(cov.diag(2, 1) == Approx(0.25));

    // mass suppression is monotone
    double prev = 1.0;
    for (double mu2 : {1.0, 10.0, 100.0, 1e6}) {
        ModelParams q = p;
        q.mu2 = mu2;
        const double c = covariance(q).diag(1, 1);
        CHECK(c < prev);
        prev = c;
    }
    CHECK(prev < 1e-5);

    ModelParams bad = p;
    bad.omega = 0.5;
    CHECK_THROWS_WITH_AS(covariance(bad), doctest::Contains("omega == 1"),
                         std::domain_error);
}

TEST_CASE("defining relation Delta C = identity, exact rationals") {
    CHECK(kinetic_covariance_identity_exact(Rational(4), Rational(0), 3));
    CHECK(kinetic_covariance_identity_exact(Rational(4), Rational(0), 10));
    CHECK(kinetic_covariance_identity_exact(Rational(3), Rational(1, 2), 5));
}

TEST_CASE("slice partition telescopes to the full propagator") {
    ModelParams p = default_params(4);
    const Covariance cov = covariance(p, 2.0);
    Eigen::ArrayXXd sum = Eigen::ArrayXXd::Zero(p.dim(), p.dim());
    for (int j = 0; j <= 21; ++j) sum += sliced_propagator(cov, j);
    CHECK(std::abs(sum(0, 0) - 1.0) < 1e-12);
    CHECK(((sum - cov.diag).abs() / cov.diag).maxCoeff() < 1e-11);
}

TEST_CASE("slice remainder bound exp(-M^-2J) C") {
    ModelParams p = default_params(4);
    const Covariance cov = covariance(p, 2.0);
    const int j0 = static_cast<int>(
        std::ceil(std::log(2.0 * p.cutoff + 2.0) / (2.0 * std::log(2.0))));
    for (int J = j0; J <= j0 + 5; ++J) {
        Eigen::ArrayXXd sum = Eigen::ArrayXXd::Zero(p.dim(), p.dim());
        for (int j = 0; j <= J; ++j) sum += sliced_propagator(cov, j);
        const Eigen::ArrayXXd remainder = cov.diag - sum;
        const double bound = std::exp(-std::pow(2.0, -2.0 * J));
        CHECK((remainder <= bound * cov.diag + 1e-15).all());
        CHECK((remainder >= -1e-15).all());
    }
}

TEST_CASE("slice bound K M^-2j with K = M^2 - 1") {
    for (double M : {2.0, 3.0}) {
        ModelParams p = default_params(6);
        const Covariance cov = covariance(p, M);
        const double K = M * M - 1.0;
        for (int j = 1; j <= 8; ++j) {
            const Eigen::ArrayXXd cj = sliced_propagator(cov, j);
            CHECK(cj.maxCoeff() <= K * std::pow(M, -2.0 * j) + 1e-15);
        }
        // explicit spec point: M=2, j=3, entry (0,0) below K 2^-6
        if (M == 2.0) {
            CHECK(sliced_propagator(cov, 3)(0, 0) <= K / 64.0);
        }
    }
}

TEST_CASE("slice values match 1d quadrature of the alpha integral") {
    ModelParams p = default_params(3);
    const Covariance cov = covariance(p, 2.0);
    for (int j : {1, 2, 4}) {
        const Eigen::ArrayXXd cj = sliced_propagator(cov, j);
        for (int m = 0; m < p.dim(); ++m)
            for (int n = 0; n < p.dim(); ++n) {
                const double rate = cov.rate(m, n);
                const double lo = std::pow(2.0, -2.0 * j);
                const double hi = std::pow(2.0, -2.0 * (j - 1));
                const double quad = integrate_adaptive(
                    [rate](double a) { return std::exp(-a * rate); }, lo, hi, 1e-13);
                CHECK(cj(m, n) == Approx(quad).epsilon(1e-11));
            }
    }
    // large-index ratio is governed by the exponential of the window edge
    ModelParams big = default_params(40);
    const Covariance bcov = covariance(big, 2.0);
    for (int j : {2, 3}) {
        const Eigen::ArrayXXd cj = sliced_propagator(bcov, j);
        const Eigen::ArrayXXd cj1 = sliced_propagator(bcov, j + 1);
        const int m = 40, n = 40;
        const double ratio = cj1(m, n) / cj(m, n);
        // the alpha integrals concentrate at the window's lower edge
        const double lo_j = std::pow(2.0, -2.0 * j);
        const double lo_j1 = std::pow(2.0, -2.0 * (j + 1));
        const double rate = bcov.rate(m, n);
        const double quad_j = integrate_adaptive(
            [rate](double a) { return std::exp(-a * rate); }, lo_j, 4 * lo_j, 1e-13);
        const double quad_j1 = integrate_adaptive(
            [rate](double a) { return std::exp(-a * rate); }, lo_j1, 4 * lo_j1, 1e-13);
        CHECK(ratio == Approx(quad_j1 / quad_j).epsilon(1e-10));
    }
}

TEST_CASE("counterterm table, exact values and monotonicity") {
    const auto cov = rational_covariance(Rational(4), Rational(0), 2);
    const auto ct = rational_counterterms(cov);
    CHECK(ct.T[0] == Rational(11, 6));  // 1 + 1/2 + 1/3
    CHECK(ct.T[1] == Rational(1, 2) + Rational(1, 3) + Rational(1, 4));
    for (std::size_t m = 0; m + 1 < ct.T.size(); ++m) CHECK(ct.T[m] > ct.T[m + 1]);
    CHECK(ct.T2 == ct.T[0] * ct.T[0] + ct.T[1] * ct.T[1] + ct.T[2] * ct.T[2]);

    // double path agrees
    const auto dcov = covariance(default_params(2));
    const auto dct = counterterms(dcov);
    CHECK(dct.T[0] == Approx(to_double(ct.T[0])).epsilon(1e-14));
    CHECK(dct.T2 == Approx(to_double(ct.T2)).epsilon(1e-14));
    CHECK(dct.T3 == Approx(to_double(ct.T3)).epsilon(1e-14));
}

TEST_CASE("T3 equals the literal quadruple sum") {
    const auto cov = rational_covariance(Rational(4), Rational(0), 4);
    const auto ct = rational_counterterms(cov);
    Rational literal = 0;
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (int l = 0; l <= 4; ++l)
                for (int p = 0; p <= 4; ++p)
                    literal += cov.at(m, p) * cov.at(n, p) * cov.at(l, p);
    CHECK(ct.T3 == literal);
}

TEST_CASE("asymptotic constant and its quadrature") {
    const double c = asymptotic_constant();
    CHECK(c == Approx(2.6058).epsilon(1e-4));
    CHECK(std::abs(asymptotic_constant_quadrature() - c) < 1e-6);
}

TEST_CASE("T2 growth approaches the asymptotic constant") {
    const double c = asymptotic_constant();
    double prev_ratio = 0.0;
    for (long long cutoff : {1000LL, 10000LL, 100000LL}) {
        const double ratio = t2_large(cutoff) / static_cast<double>(cutoff);
        CHECK(ratio > prev_ratio);  // increasing toward the constant
        CHECK(ratio < c);
        prev_ratio = ratio;
    }
    CHECK(std::abs(prev_ratio - c) / c < 0.05);
}

TEST_CASE("digamma tadpole matches the direct row sum") {
    const auto dcov = covariance(default_params(50));
    const auto dct = counterterms(dcov);
    for (int m : {0, 7, 50}) CHECK(tadpole_large(m, 50) == Approx(dct.T[m]).epsilon(1e-12));
}

TEST_CASE("logarithmic tadpole asymptotics") {
    const long long cutoff = 10000;
    for (int m = 1; m <= cutoff / 100; m += 7) {
        const double ratio = tadpole_large(m, cutoff) /
                             std::log((static_cast<double>(cutoff) + m) / m);
        CHECK(ratio > 0.9);
        CHECK(ratio < 1.1);
    }
}
