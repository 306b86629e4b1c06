#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "gw2/moyal.hpp"
#include "gw2/rng.hpp"

using namespace gw2;
using namespace gw2::moyal;
using doctest::Approx;

namespace {

// Independent term-by-term evaluation of the finite defining sum, with
// factorials and binomials built by integer recursion instead of lgamma.
Complex basis_reference(int m, int n, double x1, double x2, double theta) {
    auto fact = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    auto binom = [&](int a, int b) { return fact(a) / (fact(b) * fact(a - b)); };
    const Complex a(x1 / std::sqrt(2.0), x2 / std::sqrt(2.0));
    const Complex abar = std::conj(a);
    Complex sum = 0.0;
    for (int k = 0; k <= std::min(m, n); ++k) {
        double c = binom(m, k) * binom(n, k) * fact(k) * std::pow(2.0, m + n - 2 * k) *
                   std::pow(theta, k);
        if (k % 2) c = -c;
        sum += c * std::pow(abar, m - k) * std::pow(a, n - k);
    }
    sum /= std::sqrt(fact(m) * fact(n) * std::pow(theta, m + n));
    return sum * 2.0 * std::exp(-(x1 * x1 + x2 * x2) / theta);
}

MatrixFunction random_function(const ModelParams& p, std::uint64_t seed, bool hermitian) {
    MatrixFunction f = zero_function(p);
    Rng rng(seed, 0);
    if (hermitian) {
        f.coeffs = random_hermitian(rng, p.dim());
    } else {
        for (int i = 0; i < p.dim(); ++i)
            for (int j = 0; j < p.dim(); ++j)
                f.coeffs(i, j) = Complex(rng.normal(), rng.normal());
    }
    return f;
}

}  // namespace

TEST_CASE("basis function values at the origin") {
    CHECK(basis_function(0, 0, 0.0, 0.0, 1.0).real() == Approx(2.0));
    CHECK(std::abs(basis_function(0, 1, 0.0, 0.0, 1.0)) == Approx(0.0));
    CHECK(std::abs(basis_function(0, 1, 0.0, 0.0, 0.5)) == Approx(0.0));
    CHECK(std::abs(basis_function(1, 0, 0.0, 0.0, 2.0)) == Approx(0.0));
}

TEST_CASE("basis function against the independent finite-sum evaluation") {
    // f_11 at x = (1,0), theta = 1 and a spread of nearby cases
    const Complex ref = basis_reference(1, 1, 1.0, 0.0, 1.0);
    const Complex got = basis_function(1, 1, 1.0, 0.0, 1.0);
    CHECK(std::abs(got - ref) < 1e-13);
    CHECK(got.real() == Approx(2.0 / std::exp(1.0)));  // (2|x|^2-1) f0 at |x|=1

    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (double theta : {0.5, 1.0, 2.0}) {
                const Complex a = basis_function(m, n, 0.7, -1.3, theta);
                const Complex b = basis_reference(m, n, 0.7, -1.3, theta);
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(theta);
                CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(b)));
            }
}

TEST_CASE("basis function guards") {
    CHECK_THROWS(basis_function(0, 0, 0.0, 0.0, -1.0));
    CHECK_THROWS(basis_function(40, 30, 0.0, 0.0, 1.0));
    CHECK_NOTHROW(basis_function(30, 30, 0.5, 0.5, 1.0));
}

TEST_CASE("conjugation symmetry f_mn = conj(f_nm)") {
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
            const Complex a = basis_function(m, n, 0.4, 1.1, 1.5);
            const Complex b = basis_function(n, m, 0.4, 1.1, 1.5);
            CHECK(std::abs(a - std::conj(b)) < 1e-13);
        }
}

TEST_CASE("star product fusion on basis units") {
    ModelParams p = default_params(2);
    const auto e01 = basis_unit(p, 0, 1);
    const auto e12 = basis_unit(p, 1, 2);
    const auto prod = star_product(e01, e12);
    CHECK(prod.coeffs(0, 2).real() == Approx(1.0));
    CHECK(prod.coeffs.cwiseAbs().sum() == Approx(1.0));

    // identity coefficients act as the unit
    MatrixFunction id = zero_function(p);
    id.coeffs.setIdentity();
    const auto b = random_function(p, 11, false);
    const auto ib = star_product(id, b);
    CHECK((ib.coeffs - b.coeffs).cwiseAbs().maxCoeff() == Approx(0.0));
}

TEST_CASE("star product dimension mismatch is rejected") {
    const auto a = basis_unit(default_params(2), 0, 0);
    const auto b = basis_unit(default_params(3), 0, 0);
    CHECK_THROWS(star_product(a, b));
    ModelParams q = default_params(2);
    q.theta = 2.0;
    CHECK_THROWS(star_product(a, basis_unit(q, 0, 0)));
}

TEST_CASE("star product associativity is exact on integer coefficients") {
    ModelParams p = default_params(3);
    MatrixFunction a = zero_function(p), b = zero_function(p), c = zero_function(p);
    Rng rng(3, 0);
    for (int i = 0; i < p.dim(); ++i)
        for (int j = 0; j < p.dim(); ++j) {
            a.coeffs(i, j) = Complex(double(int(rng.next_u64() % 7)) - 3.0,
                                     double(int(rng.next_u64() % 7)) - 3.0);
            b.coeffs(i, j) = Complex(double(int(rng.next_u64() % 5)) - 2.0, 0.0);
            c.coeffs(i, j) = Complex(0.0, double(int(rng.next_u64() % 9)) - 4.0);
        }
    const auto left = star_product(star_product(a, b), c);
    const auto right = star_product(a, star_product(b, c));
    CHECK((left.coeffs - right.coeffs).cwiseAbs().maxCoeff() == 0.0);  // bit exact
}

TEST_CASE("integrate: trace formula and cyclicity") {
    ModelParams p = default_params(2);
    p.theta = 1.0;
    CHECK(integrate(basis_unit(p, 0, 0)).real() == Approx(2.0 * M_PI));
    CHECK(std::abs(integrate(basis_unit(p, 0, 1))) == Approx(0.0));

    const auto a = random_function(p, 5, false);
    const auto b = random_function(p, 6, false);
    const Complex ab = integrate(star_product(a, b));
    const Complex ba = integrate(star_product(b, a));
    CHECK(std::abs(ab - ba) < 1e-12 * std::max(1.0, std::abs(ab)));
}

TEST_CASE("integrate against quadrature for a random Hermitian field") {
    ModelParams p = default_params(2);
    p.theta = 1.0;
    const auto a = random_function(p, 7, true);
    const Complex exact = integrate(a);
    const Complex quad = integrate_quadrature(a);
    CHECK(std::abs(exact - quad) < 1e-8 * std::max(1.0, std::abs(exact)));
}

TEST_CASE("plane integral of basis functions is 2 pi theta delta_mn") {
    for (double theta : {1.0, 2.0}) {
        ModelParams p = default_params(3);
        p.theta = theta;
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                const Complex q = integrate_quadrature(basis_unit(p, m, n));
                const double expected = (m == n) ? 2.0 * M_PI * theta : 0.0;
                CAPTURE(m);
                CAPTURE(n);
                CHECK(std::abs(q - expected) < 1e-6);
            }
    }
}

TEST_CASE("reconstruct basics") {
    ModelParams p = default_params(3);
    p.theta = 1.0;
    CHECK(reconstruct(basis_unit(p, 0, 0), 0.0, 0.0).real() == Approx(2.0));
    CHECK(std::abs(reconstruct(zero_function(p), 0.8, -0.4)) == 0.0);

    // Hermitian coefficients give a real field
    const auto h = random_function(p, 9, true);
    for (double x1 : {-1.5, 0.0, 0.7, 2.0})
        for (double x2 : {-0.8, 0.3, 1.9}) {
            CHECK(std::abs(reconstruct(h, x1, x2).imag()) < 1e-10);
        }
}

TEST_CASE("fusion rule against the defining integral, sampled") {
    // spot checks here; the full m,n,k,l <= 3 sweep runs in the acceptance suite
    const double theta = 1.0;
    for (auto [m, n, k, l] : {std::array<int, 4>{0, 1, 1, 0}, {1, 0, 0, 1}, {1, 1, 1, 2},
                              {2, 1, 1, 0}, {0, 2, 1, 1}}) {
        for (auto [x1, x2] : {std::pair<double, double>{0.0, 0.0}, {1.0, -0.5}}) {
            const Complex lhs = basis_star_quadrature(m, n, k, l, theta, x1, x2);
            const Complex rhs =
                (n == k) ? basis_function(m, l, x1, x2, theta) : Complex(0.0, 0.0);
            CAPTURE(m);
            CAPTURE(n);
            CAPTURE(k);
            CAPTURE(l);
            CHECK(std::abs(lhs - rhs) < 1e-6);
        }
    }
}

TEST_CASE("star product of random fields against the quadrature oracle") {
    ModelParams p = default_params(2);
    p.theta = 1.0;
    const auto a = random_function(p, 21, false);
    const auto b = random_function(p, 22, false);
    const auto ab = star_product(a, b);
    for (auto [x1, x2] : {std::pair<double, double>{0.0, 0.0}, {0.9, 0.4}, {-1.2, 1.7}}) {
        const Complex direct = reconstruct(ab, x1, x2);
        const Complex quad = star_product_quadrature(a, b, x1, x2);
        CHECK(std::abs(direct - quad) < 1e-6 * std::max(1.0, std::abs(direct)));
    }
}
