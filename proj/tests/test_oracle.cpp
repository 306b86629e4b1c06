#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gw2/oracle.hpp"
#include "gw2/propagator.hpp"

using namespace gw2;
using namespace gw2::oracle;
using gw2::prop::rational_covariance;
using gw2::prop::rational_counterterms;

namespace {
prop::RationalCovariance cov_at(int cutoff) {
    return rational_covariance(Rational(4), Rational(0), cutoff);
}
}  // namespace

TEST_CASE("order 0 vanishes for the normalized measure") {
    CHECK(vacuum_coefficient(0, cov_at(3)) == 0);
}

TEST_CASE("first-order coefficient: the tadpole structures cancel exactly") {
    // the divergent part is zero; the remainder is the crossing term
    // -(1/4) sum_m C_mm^2, frozen at cutoff 3: -(3229/11025)
    const auto cov = cov_at(3);
    CHECK(divergent_structure_total(1, cov) == 0);
    CHECK(vacuum_coefficient(1, cov) == Rational(-3229, 11025));

    // identical under both subtraction schemes
    CHECK(vacuum_coefficient(1, cov, kLeafCancelledScheme) == Rational(-3229, 11025));
    CHECK(divergent_structure_total(1, cov, kLeafCancelledScheme) == 0);

    // a scheme that under-subtracts leaves a divergent residue
    CHECK(divergent_structure_total(1, cov, WickScheme{4, 2}) != 0);
}

TEST_CASE("first-order coefficient equals -(1/4) sum C_mm^2 for a range of cutoffs") {
    for (int cutoff = 1; cutoff <= 6; ++cutoff) {
        const auto cov = cov_at(cutoff);
        Rational crossing = 0;
        for (int m = 0; m <= cutoff; ++m) crossing += cov.at(m, m) * cov.at(m, m);
        CHECK(vacuum_coefficient(1, cov) == -crossing / 4);
    }
}

TEST_CASE("cumulant route equals connected-enumeration route") {
    for (int cutoff : {1, 2, 3}) {
        const auto cov = cov_at(cutoff);
        for (const WickScheme scheme : {kSubtractedScheme, kLeafCancelledScheme}) {
            CHECK(vacuum_coefficient(1, cov, scheme) ==
                  vacuum_coefficient_connected(1, cov, scheme));
            CHECK(vacuum_coefficient(2, cov, scheme) ==
                  vacuum_coefficient_connected(2, cov, scheme));
        }
    }
}

TEST_CASE("second order: no uncancelled tadpole structures survive") {
    for (int cutoff : {1, 2, 3}) {
        CHECK(divergent_structure_total(2, cov_at(cutoff)) == 0);
    }
}

TEST_CASE("second order of the leaf-cancelled scheme is positive (variance)") {
    for (int cutoff : {1, 2, 3}) {
        CHECK(vacuum_coefficient(2, cov_at(cutoff), kLeafCancelledScheme) > 0);
    }
}

TEST_CASE("guards") {
    CHECK_THROWS(vacuum_coefficient(3, cov_at(2)));
    CHECK_THROWS(vacuum_coefficient(2, cov_at(11)));
}

TEST_CASE("grouped first-order amplitudes cancel for every cutoff up to 20") {
    for (int cutoff = 1; cutoff <= 20; ++cutoff) {
        const auto g = grouped_order1(cov_at(cutoff));
        CHECK(g.total == 0);
    }
}

TEST_CASE("grouped first-order values at cutoff 1 are the explicit rationals") {
    // T_0 = 3/2, T_1 = 5/6, T2 = 53/18
    const auto g = grouped_order1(cov_at(1));
    REQUIRE(g.parts.size() == 3);
    CHECK(g.parts[0].name == "A");
    CHECK(g.parts[0].value == Rational(-53, 12));
    CHECK(g.parts[1].value == Rational(-53, 18));
    CHECK(g.parts[2].value == Rational(265, 36));
    // ratio A : C = -3 : 5
    CHECK(g.parts[0].value * 5 == -g.parts[2].value * 3);
}

TEST_CASE("grouped second-order amplitudes cancel for every cutoff up to 10") {
    for (int cutoff = 1; cutoff <= 10; ++cutoff) {
        const auto g = grouped_order2(cov_at(cutoff));
        CHECK(g.total == 0);
    }
}

TEST_CASE("grouped second-order multiplicities and explicit values at cutoff 1") {
    const auto g = grouped_order2(cov_at(1));
    REQUIRE(g.parts.size() == 3);
    CHECK(g.parts[0].multiplicity == 8);
    CHECK(g.parts[1].multiplicity == 9);
    CHECK(g.parts[2].multiplicity == 4);
    // T3 = (3/2)^3 + (5/6)^3 = 427/108
    CHECK(g.parts[0].value == Rational(427, 108));
    CHECK(g.parts[1].value == -Rational(3, 2) * Rational(427, 108));
    CHECK(g.parts[2].value == Rational(427, 108) / 2);
}

TEST_CASE("perturbed multiplicity breaks the second-order cancellation") {
    const auto g = grouped_order2(cov_at(3), -1);  // 9 -> 8
    CHECK(g.total != 0);
}

TEST_CASE("two-point function: free coefficient and first order") {
    const auto cov = cov_at(3);
    CHECK(two_point_coefficient(0, 1, 2, cov) == Rational(1, 4));
    CHECK(two_point_coefficient(0, 0, 0, cov) == 1);

    // symmetry under m <-> n
    for (int m = 0; m <= 2; ++m)
        for (int n = m; n <= 3; ++n)
            CHECK(two_point_coefficient(1, m, n, cov) ==
                  two_point_coefficient(1, n, m, cov));

    CHECK_THROWS(two_point_coefficient(2, 0, 0, cov));
    CHECK_THROWS(two_point_coefficient(1, 4, 0, cov));
}

TEST_CASE("subtraction kills the divergent tadpole part of the two-point function") {
    // Under the full subtraction the first-order value stays bounded as the
    // cutoff grows; with no subtraction at all it grows like the tadpole sum.
    const WickScheme none{0, 0};
    Rational prev_subtracted = 0, prev_bare = 0;
    std::vector<Rational> sub_vals, bare_vals;
    for (int cutoff : {2, 4, 8}) {
        const auto cov = cov_at(cutoff);
        sub_vals.push_back(two_point_coefficient(1, 0, 0, cov));
        bare_vals.push_back(two_point_coefficient(1, 0, 0, cov, none));
    }
    (void)prev_subtracted;
    (void)prev_bare;
    const double sub_growth =
        std::abs(to_double(sub_vals[2]) - to_double(sub_vals[1]));
    const double bare_growth =
        std::abs(to_double(bare_vals[2]) - to_double(bare_vals[1]));
    CHECK(sub_growth < 0.2 * bare_growth);
}
