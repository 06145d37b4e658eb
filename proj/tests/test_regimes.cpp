// Discriminant machinery: closed-form limits, the Table-of-coefficients
// polynomial identity, regime classification, and both asymptotic critical
// lines cross-checked against a sign-change bisection oracle.

#include <doctest.h>

#include <cmath>
#include <random>

#include "lambdabloch/regimes.hpp"
#include "oracles.hpp"

using namespace lambdabloch;

TEST_CASE("r -> 0 limit reproduces D = (1/27) x^2 (x^2+4)^2 in gamma units") {
    const RegimeReport rep = discriminant(symmetric_params(1.0, 0.0, 1.0, 1.0));
    CHECK(rep.D == doctest::Approx(25.0 / 27.0).epsilon(1e-12));
    CHECK(rep.regime == Regime::Underdamped);

    for (double x : {0.3, 2.0, 7.5}) {
        const RegimeReport r0 = discriminant(symmetric_params(1.0, 0.0, x, 0.7));
        const double expect = x * x * (x * x + 4.0) * (x * x + 4.0) / 27.0;
        CHECK(r0.D == doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("degenerate ground states are overdamped for p != 0") {
    const RegimeReport rep = discriminant(symmetric_params(1.0, 1e-3, 0.0, 1.0));
    CHECK(rep.D < 0.0);
    CHECK(rep.regime == Regime::Overdamped);
}

TEST_CASE("strong driving at delta/gamma = 10, nbar = 1e3 is overdamped") {
    // The ray slope delta/(nbar gamma) = 1e-2 lies far below f(1) ~ 0.59.
    const RegimeReport rep = discriminant(symmetric_params(1e9, 1e3, 1e10, 1.0));
    CHECK(rep.D < 0.0);
    CHECK(rep.regime == Regime::Overdamped);
}

TEST_CASE("coefficients vanish as promised at delta = 0") {
    for (double p : {0.25, 0.5, 1.0}) {
        const DiscriminantCoefficients dc = discriminant_coefficients(p, 0.0);
        CHECK(dc.d0 == 0.0);
        CHECK(dc.d1 == 0.0);
        // The quadratic coefficient is negative (its exact value is -432 p^4).
        CHECK(dc.d2 < 0.0);
    }
}

TEST_CASE("d0 at delta/gamma = 1, p = 0 equals 2700") {
    const DiscriminantCoefficients dc = discriminant_coefficients(0.0, 1.0);
    CHECK(dc.d0 == 2700.0);
}

TEST_CASE("polynomial in nbar reproduces the direct discriminant") {
    std::mt19937_64 rng(431);
    for (int k = 0; k < 100; ++k) {
        const SystemParams params = oracles::random_symmetric_params(rng);
        const RegimeReport rep = discriminant(params);
        const DiscriminantCoefficients dc =
            discriminant_coefficients(params.p, params.delta_over_gamma());
        const double poly = dc.polynomial(params.nbar) / 2916.0;
        const double scale = std::max({std::abs(rep.B * rep.B * rep.B),
                                       rep.E * rep.E, std::abs(rep.D)});
        CHECK(std::abs(poly - rep.D) <= 1e-10 * scale);
    }
}

TEST_CASE("strong-pumping slope satisfies its depressed cubic") {
    for (double p : {0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0}) {
        const double f = critical_slope_strong(p);
        const double z = f * f;
        const double P = 16.0 + 60.0 * p * p + 27.0 * std::pow(p, 4);
        const double Q = -9.0 * std::pow(p, 4) * (1.0 + 3.0 * p * p);
        CHECK(std::abs(z * z * z + P * z + Q) <= 1e-12 * std::abs(Q));
    }
}

TEST_CASE("strong-pumping slope matches the bisection oracle") {
    // Frozen bisection locations of the D sign change along delta/gamma =
    // m * nbar at nbar = 1e6 (80 halvings of m in [1e-4, 1e2]).
    struct Frozen { double p, bisect; };
    const Frozen table[] = {{0.25, 0.0458360311746},
                            {0.5, 0.173078109822},
                            {0.9, 0.495332815519},
                            {1.0, 0.591851731389}};
    for (const Frozen& row : table) {
        const double m = oracles::bisect_critical_slope(row.p, 1e6, 1e-4, 1e2);
        CHECK(m == doctest::Approx(row.bisect).epsilon(1e-9));
        CHECK(std::abs(m - critical_slope_strong(row.p)) <=
              0.01 * critical_slope_strong(row.p));
    }
    // The cross-check the closed form is quoted against: nbar = 1e3, p = 1.
    const double m3 = oracles::bisect_critical_slope(1.0, 1e3, 1e-4, 1e2);
    CHECK(std::abs(m3 - critical_slope_strong(1.0)) <= 0.01 * critical_slope_strong(1.0));
}

TEST_CASE("rays on either side of the strong critical line classify correctly") {
    for (double p : {0.5, 0.9, 1.0}) {
        const double f = critical_slope_strong(p);
        const double nbar = 1e4;
        const RegimeReport above =
            discriminant(symmetric_params(1.0, nbar, 1.1 * f * nbar, p));
        const RegimeReport below =
            discriminant(symmetric_params(1.0, nbar, 0.9 * f * nbar, p));
        CHECK(above.D > 0.0);
        CHECK(below.D < 0.0);
    }
}

TEST_CASE("weak-pumping critical ratio") {
    CHECK(critical_ratio_weak(1.0) == 0.5);
    CHECK(critical_ratio_weak(0.0) == 0.0);
    CHECK(critical_ratio_weak(0.5) == 0.125);

    SUBCASE("sign check on both sides of delta = p^2/2 * r") {
        const double r = 1e-3;
        const RegimeReport below = discriminant(symmetric_params(1.0, 1e-3, 0.4 * r, 1.0));
        const RegimeReport above = discriminant(symmetric_params(1.0, 1e-3, 0.6 * r, 1.0));
        CHECK(below.D < 0.0);
        CHECK(above.D > 0.0);
    }

    SUBCASE("bisection oracle converges to p^2/2 as nbar -> 0") {
        for (double p : {0.5, 0.9, 1.0}) {
            const double m = oracles::bisect_critical_slope(p, 1e-5, 1e-4, 1e2);
            CHECK(m == doctest::Approx(0.5 * p * p).epsilon(1e-4));
        }
    }
}

TEST_CASE("p = 0 has no critical line") {
    CHECK_THROWS_AS(critical_slope_strong(0.0), DegenerateP);
    // The report maps the degenerate slope to its limit instead of throwing.
    const RegimeReport rep = discriminant(symmetric_params(1.0, 1.0, 1.0, 0.0));
    CHECK(rep.critical_slope_strong == 0.0);
    CHECK(rep.critical_ratio_weak == 0.0);
    CHECK(rep.D > 0.0);
}

TEST_CASE("classification honors the cancellation band") {
    CHECK(classify_discriminant(1.0, 1.0, 1.0) == Regime::Underdamped);
    CHECK(classify_discriminant(-1.0, 1.0, 1.0) == Regime::Overdamped);
    CHECK(classify_discriminant(1e-12, 10.0, 10.0) == Regime::Critical);
    CHECK(classify_discriminant(-1e-12, 10.0, 10.0) == Regime::Critical);
    CHECK(classify_discriminant(0.0, 1.0, 1.0) == Regime::Critical);
}

TEST_CASE("asymmetric decay rates are rejected") {
    RawParams raw;
    raw.gamma1 = 1.0;
    raw.gamma2 = 2.0;
    raw.nbar = 1.0;
    raw.delta = 1.0;
    raw.p = 0.5;
    CHECK_THROWS_AS(discriminant(validate_params(raw)), Asymmetric);
}

TEST_CASE("polarized geometry gets classified without critical-line values") {
    const RegimeReport rep = discriminant(
        symmetric_params(1e8, 1e-3, 1e6, 0.0, DriveGeometry::PolarizedX));
    CHECK(std::isnan(rep.critical_slope_strong));
    CHECK(std::isnan(rep.critical_ratio_weak));
    CHECK(rep.regime == Regime::Underdamped);
}
