// Eigenvalue machinery: Cardano roots against the dense numeric solve and the
// characteristic-polynomial invariants, the Q interpolation, quasi-steady
// lifetime predictors, and the effective decoherence-rate model.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "lambdabloch/dynamics.hpp"
#include "lambdabloch/generator.hpp"
#include "lambdabloch/regimes.hpp"
#include "lambdabloch/spectral.hpp"
#include "oracles.hpp"

using namespace lambdabloch;

namespace {

const SystemParams fig1c = symmetric_params(1e9, 1e-3, 1e7, 1.0);
const SystemParams fig2 = symmetric_params(1e9, 1e3, 1e10, 1.0);

double max_abs(const EigenTriple& e) {
    return std::max({std::abs(e.lambda1), std::abs(e.lambda2), std::abs(e.lambda3)});
}

}  // namespace

TEST_CASE("nbar = 0 decouples into a block spectrum {-2 gamma, +/- i delta}") {
    const Generator gen = build_generator(symmetric_params(1.0, 0.0, 1.0, 0.7));
    const EigenTriple e = eigenvalues_cardano(gen);
    CHECK(e.lambda1.real() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(e.lambda1.imag() == 0.0);
    CHECK(std::abs(e.lambda2.real()) <= 1e-12);
    CHECK(e.lambda2.imag() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.lambda3 == std::conj(e.lambda2));
}

TEST_CASE("Cardano matches the dense numeric solve on random draws") {
    std::mt19937_64 rng(73);
    for (int k = 0; k < 200; ++k) {
        const SystemParams params = oracles::random_symmetric_params(rng);
        const Generator gen = build_generator(params);
        const EigenTriple card = eigenvalues_cardano(gen);
        const EigenTriple num = eigen_triple_numeric(gen);
        const double scale = max_abs(card);
        CHECK(std::abs(card.lambda1 - num.lambda1) <= 1e-9 * scale);
        CHECK(std::abs(card.lambda2 - num.lambda2) <= 1e-9 * scale);
        CHECK(std::abs(card.lambda3 - num.lambda3) <= 1e-9 * scale);
    }
}

TEST_CASE("roots reproduce the trace and determinant") {
    std::mt19937_64 rng(74);
    for (int k = 0; k < 200; ++k) {
        const SystemParams params = oracles::random_symmetric_params(rng);
        const Generator gen = build_generator(params);
        const EigenTriple e = eigenvalues_cardano(gen);
        const double tr = gen.A.trace();
        const double det = gen.A.determinant();
        CHECK(std::abs(e.sum() - tr) <= 1e-9 * std::abs(tr));
        CHECK(std::abs(e.product() - det) <= 1e-9 * std::abs(det));
        CHECK(e.lambda1.real() < 0.0);
        CHECK(e.lambda2.real() < 0.0);
        CHECK(e.lambda3.real() < 0.0);
    }
}

TEST_CASE("ordering convention tracks the regime") {
    SUBCASE("underdamped: one real root plus an exact conjugate pair") {
        const SystemParams params = symmetric_params(1.0, 1e-3, 1.0, 1.0);
        REQUIRE(discriminant(params).D > 0.0);
        const EigenTriple e = eigenvalues_cardano(build_generator(params));
        CHECK(e.lambda1.imag() == 0.0);
        CHECK(e.lambda2.imag() > 0.0);
        CHECK(e.lambda3 == std::conj(e.lambda2));
    }
    SUBCASE("overdamped: all real, lambda1 fastest, rest ascending") {
        const SystemParams params = symmetric_params(1e9, 1e3, 1e10, 1.0);
        REQUIRE(discriminant(params).D < 0.0);
        const EigenTriple e = eigenvalues_cardano(build_generator(params));
        CHECK(e.lambda1.imag() == 0.0);
        CHECK(e.lambda2.imag() == 0.0);
        CHECK(e.lambda3.imag() == 0.0);
        CHECK(std::abs(e.lambda2.real()) <= std::abs(e.lambda3.real()));
        CHECK(std::abs(e.lambda3.real()) <= std::abs(e.lambda1.real()));
    }
}

TEST_CASE("symmetric 4-dim spectrum is the 3-dim spectrum plus -r") {
    const SystemParams params = symmetric_params(2.0, 0.7, 1.3, 0.6);
    const EigenTriple e3 = eigenvalues_cardano(build_generator(params));
    const std::array<std::complex<double>, 3> roots = e3.all();
    std::vector<std::complex<double>> expected(roots.begin(), roots.end());
    expected.emplace_back(-params.r(), 0.0);

    std::vector<std::complex<double>> e4 =
        eigenvalues_numeric(build_general_isotropic(params));
    REQUIRE(e4.size() == 4);
    for (const std::complex<double>& want : expected) {
        double best = 1e300;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < e4.size(); ++i) {
            if (std::abs(e4[i] - want) < best) {
                best = std::abs(e4[i] - want);
                best_i = i;
            }
        }
        CHECK(best <= 1e-9 * std::abs(want));
        e4.erase(e4.begin() + static_cast<std::ptrdiff_t>(best_i));
    }
    CHECK(e4.empty());
}

TEST_CASE("polarized eigenvalue product reproduces det A = -2 at r = gamma, delta = 0") {
    const SystemParams pol = symmetric_params(
        1.0, 1.0 / kPolarizedAttenuation, 0.0, 0.0, DriveGeometry::PolarizedX);
    const EigenTriple e = eigenvalues_cardano(build_generator(pol));
    CHECK(e.product().real() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(std::abs(e.product().imag()) <= 1e-12);
}

TEST_CASE("weak-pumping anchors: fast mode at -(3r+2g), beat at delta") {
    for (double nbar : {1e-4, 1e-3}) {
        for (double x : {1e-2, 1.0, 1e2}) {
            for (double p : {0.0, 0.5, 1.0}) {
                for (double gamma : {1.0, 1e9}) {
                    const SystemParams params = symmetric_params(gamma, nbar, x * gamma, p);
                    const EigenTriple e = eigenvalues_cardano(build_generator(params));
                    const double fast = 3.0 * params.r() + 2.0 * gamma;
                    CHECK(std::abs(e.lambda1.real() + fast) <= 1e-3 * fast);
                    if (discriminant(params).regime == Regime::Underdamped) {
                        CHECK(std::abs(e.lambda2.imag() - params.delta) <=
                              1e-2 * params.delta);
                    }
                }
            }
        }
    }
}

TEST_CASE("Q interpolation") {
    SUBCASE("frozen representative values") {
        CHECK(q_function(fig1c) == doctest::Approx(0.500012456055).epsilon(1e-9));
        CHECK(q_function(symmetric_params(1.0, 1e-3, 1.0, 1.0)) ==
              doctest::Approx(0.599736441428).epsilon(1e-9));
        CHECK(q_function(symmetric_params(1e9, 1e-3, 1e7, 0.5)) ==
              doctest::Approx(0.874956302204).epsilon(1e-9));
        CHECK(q_function(symmetric_params(1.0, 1e-3, 10.0, 1.0)) ==
              doctest::Approx(0.980722265978).epsilon(1e-9));
    }
    SUBCASE("limits: 1 - p^2/2 below gamma, 1 far above, 0.6 at delta = gamma") {
        CHECK(q_function(fig1c) == doctest::Approx(0.5).epsilon(0.02));
        CHECK(q_function(symmetric_params(1e9, 1e-3, 1e7, 0.5)) ==
              doctest::Approx(0.875).epsilon(0.02));
        CHECK(q_function(symmetric_params(1.0, 1e-3, 10.0, 1.0)) ==
              doctest::Approx(1.0).epsilon(0.02));
        CHECK(q_function(symmetric_params(1.0, 1e-3, 1e-2, 0.0)) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(q_function(symmetric_params(1.0, 1e-3, 1.0, 1.0)) ==
              doctest::Approx(0.6).epsilon(0.01));
    }
    SUBCASE("bounded on a weak-pumping sweep") {
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            for (int i = 0; i < 9; ++i) {
                const double x = 1e-2 * std::pow(10.0, 0.5 * i);
                const double q = q_function(symmetric_params(1.0, 1e-4, x, p));
                CHECK(q >= 0.5 - 1e-3);
                CHECK(q <= 1.0 + 1e-3);
            }
        }
    }
    SUBCASE("nbar = 0 falls back to the reference occupation") {
        const double q0 = q_function(symmetric_params(1.0, 0.0, 1e-2, 1.0));
        const double qref = q_function(symmetric_params(1.0, 1e-6, 1e-2, 1.0));
        CHECK(q0 == doctest::Approx(qref).epsilon(1e-12));
        CHECK_THROWS_AS(q_function(symmetric_params(1.0, 0.0, 1e-2, 1.0), false),
                        DivisionByZero);
    }
}

TEST_CASE("quasi-steady lifetime in the overdamped aligned regime") {
    const double tau = quasi_steady_lifetime(fig2);
    CHECK(tau == doctest::Approx(1.34e-8).epsilon(1e-12));

    SUBCASE("agrees with the slow eigenvalue within 5 percent") {
        const EigenTriple e = eigenvalues_cardano(build_generator(fig2));
        const double tau_eig = -1.0 / e.lambda2.real();
        CHECK(tau_eig == doctest::Approx(1.33301957606e-8).epsilon(1e-9));
        CHECK(tau / tau_eig == doctest::Approx(1.0).epsilon(0.05));
    }
    SUBCASE("scales as 1/delta^2") {
        const SystemParams doubled = symmetric_params(1e9, 1e3, 2e10, 1.0);
        CHECK(quasi_steady_lifetime(doubled) == doctest::Approx(tau / 4.0).epsilon(1e-12));
    }
    SUBCASE("rejected outside its regime") {
        CHECK_THROWS_AS(quasi_steady_lifetime(fig1c), WrongRegime);
        CHECK_THROWS_AS(quasi_steady_lifetime(symmetric_params(1e9, 1e3, 1e10, 0.9)),
                        WrongRegime);
    }
}

TEST_CASE("effective decoherence rate and alignment threshold") {
    SUBCASE("perfect alignment at zero splitting freezes decoherence") {
        const EffectiveDecoherence ed =
            effective_decoherence_rate(symmetric_params(1.0, 1e3, 0.0, 1.0));
        CHECK(ed.rate == 0.0);
        CHECK(ed.p_c_eff == 1.0);
        CHECK(ed.strong_pumping);
    }
    SUBCASE("strong-pumping reference point") {
        const EffectiveDecoherence ed = effective_decoherence_rate(fig2);
        CHECK(ed.rate == doctest::Approx(1e8).epsilon(1e-12));
        CHECK(ed.p_c_eff == doctest::Approx(0.9999).epsilon(1e-12));
        CHECK(ed.strong_pumping);
        CHECK(ed.rate * quasi_steady_lifetime(fig2) == doctest::Approx(1.34).epsilon(1e-12));
    }
    SUBCASE("delta/r = 0.1 puts the threshold at 0.99") {
        const EffectiveDecoherence ed =
            effective_decoherence_rate(symmetric_params(1.0, 100.0, 10.0, 1.0));
        CHECK(ed.rate == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ed.p_c_eff == doctest::Approx(0.99).epsilon(1e-12));
        CHECK(ed.strong_pumping);
    }
    SUBCASE("weak pumping clears the strong flag but still evaluates") {
        const SystemParams params = symmetric_params(1.0, 5.0, 0.05, 1.0);
        const EffectiveDecoherence ed = effective_decoherence_rate(params);
        CHECK_FALSE(ed.strong_pumping);
        CHECK(ed.rate == doctest::Approx(params.r() * 1e-4).epsilon(1e-12));
    }
}

TEST_CASE("quasi-steady relation certifies the slow manifold") {
    SUBCASE("mixed state at t = 0 satisfies it trivially") {
        CHECK(quasi_steady_relation(mixed_state(), fig2) == 0.0);
    }
    SUBCASE("relaxed state at t = 10/r sits on the manifold") {
        const double t = 10.0 / fig2.r();
        const Trajectory traj =
            propagate_spectral(build_generator(fig2), coherent_state(), {t});
        const LiouvilleState s = traj.states.back();
        const double res = quasi_steady_relation(s, fig2);
        CHECK(std::abs(res) < 0.02 * std::abs(s.rho_R));
        CHECK(std::abs(res) < 1e-3 * (fig2.delta / fig2.r()) * std::abs(s.rho_R));
    }
    SUBCASE("p = 0 control is unconstrained") {
        const SystemParams p0 = symmetric_params(1e9, 1e-3, 1e7, 0.0);
        const Trajectory traj =
            propagate_spectral(build_generator(p0), coherent_state(), {1e-7});
        CHECK(std::isfinite(quasi_steady_relation(traj.states.back(), p0)));
    }
}

TEST_CASE("slow-mode scaling across the aligned overdamped regime") {
    const double gamma = 1e9;
    const double nbar = 1e3;
    SUBCASE("p = 1: |Re lambda2| = 0.75 (gamma/nbar) x^2") {
        std::vector<double> lx, ly;
        for (int i = 0; i < 12; ++i) {
            const double x = std::pow(10.0, std::log10(30.0) * i / 11.0);
            const SystemParams params = symmetric_params(gamma, nbar, x * gamma, 1.0);
            const EigenTriple e = eigenvalues_cardano(build_generator(params));
            lx.push_back(std::log(x));
            ly.push_back(std::log(-e.lambda2.real()));
        }
        const oracles::LineFit fit = oracles::fit_line(lx, ly);
        CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.025));
        CHECK(std::exp(fit.intercept) ==
              doctest::Approx(0.75 * gamma / nbar).epsilon(0.07));
    }
    SUBCASE("p = 0.9: every mode is splitting-independent below x = 1") {
        std::array<double, 3> lo{1e300, 1e300, 1e300}, hi{0.0, 0.0, 0.0};
        for (int i = 0; i < 9; ++i) {
            const double x = 1e-2 * std::pow(10.0, 0.25 * i);
            const SystemParams params = symmetric_params(gamma, nbar, x * gamma, 0.9);
            const EigenTriple e = eigenvalues_cardano(build_generator(params));
            const std::array<std::complex<double>, 3> all = e.all();
            for (std::size_t j = 0; j < 3; ++j) {
                lo[j] = std::min(lo[j], std::abs(all[j].real()));
                hi[j] = std::max(hi[j], std::abs(all[j].real()));
            }
        }
        for (std::size_t j = 0; j < 3; ++j) CHECK(hi[j] / lo[j] - 1.0 < 0.01);
    }
}
