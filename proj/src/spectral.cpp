// spectral.cpp — Eigenvalue computation and lifetime predictors.

#include "lambdabloch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lambdabloch/generator.hpp"
#include "lambdabloch/regimes.hpp"

namespace lambdabloch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool counts_as_real(std::complex<double> z) {
    return std::abs(z.imag()) <= kImagTol * std::abs(z);
}

// One real root plus zero or more conjugate pairs, flattened into the shared
// ordering: largest-|Re| real first, the rest by |Re| ascending with pairs
// adjacent (Im >= 0 first).
std::vector<std::complex<double>> order_roots(std::vector<std::complex<double>> roots) {
    std::vector<double> reals;
    std::vector<std::complex<double>> pairs;  // one representative per pair, Im > 0
    for (const auto& z : roots) {
        if (counts_as_real(z)) {
            reals.push_back(z.real());
        } else if (z.imag() > 0.0) {
            pairs.push_back(z);
        }
    }
    // Symmetrize each representative with its mirror root.
    for (auto& rep : pairs) {
        double best = kInf;
        std::complex<double> mirror = std::conj(rep);
        for (const auto& z : roots) {
            if (z.imag() < 0.0 && std::abs(z - std::conj(rep)) < best) {
                best = std::abs(z - std::conj(rep));
                mirror = z;
            }
        }
        rep = 0.5 * (rep + std::conj(mirror));
    }

    std::vector<std::complex<double>> out;
    out.reserve(roots.size());
    if (!reals.empty()) {
        auto it = std::max_element(reals.begin(), reals.end(),
                                   [](double a, double b) { return std::abs(a) < std::abs(b); });
        out.emplace_back(*it, 0.0);
        reals.erase(it);
    }

    struct Unit {
        double abs_re;
        bool is_pair;
        std::complex<double> value;
    };
    std::vector<Unit> units;
    for (double v : reals) units.push_back({std::abs(v), false, {v, 0.0}});
    for (const auto& z : pairs) units.push_back({std::abs(z.real()), true, z});
    std::sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) {
        if (a.abs_re != b.abs_re) return a.abs_re < b.abs_re;
        return a.is_pair < b.is_pair;
    });
    for (const auto& u : units) {
        out.push_back(u.value);
        if (u.is_pair) out.push_back(std::conj(u.value));
    }
    return out;
}

}  // namespace

EigenTriple eigenvalues_cardano(const Generator& gen) {
    if (gen.dim() != 3)
        throw std::invalid_argument("eigenvalues_cardano expects a 3-dim generator");

    // Work on A/s so the cubic invariants stay O(1) even at gamma ~ 1e9.
    const double s = std::max(gen.A.cwiseAbs().maxCoeff(), 1e-300);
    const Eigen::Matrix3d M = gen.A / s;

    const double tr = M.trace();
    const double minors = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0)
                        + M(0, 0) * M(2, 2) - M(0, 2) * M(2, 0)
                        + M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1);
    const double det = M.determinant();

    const double cA = -tr / 3.0;
    const double cB = minors / 3.0 - cA * cA;
    const double cC = -det / 2.0 + cA * cA * cA;
    const double cE = cC - 1.5 * cA * (cB + cA * cA);
    const double cD = cB * cB * cB + cE * cE;

    using cplx = std::complex<double>;
    const cplx sq = std::sqrt(cplx(cD, 0.0));
    const cplx s_plus = cplx(cE, 0.0) + sq;
    const cplx s_minus = cplx(cE, 0.0) - sq;
    const cplx branch = std::abs(s_plus) >= std::abs(s_minus) ? s_plus : s_minus;

    std::vector<cplx> roots(3);
    if (std::abs(branch) < 1e-280) {
        // B and E both vanish: triple root at -A.
        roots.assign(3, cplx(-cA, 0.0));
    } else {
        const cplx T = std::pow(branch, 1.0 / 3.0);
        const cplx omega(-0.5, 0.5 * std::sqrt(3.0));
        const cplx alpha[3] = {1.0, omega * omega, omega};
        const cplx beta[3] = {1.0, omega, omega * omega};
        for (int j = 0; j < 3; ++j)
            roots[j] = -cA + alpha[j] * (cB / T) - beta[j] * T;
    }

    const Regime regime = classify_discriminant(cD, cB, cE);
    EigenTriple triple;
    if (regime == Regime::Underdamped) {
        // One real root plus a conjugate pair; the cube-root arithmetic leaves
        // sub-roundoff imaginary residue on the real root.
        auto real_it = std::min_element(roots.begin(), roots.end(),
                                        [](const cplx& a, const cplx& b) {
                                            return std::abs(a.imag()) < std::abs(b.imag());
                                        });
        triple.lambda1 = cplx(real_it->real(), 0.0);
        std::vector<cplx> rest;
        for (auto it = roots.begin(); it != roots.end(); ++it)
            if (it != real_it) rest.push_back(*it);
        cplx up = rest[0].imag() >= 0.0 ? rest[0] : rest[1];
        cplx down = rest[0].imag() >= 0.0 ? rest[1] : rest[0];
        triple.lambda2 = 0.5 * (up + std::conj(down));
        triple.lambda3 = std::conj(triple.lambda2);
    } else {
        // Real spectrum (or within the critical band): drop imaginary residue.
        std::vector<double> re = {roots[0].real(), roots[1].real(), roots[2].real()};
        std::sort(re.begin(), re.end(),
                  [](double a, double b) { return std::abs(a) > std::abs(b); });
        triple.lambda1 = cplx(re[0], 0.0);
        triple.lambda2 = cplx(re[2], 0.0);
        triple.lambda3 = cplx(re[1], 0.0);
    }
    triple.lambda1 *= s;
    triple.lambda2 *= s;
    triple.lambda3 *= s;
    return triple;
}

std::vector<std::complex<double>> eigenvalues_numeric(const Generator& gen) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(gen.A, false);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("dense eigensolver failed to converge");
    const Eigen::VectorXcd ev = solver.eigenvalues();
    std::vector<std::complex<double>> roots(ev.data(), ev.data() + ev.size());
    return order_roots(std::move(roots));
}

EigenTriple eigen_triple_numeric(const Generator& gen) {
    if (gen.dim() != 3)
        throw std::invalid_argument("eigen_triple_numeric expects a 3-dim generator");
    const auto roots = eigenvalues_numeric(gen);
    return EigenTriple{roots[0], roots[1], roots[2]};
}

double q_function(const SystemParams& params, bool allow_reference) {
    SystemParams at = params;
    if (at.nbar == 0.0) {
        if (!allow_reference)
            throw DivisionByZero("q_function: pumping rate is zero and no reference requested");
        at.nbar = 1e-6;
    }
    const auto triple = eigenvalues_cardano(build_generator(at));
    return -triple.lambda2.real() / at.r();
}

double quasi_steady_lifetime(const SystemParams& params) {
    const RegimeReport rep = discriminant(params);
    if (rep.regime != Regime::Overdamped)
        throw WrongRegime("quasi-steady lifetime requires the overdamped regime (D < 0)");
    if (params.p < 0.995)
        throw WrongRegime("quasi-steady lifetime requires near-aligned dipoles (p >= 0.995)");
    const double r = params.r();
    if (params.delta == 0.0) return kInf;
    return 1.34 * r / (params.delta * params.delta);
}

EffectiveDecoherence effective_decoherence_rate(const SystemParams& params) {
    const double r = params.r();
    const double g = params.gamma();
    EffectiveDecoherence out;
    out.strong_pumping = r >= 10.0 * g;
    if (r == 0.0) {
        out.rate = params.delta == 0.0 ? 0.0 : kInf;
        out.p_c_eff = params.delta == 0.0 ? 1.0 : -kInf;
        return out;
    }
    const double ratio2 = (params.delta / r) * (params.delta / r);
    out.rate = r * (1.0 - params.p + ratio2);
    out.p_c_eff = 1.0 - ratio2;
    return out;
}

double quasi_steady_relation(const LiouvilleState& state, const SystemParams& params) {
    const double r = params.r();
    if (r == 0.0) throw DivisionByZero("quasi_steady_relation: pumping rate is zero");
    return state.rho_I + (params.delta / r) * state.rho_R;
}

}  // namespace lambdabloch
