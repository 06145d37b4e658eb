// spectral.hpp — Exact and numerical eigenvalues of the Liouville flow,
// the weak-pumping Q interpolation, and coherence-lifetime predictors.

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "lambdabloch/model.hpp"

namespace lambdabloch {

// Eigenvalues of a 3x3 flow, ordered for stable labeling across sweeps:
// lambda1 is the real root of largest |Re| (fast population mode); when the
// spectrum holds a conjugate pair, lambda2 is the member with Im >= 0 and
// lambda3 its conjugate; otherwise the remaining reals sorted by |Re|
// ascending.
struct EigenTriple {
    std::complex<double> lambda1;
    std::complex<double> lambda2;
    std::complex<double> lambda3;

    std::array<std::complex<double>, 3> all() const { return {lambda1, lambda2, lambda3}; }
    std::complex<double> sum() const { return lambda1 + lambda2 + lambda3; }
    std::complex<double> product() const { return lambda1 * lambda2 * lambda3; }
};

// Closed-form roots of the characteristic cubic via Cardano's formula with
// the cube roots of unity, evaluated in complex arithmetic valid in every
// regime. When the discriminant says the spectrum is real, sub-roundoff
// imaginary residue from the complex cube root is removed.
EigenTriple eigenvalues_cardano(const Generator& gen);

// Dense nonsymmetric eigensolve (oracle path), any dimension, same ordering
// convention extended: first the real root of largest |Re|, then the rest by
// |Re| ascending with conjugate pairs adjacent (Im >= 0 first).
std::vector<std::complex<double>> eigenvalues_numeric(const Generator& gen);

// 3x3 convenience wrapper around eigenvalues_numeric.
EigenTriple eigen_triple_numeric(const Generator& gen);

// Relative threshold on |Im lambda| below which a numerically computed root
// counts as real.
inline constexpr double kImagTol = 1e-8;

// Weak-pumping decoherence ratio Q = -Re(lambda2)/r in [1/2, 1], evaluated
// from the exact eigenvalues at the given nbar. Q is a weak-pumping limit
// ratio and is nbar-insensitive below 1e-3, so nbar == 0 falls back to the
// reference occupation 1e-6 unless allow_reference is false.
double q_function(const SystemParams& params, bool allow_reference = true);

// Lifetime of the coherent quasi-steady state in the overdamped p ~ 1 regime:
// tau_c = 1.34 r / Delta^2. Requires D < 0 and p >= 0.995.
double quasi_steady_lifetime(const SystemParams& params);

// Rate model r (1 - p + Delta^2/r^2) for the overall decoherence in strong
// pumping, and the alignment threshold p_c^eff = 1 - Delta^2/r^2 above which
// the interference contribution dominates. strong_pumping flags r >= 10 gamma,
// the regime the model is built for; the rate is computed either way.
struct EffectiveDecoherence {
    double rate{0.0};
    double p_c_eff{0.0};
    bool strong_pumping{false};
};

EffectiveDecoherence effective_decoherence_rate(const SystemParams& params);

// Residual rho_I + (Delta/r) rho_R of the quasi-steady-state relation; small
// values certify that the state sits on the slow manifold.
double quasi_steady_relation(const LiouvilleState& state, const SystemParams& params);

}  // namespace lambdabloch
