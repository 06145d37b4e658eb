// regimes.hpp — Cubic-discriminant regime classification and the asymptotic
// critical lines separating oscillatory from purely exponential dynamics.

#pragma once

#include "lambdabloch/model.hpp"

namespace lambdabloch {

// Coefficients of the discriminant as a polynomial in the photon occupation:
// D(nbar) = (gamma^6/2916) * sum_k d_k nbar^k, with d_k functions of
// (p, Delta/gamma) only.
struct DiscriminantCoefficients {
    double d0{0.0}, d1{0.0}, d2{0.0}, d3{0.0}, d4{0.0}, d5{0.0}, d6{0.0};

    // sum_k d_k nbar^k (still carries the 1/2916 gamma-scaled prefactor).
    double polynomial(double nbar) const noexcept;
};

// Regime classification tolerance: |D| <= band * max(|B|^3, E^2) counts as
// Critical. D is a difference of large like-magnitude terms and suffers
// cancellation, so the band is relative to the dominant term.
inline constexpr double kCriticalBand = 1e-9;

Regime classify_discriminant(double D, double B, double E) noexcept;

// Cubic invariants A, B, C, E and discriminant D = B^3 + E^2 of the symmetric
// 3x3 flow, in gamma-scaled units, plus the regime label and the asymptotic
// critical-line values (NaN for the polarized geometry).
RegimeReport discriminant(const SystemParams& params);

// Expansion coefficients d0..d6 of D in powers of nbar.
DiscriminantCoefficients discriminant_coefficients(double p, double delta_over_gamma);

// Strong-pumping critical slope f(p): the regime boundary approaches
// Delta/gamma = f(p) * nbar, where z = f(p)^2 is the real root of the
// depressed cubic z^3 + P z + Q = 0 with P = 16 + 60 p^2 + 27 p^4 and
// Q = -9 p^4 (1 + 3 p^2). Uses the signed real cube root; t2 turns negative
// near |p| = 1.
double critical_slope_strong(double p);

// Weak-pumping critical ratio: the boundary approaches Delta/r = p^2/2.
double critical_ratio_weak(double p) noexcept;

}  // namespace lambdabloch
