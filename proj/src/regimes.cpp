// regimes.cpp — Discriminant computation and critical lines.

#include "lambdabloch/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lambdabloch {

double DiscriminantCoefficients::polynomial(double nbar) const noexcept {
    double acc = d6;
    for (double dk : {d5, d4, d3, d2, d1, d0}) acc = acc * nbar + dk;
    return acc;
}

Regime classify_discriminant(double D, double B, double E) noexcept {
    const double band = kCriticalBand * std::max(std::abs(B * B * B), E * E);
    if (std::abs(D) <= band) return Regime::Critical;
    return D > 0.0 ? Regime::Underdamped : Regime::Overdamped;
}

RegimeReport discriminant(const SystemParams& params) {
    if (!params.is_symmetric())
        throw Asymmetric("discriminant requires gamma1 == gamma2");

    // All rates divided by gamma: keeps D ~ O(1..nbar^6) instead of gamma^6.
    const double rs = params.r() / params.gamma();
    const double x = params.delta_over_gamma();
    const double p = params.p;

    RegimeReport rep;
    if (params.geometry == DriveGeometry::Isotropic) {
        rep.A = (5.0 * rs + 2.0) / 3.0;
        rep.B = (x * x + rs * rs + (2.0 - p * p) * rs * (3.0 * rs + 2.0)) / 3.0
                - rep.A * rep.A;
        rep.C = 0.5 * (3.0 * rs + 2.0) * (x * x + (1.0 - p * p) * rs * rs)
                + rep.A * rep.A * rep.A;
        rep.critical_slope_strong = p == 0.0 ? 0.0 : critical_slope_strong(p);
        rep.critical_ratio_weak = critical_ratio_weak(p);
    } else {
        // Polarized flow: same cubic machinery via the characteristic-polynomial
        // invariants of the scaled coefficient matrix.
        const double tr = -(5.0 * rs + 2.0);
        const double minors = 4.0 * rs * rs + 4.0 * rs + x * x;
        const double det = -((3.0 * rs + 2.0) * x * x + 2.0 * rs * rs);
        rep.A = -tr / 3.0;
        rep.B = minors / 3.0 - rep.A * rep.A;
        rep.C = -det / 2.0 + rep.A * rep.A * rep.A;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rep.critical_slope_strong = nan;
        rep.critical_ratio_weak = nan;
    }
    rep.E = rep.C - 1.5 * rep.A * (rep.B + rep.A * rep.A);
    rep.D = rep.B * rep.B * rep.B + rep.E * rep.E;
    rep.regime = classify_discriminant(rep.D, rep.B, rep.E);
    return rep;
}

DiscriminantCoefficients discriminant_coefficients(double p, double delta_over_gamma) {
    const double x2 = delta_over_gamma * delta_over_gamma;
    const double p2 = p * p;
    const double X = 3.0 * x2 - 4.0;
    const double a = 8.0 + 6.0 * p2;
    const double b = 4.0 + 9.0 * p2;
    const double c0 = 36.0 * x2 + 16.0;
    const double c1 = 36.0 * x2 + 48.0 + 36.0 * p2;
    const double c2 = 48.0 + 90.0 * p2;
    const double c3 = 16.0 + 54.0 * p2;

    DiscriminantCoefficients dc;
    dc.d0 = 4.0 * X * X * X + c0 * c0;
    dc.d1 = -12.0 * a * X * X + 2.0 * c0 * c1;
    dc.d2 = 12.0 * a * a * X - 12.0 * b * X * X + c1 * c1 + 2.0 * c2 * c0;
    dc.d3 = 24.0 * a * b * X - 4.0 * a * a * a + 2.0 * c3 * c0 + 2.0 * c2 * c1;
    dc.d4 = 12.0 * b * b * X - 12.0 * a * a * b + c2 * c2 + 2.0 * c3 * c1;
    dc.d5 = -12.0 * a * b * b + 2.0 * c2 * c3;
    dc.d6 = -4.0 * b * b * b + c3 * c3;
    return dc;
}

double critical_slope_strong(double p) {
    if (p == 0.0)
        throw DegenerateP("critical line undefined at p == 0; the slope tends to 0");
    const double p2 = p * p;
    const double P = 16.0 + 60.0 * p2 + 27.0 * p2 * p2;
    const double Q = -9.0 * p2 * p2 * (1.0 + 3.0 * p2);
    const double sq = std::sqrt(0.25 * Q * Q + P * P * P / 27.0);
    // t2 goes negative as |p| -> 1; std::cbrt is the signed real cube root.
    const double z = std::cbrt(-0.5 * Q + sq) + std::cbrt(-0.5 * Q - sq);
    return std::sqrt(z);
}

double critical_ratio_weak(double p) noexcept { return 0.5 * p * p; }

}  // namespace lambdabloch
