// model.cpp — Parameter validation and state packing.

#include "lambdabloch/model.hpp"

#include <cmath>

namespace lambdabloch {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw NonPhysical(field, "must be finite");
}

}  // namespace

double SystemParams::gamma() const {
    if (!is_symmetric()) throw Asymmetric("gamma() requires gamma1 == gamma2");
    return gamma1;
}

double SystemParams::r() const {
    if (!is_symmetric()) throw Asymmetric("r() requires gamma1 == gamma2");
    return r1();
}

double SystemParams::delta_over_gamma() const { return delta / gamma(); }

SystemParams validate_params(const RawParams& raw) {
    require_finite(raw.gamma1, "gamma1");
    require_finite(raw.gamma2, "gamma2");
    require_finite(raw.nbar, "nbar");
    require_finite(raw.delta, "delta");
    require_finite(raw.p, "p");
    if (raw.gamma1 <= 0.0) throw NonPhysical("gamma1", "decay rate must be > 0");
    if (raw.gamma2 <= 0.0) throw NonPhysical("gamma2", "decay rate must be > 0");
    if (raw.nbar < 0.0) throw NonPhysical("nbar", "occupation must be >= 0");
    if (raw.delta < 0.0) throw NonPhysical("delta", "splitting must be >= 0");
    if (raw.p < -1.0 || raw.p > 1.0) throw NonPhysical("p", "alignment must lie in [-1, 1]");
    if (raw.geometry == DriveGeometry::PolarizedX && raw.p != 0.0)
        throw NonPhysical("p",
                          "polarized drive fixes the interference structure internally; "
                          "leave p unset");

    SystemParams params;
    params.gamma1 = raw.gamma1;
    params.gamma2 = raw.gamma2;
    params.nbar = raw.nbar;
    params.delta = raw.delta;
    params.p = raw.p;
    params.geometry = raw.geometry;
    return params;
}

SystemParams symmetric_params(double gamma, double nbar, double delta, double p,
                              DriveGeometry geometry) {
    RawParams raw;
    raw.gamma1 = gamma;
    raw.gamma2 = gamma;
    raw.nbar = nbar;
    raw.delta = delta;
    raw.p = p;
    raw.geometry = geometry;
    return validate_params(raw);
}

LiouvilleState state_from_density(double rho_g1g1, double rho_g2g2,
                                  std::complex<double> coherence) {
    for (double v : {rho_g1g1, rho_g2g2, coherence.real(), coherence.imag()})
        if (!std::isfinite(v)) throw BadTrace("density entries must be finite");
    if (rho_g1g1 < -kStateTolConstruction || rho_g2g2 < -kStateTolConstruction)
        throw NotPositive("negative ground-state population");
    if (rho_g1g1 + rho_g2g2 > 1.0 + kStateTolConstruction)
        throw BadTrace("ground-state populations exceed the unit trace");
    const double coh2 = std::norm(coherence);
    if (coh2 > rho_g1g1 * rho_g2g2 + kStateTolConstruction)
        throw NotPositive("|coherence|^2 exceeds the population product");
    return LiouvilleState{rho_g1g1, rho_g2g2, coherence.real(), coherence.imag()};
}

LiouvilleState mixed_state() { return LiouvilleState{0.5, 0.5, 0.0, 0.0}; }

LiouvilleState coherent_state() { return LiouvilleState{0.5, 0.5, 0.5, 0.0}; }

bool is_physical_state(const LiouvilleState& s, double tol) {
    if (s.rho_g1g1 < -tol || s.rho_g2g2 < -tol) return false;
    if (s.rho_ee() < -tol || s.rho_ee() > 1.0 + tol) return false;
    if (s.rho_g1g1 + s.rho_g2g2 > 1.0 + tol) return false;
    return std::norm(s.coherence()) <= s.rho_g1g1 * s.rho_g2g2 + tol;
}

Eigen::VectorXd pack_state(const LiouvilleState& s, Reduction reduction) {
    if (reduction == Reduction::Symmetric3) {
        if (std::abs(s.rho_g1g1 - s.rho_g2g2) > kStateTolConstruction)
            throw Asymmetric(
                "symmetric reduction requires equal ground populations; "
                "use the general 4-dim reduction");
        Eigen::VectorXd x(3);
        x << s.rho_g1g1, s.rho_R, s.rho_I;
        return x;
    }
    Eigen::VectorXd x(4);
    x << s.rho_g1g1, s.rho_g2g2, s.rho_R, s.rho_I;
    return x;
}

LiouvilleState unpack_state(const Eigen::VectorXd& x, Reduction reduction) {
    if (reduction == Reduction::Symmetric3) {
        if (x.size() != 3) throw std::invalid_argument("expected a 3-dim state vector");
        return LiouvilleState{x[0], x[0], x[1], x[2]};
    }
    if (x.size() != 4) throw std::invalid_argument("expected a 4-dim state vector");
    return LiouvilleState{x[0], x[1], x[2], x[3]};
}

const char* to_string(DriveGeometry g) noexcept {
    return g == DriveGeometry::Isotropic ? "isotropic" : "polarized";
}

const char* to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Underdamped: return "underdamped";
        case Regime::Overdamped: return "overdamped";
        default: return "critical";
    }
}

const char* to_string(Method m) noexcept {
    switch (m) {
        case Method::Spectral: return "spectral";
        case Method::AdaptiveODE: return "ode";
        default: return "analytic";
    }
}

}  // namespace lambdabloch
