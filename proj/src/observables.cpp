#include "lambdabloch/observables.hpp"

#include <cmath>
#include <string>

namespace lambdabloch {

namespace {

constexpr double kEigenClipFloor = -1e-9;

double clip_eigenvalue(double w) {
    if (w >= 0.0) {
        return w;
    }
    if (w >= kEigenClipFloor) {
        return 0.0;
    }
    throw NotPositive("density-matrix eigenvalue " + std::to_string(w) +
                      " is below the clipping floor " +
                      std::to_string(kEigenClipFloor));
}

double entropy_term(double w) {
    return w > 0.0 ? -w * std::log(w) : 0.0;
}

}  // namespace

double entropy(const LiouvilleState& state) {
    const double g1 = state.rho_g1g1;
    const double g2 = state.rho_g2g2;
    const double ee = state.rho_ee();
    const double sum = g1 + g2;
    const double diff = g1 - g2;
    const double disc = std::sqrt(diff * diff +
                                  4.0 * (state.rho_R * state.rho_R +
                                         state.rho_I * state.rho_I));
    const double w1 = clip_eigenvalue(ee);
    const double w2 = clip_eigenvalue(0.5 * (sum + disc));
    const double w3 = clip_eigenvalue(0.5 * (sum - disc));
    return entropy_term(w1) + entropy_term(w2) + entropy_term(w3);
}

std::vector<double> entropy_series(const Trajectory& traj) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        out.push_back(entropy(s));
    }
    return out;
}

LiouvilleState steady_state_polarized(const SystemParams& params) {
    if (params.geometry != DriveGeometry::PolarizedX) {
        throw std::invalid_argument(
            "steady_state_polarized: parameters describe an isotropic drive");
    }
    const double g = params.gamma();
    const double r = params.r1();
    const double dl = params.delta;
    if (r == 0.0 && dl == 0.0) {
        throw SingularGenerator(
            "polarized generator with r == 0 and delta == 0 has a degenerate "
            "null space; the stationary state is not unique");
    }
    const double denom = (3.0 * r + 2.0 * g) * dl * dl + 2.0 * r * r * g;
    LiouvilleState s;
    s.rho_g1g1 = ((r + g) * dl * dl + r * r * g) / denom;
    s.rho_g2g2 = s.rho_g1g1;
    s.rho_R = -r * r * g / denom;
    s.rho_I = (r == 0.0) ? 0.0 : -(dl / r) * s.rho_R;
    return s;
}

LiouvilleState steady_state_thermal(const SystemParams& params) {
    const double g = params.gamma();
    const double r = params.r1();
    LiouvilleState s;
    s.rho_g1g1 = (r + g) / (3.0 * r + 2.0 * g);
    s.rho_g2g2 = s.rho_g1g1;
    s.rho_R = 0.0;
    s.rho_I = 0.0;
    return s;
}

ThermalDeviation thermal_deviation(const LiouvilleState& state,
                                   const SystemParams& params) {
    const LiouvilleState ref = steady_state_thermal(params);
    ThermalDeviation dev;
    dev.population_deviation = std::abs(state.rho_g1g1 - ref.rho_g1g1);
    dev.coherence_magnitude = state.abs_coherence();
    return dev;
}

}  // namespace lambdabloch
