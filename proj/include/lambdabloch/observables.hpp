#pragma once

#include <vector>

#include "lambdabloch/model.hpp"

namespace lambdabloch {

// Von Neumann entropy -sum_i w_i ln w_i of the 3x3 density matrix
// reconstructed from `state`. Eigenvalues in [-1e-9, 0) are clipped to
// zero before taking logarithms; anything below that throws NotPositive.
double entropy(const LiouvilleState& state);

// Entropy evaluated at every sample of a trajectory.
std::vector<double> entropy_series(const Trajectory& traj);

// Exact stationary state of the polarized three-level generator.
// Throws SingularGenerator when r == 0 and delta == 0 (the generator is
// rank deficient and the stationary state is not unique).
LiouvilleState steady_state_polarized(const SystemParams& params);

// Coherence-free thermal stationary state rho_gg = (r+gamma)/(3r+2gamma)
// shared by both ground levels. Requires symmetric rates.
LiouvilleState steady_state_thermal(const SystemParams& params);

struct ThermalDeviation {
    double population_deviation = 0.0;   // |rho_g1g1 - rho_gg^thermal|
    double coherence_magnitude = 0.0;    // |rho_g1g2|
};

// Distance of `state` from the coherence-free thermal stationary state.
ThermalDeviation thermal_deviation(const LiouvilleState& state,
                                   const SystemParams& params);

}  // namespace lambdabloch
