// dynamics.hpp — Time propagation of the affine Liouville flow by three
// interchangeable methods, plus agreement diagnostics between them.

#pragma once

#include <complex>
#include <vector>

#include "lambdabloch/model.hpp"

namespace lambdabloch {

// Exact propagation through the eigendecomposition of A:
//   x(t) = V exp(L t) V^-1 x0 + V phi(L, t) V^-1 d,  phi(l, t) = (e^{lt}-1)/l.
// x0 is the state at t = 0; times are absolute sample points (>= 0, strictly
// increasing). Throws NearDegenerate when the eigenvalue separation drops
// below 1e-10 * ||A||_F; use propagate_ode then.
Trajectory propagate_spectral(const Generator& gen, const LiouvilleState& x0,
                              const std::vector<double>& times);

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) integration of
// dx/dt = A x + d from t = 0, sampled at the given times.
Trajectory propagate_ode(const Generator& gen, const LiouvilleState& x0,
                         const std::vector<double>& times, double rtol = 1e-10,
                         double atol = 1e-13);

// Closed-form underdamped coherences for the symmetric isotropic system with
// populations starting at 1/2 each and ground-state coherence rho0_coherence.
// The pump-following term decays at the population rate 3r + 2*gamma; the
// oscillatory terms decay at r*Q with the exact Q of q_function. Populations
// follow the closed form of population_underdamped (coherence feedback on the
// populations is beyond the closed form's order). Throws WrongRegime outside
// the underdamped regime.
Trajectory analytic_underdamped(const SystemParams& params,
                                std::complex<double> rho0_coherence,
                                const std::vector<double>& times);

// Closed-form population relaxation from the mixed start:
//   rho_g1g1(t) = [r + gamma + (r/2) e^{-(3r+2gamma)t}] / (3r + 2gamma).
std::vector<double> population_underdamped(const SystemParams& params,
                                           const std::vector<double>& times);

// Pairwise deviation diagnostics between propagation methods on a shared grid.
struct MethodComparison {
    struct Pair {
        Method a;
        Method b;
        double max_abs_dev{0.0};
        double mean_abs_dev{0.0};
    };
    std::vector<Pair> pairs;
    // Per-time maximum deviation over all pairs and state components.
    std::vector<double> per_time_max;
};

MethodComparison compare_methods(const SystemParams& params, const LiouvilleState& x0,
                                 const std::vector<double>& times,
                                 const std::vector<Method>& methods);

// 2000 logarithmically spaced samples from 1e-3/max(r, gamma) out to five
// slow-mode lifetimes; resolves both the fast population transient and the
// slow coherence decay.
std::vector<double> default_time_grid(const SystemParams& params, int points = 2000);

// Geometric grid of n points on [t0, t1], t0 > 0.
std::vector<double> log_time_grid(double t0, double t1, int n);

}  // namespace lambdabloch
