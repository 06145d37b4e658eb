// dynamics.cpp — Spectral, adaptive-ODE, and closed-form propagation.

#include "lambdabloch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "lambdabloch/generator.hpp"
#include "lambdabloch/regimes.hpp"
#include "lambdabloch/spectral.hpp"

namespace lambdabloch {

namespace {

void validate_times(const std::vector<double>& times) {
    if (times.empty()) throw std::invalid_argument("time grid is empty");
    double prev = -std::numeric_limits<double>::infinity();
    for (double t : times) {
        if (!std::isfinite(t) || t < 0.0)
            throw std::invalid_argument("times must be finite and >= 0");
        if (t <= prev) throw std::invalid_argument("times must be strictly increasing");
        prev = t;
    }
}

// (e^{z}-1)/lambda with a series fallback where the direct form cancels.
std::complex<double> phi(std::complex<double> lambda, double t) {
    const std::complex<double> z = lambda * t;
    if (std::abs(z) < 1e-4)
        return t * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
    return (std::exp(z) - 1.0) / lambda;
}

}  // namespace

Trajectory propagate_spectral(const Generator& gen, const LiouvilleState& x0,
                              const std::vector<double>& times) {
    validate_times(times);
    const int n = gen.dim();
    const Eigen::VectorXd x0v = pack_state(x0, gen.reduction);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(gen.A, true);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("eigendecomposition failed");
    const Eigen::VectorXcd lambda = solver.eigenvalues();
    const Eigen::MatrixXcd V = solver.eigenvectors();

    const double sep_floor = 1e-10 * gen.A.norm();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(lambda[i] - lambda[j]) <= sep_floor)
                throw NearDegenerate("eigenvalue separation below 1e-10 * ||A||");

    const Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);
    const Eigen::VectorXcd y0 = lu.solve(x0v.cast<std::complex<double>>());
    const Eigen::VectorXcd yd = lu.solve(gen.d.cast<std::complex<double>>());

    Trajectory traj;
    traj.method = Method::Spectral;
    traj.times = times;
    traj.states.reserve(times.size());
    Eigen::VectorXcd w(n);
    for (double t : times) {
        for (int i = 0; i < n; ++i)
            w[i] = std::exp(lambda[i] * t) * y0[i] + phi(lambda[i], t) * yd[i];
        const Eigen::VectorXd x = (V * w).real();
        traj.states.push_back(unpack_state(x, gen.reduction));
    }
    return traj;
}

Trajectory propagate_ode(const Generator& gen, const LiouvilleState& x0,
                         const std::vector<double>& times, double rtol, double atol) {
    validate_times(times);
    namespace odeint = boost::numeric::odeint;
    using state_type = std::vector<double>;

    const int n = gen.dim();
    const Eigen::MatrixXd& A = gen.A;
    const Eigen::VectorXd& d = gen.d;
    auto system = [&](const state_type& x, state_type& dxdt, double) {
        Eigen::Map<const Eigen::VectorXd> xm(x.data(), n);
        Eigen::Map<Eigen::VectorXd> dm(dxdt.data(), n);
        dm = A * xm + d;
    };

    std::vector<double> grid = times;
    const bool synthetic_start = grid.front() > 0.0;
    if (synthetic_start) grid.insert(grid.begin(), 0.0);

    const Eigen::VectorXd x0v = pack_state(x0, gen.reduction);
    state_type x(x0v.data(), x0v.data() + n);

    std::vector<state_type> samples;
    samples.reserve(grid.size());
    auto observer = [&](const state_type& xi, double) { samples.push_back(xi); };

    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    const double dt0 = std::min(0.1 / scale, grid.back() > 0.0 ? grid.back() : 0.1 / scale);
    // Dense output decouples the step size from the observation grid; plain
    // controlled steppers mis-track time when grid spacings shrink far below
    // the natural step (observations then lag the true state).
    auto stepper = odeint::make_dense_output(atol, rtol,
                                             odeint::runge_kutta_dopri5<state_type>());
    try {
        odeint::integrate_times(stepper, system, x, grid.begin(), grid.end(),
                                dt0 > 0.0 ? dt0 : 1e-3, observer);
    } catch (const std::overflow_error& e) {
        throw StepFailure(std::string("adaptive step size underflow: ") + e.what());
    }

    Trajectory traj;
    traj.method = Method::AdaptiveODE;
    traj.times = times;
    traj.states.reserve(times.size());
    for (std::size_t i = synthetic_start ? 1 : 0; i < samples.size(); ++i) {
        Eigen::Map<const Eigen::VectorXd> xv(samples[i].data(), n);
        traj.states.push_back(unpack_state(xv, gen.reduction));
    }
    return traj;
}

Trajectory analytic_underdamped(const SystemParams& params,
                                std::complex<double> rho0_coherence,
                                const std::vector<double>& times) {
    validate_times(times);
    if (params.geometry != DriveGeometry::Isotropic)
        throw std::invalid_argument(
            "the closed-form solution covers the isotropic interference structure");
    if (!params.is_symmetric())
        throw Asymmetric("analytic_underdamped requires gamma1 == gamma2");
    if (discriminant(params).regime != Regime::Underdamped)
        throw WrongRegime("closed-form coherences require the underdamped regime (D > 0)");

    const double r = params.r();
    const double g = params.gamma();
    const double dl = params.delta;
    const double p = params.p;
    const double r0 = rho0_coherence.real();
    const double i0 = rho0_coherence.imag();

    const double fast = 3.0 * r + 2.0 * g;
    const double two_rg = 2.0 * (r + g);
    const double pref = p * r / (2.0 * (two_rg * two_rg + dl * dl));
    const double r_osc = r * q_function(params);

    Trajectory traj;
    traj.method = Method::Analytic;
    traj.times = times;
    traj.states.reserve(times.size());
    for (double t : times) {
        const double c = std::cos(dl * t);
        const double s = std::sin(dl * t);
        const double env = std::exp(-r_osc * t);
        const double pump = std::exp(-fast * t);
        const double rho_r = (r0 * c + i0 * s) * env
                           + pref * (two_rg * pump - (two_rg * c + dl * s) * env);
        const double rho_i = (-r0 * s + i0 * c) * env
                           + pref * (dl * pump + (two_rg * s - dl * c) * env);
        const double pop = (r + g + 0.5 * r * pump) / fast;
        traj.states.push_back(LiouvilleState{pop, pop, rho_r, rho_i});
    }
    return traj;
}

std::vector<double> population_underdamped(const SystemParams& params,
                                           const std::vector<double>& times) {
    validate_times(times);
    if (!params.is_symmetric())
        throw Asymmetric("population_underdamped requires gamma1 == gamma2");
    if (discriminant(params).regime != Regime::Underdamped)
        throw WrongRegime("closed-form populations require the underdamped regime (D > 0)");
    const double r = params.r();
    const double g = params.gamma();
    const double fast = 3.0 * r + 2.0 * g;
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times)
        out.push_back((r + g + 0.5 * r * std::exp(-fast * t)) / fast);
    return out;
}

MethodComparison compare_methods(const SystemParams& params, const LiouvilleState& x0,
                                 const std::vector<double>& times,
                                 const std::vector<Method>& methods) {
    validate_times(times);
    if (methods.size() < 2)
        throw std::invalid_argument("compare_methods needs at least two methods");

    const bool symmetric_state =
        std::abs(x0.rho_g1g1 - x0.rho_g2g2) <= kStateTolConstruction;
    Generator gen;
    if (params.geometry == DriveGeometry::PolarizedX || (params.is_symmetric() && symmetric_state))
        gen = build_generator(params);
    else
        gen = build_general_isotropic(params);

    std::vector<Trajectory> trajs;
    for (Method m : methods) {
        switch (m) {
            case Method::Spectral:
                trajs.push_back(propagate_spectral(gen, x0, times));
                break;
            case Method::AdaptiveODE:
                trajs.push_back(propagate_ode(gen, x0, times));
                break;
            case Method::Analytic:
                if (std::abs(x0.rho_g1g1 - 0.5) > kStateTolConstruction ||
                    std::abs(x0.rho_g2g2 - 0.5) > kStateTolConstruction)
                    throw std::invalid_argument(
                        "the closed form assumes populations starting at 1/2 each");
                trajs.push_back(analytic_underdamped(params, x0.coherence(), times));
                break;
        }
    }

    auto component_dev = [](const LiouvilleState& a, const LiouvilleState& b) {
        return std::max({std::abs(a.rho_g1g1 - b.rho_g1g1), std::abs(a.rho_g2g2 - b.rho_g2g2),
                         std::abs(a.rho_R - b.rho_R), std::abs(a.rho_I - b.rho_I)});
    };

    MethodComparison cmp;
    cmp.per_time_max.assign(times.size(), 0.0);
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        for (std::size_t j = i + 1; j < trajs.size(); ++j) {
            MethodComparison::Pair pair;
            pair.a = methods[i];
            pair.b = methods[j];
            double sum = 0.0;
            for (std::size_t k = 0; k < times.size(); ++k) {
                const double dev = component_dev(trajs[i].states[k], trajs[j].states[k]);
                pair.max_abs_dev = std::max(pair.max_abs_dev, dev);
                sum += dev;
                cmp.per_time_max[k] = std::max(cmp.per_time_max[k], dev);
            }
            pair.mean_abs_dev = sum / static_cast<double>(times.size());
            cmp.pairs.push_back(pair);
        }
    }
    return cmp;
}

std::vector<double> default_time_grid(const SystemParams& params, int points) {
    const double r = params.r();
    const double g = params.gamma();
    const double t0 = 1e-3 / std::max(r, g);

    const auto triple = eigenvalues_cardano(build_generator(params));
    double slow = std::abs(triple.lambda2.real());
    if (slow <= 0.0) slow = std::max(std::abs(triple.lambda1.real()), g);
    const double t1 = 5.0 / slow;
    return log_time_grid(t0, std::max(t1, t0 * 10.0), points);
}

std::vector<double> log_time_grid(double t0, double t1, int n) {
    if (!(t0 > 0.0) || !(t1 > t0)) throw std::invalid_argument("need 0 < t0 < t1");
    if (n < 2) throw std::invalid_argument("need at least two grid points");
    std::vector<double> out(n);
    const double step = std::log(t1 / t0) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = t0 * std::exp(step * i);
    out.back() = t1;
    return out;
}

}  // namespace lambdabloch
