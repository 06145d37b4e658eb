// model.hpp — Core value types, parameter validation, and state packing for a
// three-level Lambda-system driven by incoherent light.

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lambdabloch {

// Validation failures (bad inputs) derive from std::invalid_argument;
// numerical/runtime failures derive from std::runtime_error.

class NonPhysical : public std::invalid_argument {
public:
    NonPhysical(std::string field, const std::string& reason)
        : std::invalid_argument("non-physical parameter '" + field + "': " + reason),
          field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct BadTrace : std::invalid_argument {
    explicit BadTrace(const std::string& m) : std::invalid_argument(m) {}
};
struct NotPositive : std::invalid_argument {
    explicit NotPositive(const std::string& m) : std::invalid_argument(m) {}
};
struct Asymmetric : std::invalid_argument {
    explicit Asymmetric(const std::string& m) : std::invalid_argument(m) {}
};
struct DegenerateP : std::invalid_argument {
    explicit DegenerateP(const std::string& m) : std::invalid_argument(m) {}
};

struct WrongRegime : std::runtime_error {
    explicit WrongRegime(const std::string& m) : std::runtime_error(m) {}
};
struct NearDegenerate : std::runtime_error {
    explicit NearDegenerate(const std::string& m) : std::runtime_error(m) {}
};
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& m) : std::runtime_error(m) {}
};
struct StepFailure : std::runtime_error {
    explicit StepFailure(const std::string& m) : std::runtime_error(m) {}
};
struct SingularGenerator : std::runtime_error {
    explicit SingularGenerator(const std::string& m) : std::runtime_error(m) {}
};
struct NoBoundary : std::runtime_error {
    explicit NoBoundary(const std::string& m) : std::runtime_error(m) {}
};
struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& m) : std::runtime_error(m) {}
};

enum class DriveGeometry { Isotropic, PolarizedX };
enum class Regime { Underdamped, Overdamped, Critical };
enum class Method { Spectral, AdaptiveODE, Analytic };
enum class Reduction { Symmetric3, General4 };

// Pumping by a directed polarized beam is weaker than isotropic pumping at the
// same photon occupation by the solid-angle/polarization factor 16*pi/3.
inline constexpr double kPolarizedAttenuation = 3.0 / (16.0 * std::numbers::pi);

// Positivity slack on exact inputs vs. states that passed through an integrator.
inline constexpr double kStateTolConstruction = 1e-12;
inline constexpr double kStateTolPropagated = 1e-9;

// Physical parameters of one Lambda-system instance. Rates are absolute SI
// units [1/s]; delta is the ground-state splitting [rad/s]; dimensionless
// ratios are computed on demand.
struct SystemParams {
    double gamma1{0.0};
    double gamma2{0.0};
    double nbar{0.0};
    double delta{0.0};
    double p{0.0};
    DriveGeometry geometry{DriveGeometry::Isotropic};

    bool is_symmetric() const noexcept { return gamma1 == gamma2; }

    // Pumping rates derived from the mean photon occupation per drive geometry.
    double r1() const noexcept {
        return geometry == DriveGeometry::Isotropic ? nbar * gamma1
                                                    : kPolarizedAttenuation * nbar * gamma1;
    }
    double r2() const noexcept {
        return geometry == DriveGeometry::Isotropic ? nbar * gamma2
                                                    : kPolarizedAttenuation * nbar * gamma2;
    }

    // Symmetric-case shortcuts; throw on asymmetric decay rates.
    double gamma() const;
    double r() const;
    double delta_over_gamma() const;
};

// Unvalidated parameter record as read from a config or command line.
struct RawParams {
    double gamma1{0.0};
    double gamma2{0.0};
    double nbar{0.0};
    double delta{0.0};
    double p{0.0};
    DriveGeometry geometry{DriveGeometry::Isotropic};
};

// Checks physicality (positive decay rates, nbar >= 0, delta >= 0, |p| <= 1,
// everything finite) and returns the validated record. The polarized geometry
// fixes its interference structure internally and rejects a user-supplied p.
SystemParams validate_params(const RawParams& raw);

// Convenience factory for the symmetric system gamma1 == gamma2 == gamma.
SystemParams symmetric_params(double gamma, double nbar, double delta, double p,
                              DriveGeometry geometry = DriveGeometry::Isotropic);

// Real state vector of the density-matrix components that are actually stored.
// rho_ee is always reconstructed from the trace, never stored.
struct LiouvilleState {
    double rho_g1g1{0.0};
    double rho_g2g2{0.0};
    double rho_R{0.0};
    double rho_I{0.0};

    double rho_ee() const noexcept { return 1.0 - rho_g1g1 - rho_g2g2; }
    std::complex<double> coherence() const noexcept { return {rho_R, rho_I}; }
    double abs_coherence() const noexcept { return std::abs(coherence()); }
};

// Packs populations and the ground-state coherence into a LiouvilleState,
// rejecting inputs that do not form a valid density matrix.
LiouvilleState state_from_density(double rho_g1g1, double rho_g2g2,
                                  std::complex<double> coherence);

// Fully mixed ground manifold (1/2, 1/2, 0).
LiouvilleState mixed_state();

// Equal coherent superposition of the ground states (1/2, 1/2, 1/2 + 0i).
LiouvilleState coherent_state();

// Trace and positivity check with an explicit tolerance (use
// kStateTolConstruction for exact inputs, kStateTolPropagated after an
// integrator).
bool is_physical_state(const LiouvilleState& s, double tol);

// Affine dynamical system dx/dt = A x + d in the Liouville representation.
// Symmetric3 state order: (rho_g1g1, rho_R, rho_I), valid on the symmetric
// subspace rho_g1g1 == rho_g2g2. General4 state order:
// (rho_g1g1, rho_g2g2, rho_R, rho_I).
struct Generator {
    Eigen::MatrixXd A;
    Eigen::VectorXd d;
    Reduction reduction{Reduction::Symmetric3};

    int dim() const noexcept { return static_cast<int>(A.rows()); }
};

// Converts a LiouvilleState to the flat vector of the given reduction.
// Symmetric3 requires rho_g1g1 == rho_g2g2 within kStateTolConstruction.
Eigen::VectorXd pack_state(const LiouvilleState& s, Reduction reduction);

// Inverse of pack_state; Symmetric3 restores rho_g2g2 = rho_g1g1.
LiouvilleState unpack_state(const Eigen::VectorXd& x, Reduction reduction);

// Cubic-discriminant classification of the symmetric 3x3 flow. All
// coefficients are reported in gamma-scaled units: A in gamma, B in gamma^2,
// C and E in gamma^3, D in gamma^6.
struct RegimeReport {
    double A{0.0};
    double B{0.0};
    double C{0.0};
    double E{0.0};
    double D{0.0};
    Regime regime{Regime::Critical};
    // Asymptotic critical lines of the isotropic drive: strong-pumping slope
    // f(p) in Delta/gamma = f(p)*nbar (0 at p == 0), weak-pumping ratio
    // Delta/r = p^2/2. NaN for the polarized geometry, whose critical
    // structure is not parametrized by p.
    double critical_slope_strong{0.0};
    double critical_ratio_weak{0.0};
};

// Time grid plus per-time states produced by one propagation method.
struct Trajectory {
    std::vector<double> times;
    std::vector<LiouvilleState> states;
    Method method{Method::Spectral};
};

const char* to_string(DriveGeometry g) noexcept;
const char* to_string(Regime r) noexcept;
const char* to_string(Method m) noexcept;

}  // namespace lambdabloch
