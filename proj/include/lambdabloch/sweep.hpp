#pragma once

#include <cstddef>
#include <vector>

#include "lambdabloch/model.hpp"
#include "lambdabloch/regimes.hpp"

namespace lambdabloch {

enum class AxisName { Nbar, DeltaOverGamma, P };

enum class AxisScale { Linear, Log };

struct Axis {
    AxisName name = AxisName::Nbar;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
    AxisScale scale = AxisScale::Linear;
};

// Two swept parameters plus fixed values for whatever is not swept.
// delta is specified through delta_over_gamma so grids stay meaningful
// across different absolute rate scales.
struct GridSpec {
    Axis axis1;
    Axis axis2;
    double gamma = 1.0;
    double nbar = 0.0;
    double delta_over_gamma = 0.0;
    double p = 0.0;
    DriveGeometry geometry = DriveGeometry::Isotropic;
};

struct RegimeNode {
    double discriminant = 0.0;   // gamma-scaled D
    Regime regime = Regime::Underdamped;
    double re_lambda2 = 0.0;     // slowest decay rate, raw units
};

struct RegimeMap {
    std::size_t count1 = 0;
    std::size_t count2 = 0;
    std::vector<RegimeNode> nodes;   // row-major, axis1 indexes rows

    const RegimeNode& at(std::size_t i, std::size_t j) const {
        return nodes[i * count2 + j];
    }
    RegimeNode& at(std::size_t i, std::size_t j) {
        return nodes[i * count2 + j];
    }
};

struct CriticalLineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t n_points = 0;
};

// Grid coordinates of one axis, length axis.count. A single-point axis
// yields {min}; log spacing requires min > 0.
std::vector<double> axis_values(const Axis& axis);

// Throws if the grid would produce an invalid parameter set anywhere.
void validate_grid(const GridSpec& spec);

// Worker count used when a caller passes workers == 0: the
// LAMBDA_BLOCH_WORKERS environment variable if set to a positive
// integer, otherwise the OpenMP thread limit (1 without OpenMP).
int default_workers();

// Regime classification over the full grid. The parallel kernel splits
// rows across OpenMP threads; every node is evaluated independently, so
// the result is bit-identical to the serial reference.
RegimeMap map_regimes(const GridSpec& spec, int workers = 0);
RegimeMap map_regimes_serial(const GridSpec& spec);

// Coherence lifetime -1/Re(lambda_2) at every node, row-major.
std::vector<double> lifetime_surface(const GridSpec& spec, int workers = 0);
std::vector<double> lifetime_surface_serial(const GridSpec& spec);

// Locates the regime boundary by bisecting the discriminant sign change
// along axis2 within each axis1 row, then least-squares fits
//   axis2_boundary = slope * axis1 + intercept
// on the raw axis coordinates. Throws NoBoundary when fewer than two
// rows bracket a sign change.
CriticalLineFit fit_critical_line(const GridSpec& spec);

}  // namespace lambdabloch
