#include "lambdabloch/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "lambdabloch/generator.hpp"
#include "lambdabloch/spectral.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lambdabloch {

namespace {

constexpr int kBisectionSteps = 40;

double axis_value_at(const Axis& axis, std::size_t k) {
    if (axis.count == 1) {
        return axis.min;
    }
    const double f = static_cast<double>(k) / static_cast<double>(axis.count - 1);
    if (axis.scale == AxisScale::Log) {
        return axis.min * std::pow(axis.max / axis.min, f);
    }
    return axis.min + f * (axis.max - axis.min);
}

void validate_axis(const Axis& axis, const char* label) {
    if (axis.count < 1) {
        throw std::invalid_argument(std::string(label) +
                                    ": axis needs at least one point");
    }
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
        throw std::invalid_argument(std::string(label) +
                                    ": axis bounds must be finite");
    }
    if (axis.count >= 2 && !(axis.min < axis.max)) {
        throw std::invalid_argument(std::string(label) +
                                    ": axis needs min < max");
    }
    if (axis.scale == AxisScale::Log && !(axis.min > 0.0)) {
        throw std::invalid_argument(std::string(label) +
                                    ": log axis needs min > 0");
    }
    switch (axis.name) {
        case AxisName::Nbar:
            if (axis.min < 0.0) {
                throw NonPhysical("nbar", "occupation axis must be nonnegative");
            }
            break;
        case AxisName::DeltaOverGamma:
            if (axis.min < 0.0) {
                throw NonPhysical("delta", "splitting axis must be nonnegative");
            }
            break;
        case AxisName::P:
            if (axis.min < -1.0 || axis.max > 1.0) {
                throw NonPhysical("p", "alignment axis must stay within [-1, 1]");
            }
            break;
    }
}

struct NodeValues {
    double nbar;
    double x;   // delta / gamma
    double p;
};

NodeValues resolve_node(const GridSpec& spec, double v1, double v2) {
    NodeValues v{spec.nbar, spec.delta_over_gamma, spec.p};
    const auto assign = [&v](AxisName name, double value) {
        switch (name) {
            case AxisName::Nbar: v.nbar = value; break;
            case AxisName::DeltaOverGamma: v.x = value; break;
            case AxisName::P: v.p = value; break;
        }
    };
    assign(spec.axis1.name, v1);
    assign(spec.axis2.name, v2);
    return v;
}

SystemParams node_params(const GridSpec& spec, double v1, double v2) {
    const NodeValues v = resolve_node(spec, v1, v2);
    return symmetric_params(spec.gamma, v.nbar, v.x * spec.gamma, v.p,
                            spec.geometry);
}

RegimeNode evaluate_node(const GridSpec& spec, double v1, double v2) {
    const SystemParams params = node_params(spec, v1, v2);
    const RegimeReport report = discriminant(params);
    const Generator gen = build_generator(params);
    const EigenTriple roots = eigenvalues_cardano(gen);
    RegimeNode node;
    node.discriminant = report.D;
    node.regime = report.regime;
    node.re_lambda2 = roots.lambda2.real();
    return node;
}

double node_discriminant(const GridSpec& spec, double v1, double v2) {
    return discriminant(node_params(spec, v1, v2)).D;
}

int resolve_workers(int workers) {
    return workers > 0 ? workers : default_workers();
}

}  // namespace

std::vector<double> axis_values(const Axis& axis) {
    std::vector<double> out(axis.count);
    for (std::size_t k = 0; k < axis.count; ++k) {
        out[k] = axis_value_at(axis, k);
    }
    return out;
}

void validate_grid(const GridSpec& spec) {
    validate_axis(spec.axis1, "axis1");
    validate_axis(spec.axis2, "axis2");
    if (spec.axis1.name == spec.axis2.name) {
        throw std::invalid_argument("grid axes must sweep distinct parameters");
    }
    if (!(spec.gamma > 0.0) || !std::isfinite(spec.gamma)) {
        throw NonPhysical("gamma", "decay rate must be positive and finite");
    }
    if (spec.nbar < 0.0 || !std::isfinite(spec.nbar)) {
        throw NonPhysical("nbar", "occupation must be nonnegative and finite");
    }
    if (spec.delta_over_gamma < 0.0 || !std::isfinite(spec.delta_over_gamma)) {
        throw NonPhysical("delta", "splitting must be nonnegative and finite");
    }
    if (std::abs(spec.p) > 1.0 || !std::isfinite(spec.p)) {
        throw NonPhysical("p", "alignment must stay within [-1, 1]");
    }
    if (spec.geometry == DriveGeometry::PolarizedX) {
        if (spec.axis1.name == AxisName::P || spec.axis2.name == AxisName::P) {
            throw NonPhysical("p",
                              "polarized drive fixes the interference structure "
                              "internally; the alignment cannot be swept");
        }
        if (spec.p != 0.0) {
            throw NonPhysical("p",
                              "polarized drive fixes the interference structure "
                              "internally; leave p unset");
        }
    }
}

int default_workers() {
    if (const char* env = std::getenv("LAMBDA_BLOCH_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) {
            return static_cast<int>(n);
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

RegimeMap map_regimes(const GridSpec& spec, int workers) {
    validate_grid(spec);
    const std::vector<double> vals1 = axis_values(spec.axis1);
    const std::vector<double> vals2 = axis_values(spec.axis2);
    RegimeMap map;
    map.count1 = vals1.size();
    map.count2 = vals2.size();
    map.nodes.resize(map.count1 * map.count2);
    const int n1 = static_cast<int>(map.count1);
    const int nthreads = resolve_workers(workers);
    (void)nthreads;
#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(static)
#endif
    for (int i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < map.count2; ++j) {
            map.at(static_cast<std::size_t>(i), j) =
                evaluate_node(spec, vals1[static_cast<std::size_t>(i)], vals2[j]);
        }
    }
    return map;
}

RegimeMap map_regimes_serial(const GridSpec& spec) {
    validate_grid(spec);
    const std::vector<double> vals1 = axis_values(spec.axis1);
    const std::vector<double> vals2 = axis_values(spec.axis2);
    RegimeMap map;
    map.count1 = vals1.size();
    map.count2 = vals2.size();
    map.nodes.resize(map.count1 * map.count2);
    for (std::size_t i = 0; i < map.count1; ++i) {
        for (std::size_t j = 0; j < map.count2; ++j) {
            map.at(i, j) = evaluate_node(spec, vals1[i], vals2[j]);
        }
    }
    return map;
}

std::vector<double> lifetime_surface(const GridSpec& spec, int workers) {
    const RegimeMap map = map_regimes(spec, workers);
    std::vector<double> out(map.nodes.size());
    for (std::size_t k = 0; k < map.nodes.size(); ++k) {
        out[k] = -1.0 / map.nodes[k].re_lambda2;
    }
    return out;
}

std::vector<double> lifetime_surface_serial(const GridSpec& spec) {
    const RegimeMap map = map_regimes_serial(spec);
    std::vector<double> out(map.nodes.size());
    for (std::size_t k = 0; k < map.nodes.size(); ++k) {
        out[k] = -1.0 / map.nodes[k].re_lambda2;
    }
    return out;
}

CriticalLineFit fit_critical_line(const GridSpec& spec) {
    validate_grid(spec);
    const std::vector<double> vals1 = axis_values(spec.axis1);
    const std::vector<double> vals2 = axis_values(spec.axis2);
    if (vals2.size() < 2) {
        throw NoBoundary("axis2 has fewer than two points, cannot bracket "
                         "a discriminant sign change");
    }

    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> row(vals2.size());
    for (std::size_t i = 0; i < vals1.size(); ++i) {
        for (std::size_t j = 0; j < vals2.size(); ++j) {
            row[j] = node_discriminant(spec, vals1[i], vals2[j]);
        }
        bool found = false;
        double boundary = 0.0;
        for (std::size_t j = 0; j + 1 < vals2.size() && !found; ++j) {
            if (row[j] == 0.0) {
                boundary = vals2[j];
                found = true;
                break;
            }
            if ((row[j] < 0.0) == (row[j + 1] < 0.0)) {
                continue;
            }
            double lo = vals2[j];
            double hi = vals2[j + 1];
            double flo = row[j];
            for (int it = 0; it < kBisectionSteps; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = node_discriminant(spec, vals1[i], mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            boundary = 0.5 * (lo + hi);
            found = true;
        }
        if (!found && row.back() == 0.0) {
            boundary = vals2.back();
            found = true;
        }
        if (found) {
            xs.push_back(vals1[i]);
            ys.push_back(boundary);
        }
    }

    if (xs.size() < 2) {
        throw NoBoundary("fewer than two grid rows bracket a discriminant "
                         "sign change");
    }

    const std::size_t n = xs.size();
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx == 0.0) {
        throw NoBoundary("boundary points share a single axis1 value, the "
                         "line fit is degenerate");
    }

    CriticalLineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.n_points = n;
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double resid = ys[k] - (fit.slope * xs[k] + fit.intercept);
        ss += resid * resid;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

}  // namespace lambdabloch
