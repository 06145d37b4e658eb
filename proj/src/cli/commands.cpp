#include "commands.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lambdabloch/dynamics.hpp"
#include "lambdabloch/generator.hpp"
#include "lambdabloch/model.hpp"
#include "lambdabloch/observables.hpp"
#include "lambdabloch/regimes.hpp"
#include "lambdabloch/spectral.hpp"
#include "lambdabloch/sweep.hpp"

namespace lambdabloch::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchemaVersion = "1";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string output_stem(const std::string& out) {
    const std::string suffix = ".csv";
    if (out.size() > suffix.size() &&
        out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return out.substr(0, out.size() - suffix.size());
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

json cplx_json(std::complex<double> z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json state_json(const LiouvilleState& s) {
    return json{{"rho_g1g1", s.rho_g1g1}, {"rho_g2g2", s.rho_g2g2},
                {"rho_ee", s.rho_ee()},   {"rho_R", s.rho_R},
                {"rho_I", s.rho_I},       {"abs_coherence", s.abs_coherence()}};
}

json params_json(const SystemParams& p) {
    return json{{"gamma1", p.gamma1}, {"gamma2", p.gamma2},
                {"nbar", p.nbar},     {"delta", p.delta},
                {"p", p.p},           {"geometry", to_string(p.geometry)},
                {"r1", p.r1()},       {"r2", p.r2()}};
}

double finite_or_null_helper(double v, json& out, const char* key) {
    if (std::isfinite(v)) {
        out[key] = v;
    } else {
        out[key] = nullptr;
    }
    return v;
}

json regime_json(const RegimeReport& r) {
    json out{{"A", r.A}, {"B", r.B}, {"C", r.C}, {"E", r.E}, {"D", r.D},
             {"regime", to_string(r.regime)}};
    finite_or_null_helper(r.critical_slope_strong, out, "critical_slope_strong");
    finite_or_null_helper(r.critical_ratio_weak, out, "critical_ratio_weak");
    return out;
}

json eigen_json(const EigenTriple& cardano, const EigenTriple& numeric) {
    return json{
        {"cardano", {cplx_json(cardano.lambda1), cplx_json(cardano.lambda2),
                     cplx_json(cardano.lambda3)}},
        {"numeric", {cplx_json(numeric.lambda1), cplx_json(numeric.lambda2),
                     cplx_json(numeric.lambda3)}}};
}

json derived_json(const SystemParams& params) {
    json out;
    out["Q"] = q_function(params);
    try {
        out["tau_c"] = quasi_steady_lifetime(params);
    } catch (const WrongRegime&) {
        out["tau_c"] = nullptr;
    }
    const EffectiveDecoherence eff = effective_decoherence_rate(params);
    finite_or_null_helper(eff.rate, out, "effective_rate");
    finite_or_null_helper(eff.p_c_eff, out, "p_c_eff");
    out["strong_pumping"] = eff.strong_pumping;
    return out;
}

// ---------------------------------------------------------------------------
// Flag containers and presets

struct ParamFlags {
    std::optional<double> gamma;
    std::optional<double> nbar;
    std::optional<double> delta;
    std::optional<double> delta_over_gamma;
    std::optional<double> p;
    std::optional<std::string> geometry;
    std::optional<std::string> preset;
    std::optional<std::string> config;
};

double parse_config_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (value.empty() || used != value.size()) {
        throw std::invalid_argument("config: value for '" + key +
                                    "' is not a number: '" + value + "'");
    }
    return v;
}

// Flat key=value parameter file; '#' starts a comment. Keys mirror the
// parameter flags, and a flag given on the command line wins over the file.
void apply_config_file(ParamFlags& f) {
    if (!f.config) {
        return;
    }
    std::ifstream in(*f.config);
    if (!in) {
        throw std::invalid_argument("config: cannot open '" + *f.config + "'");
    }
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        const std::size_t b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(ws) - b + 1);
    };
    std::optional<double> file_delta;
    std::optional<double> file_delta_over_gamma;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value: '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "gamma") {
            if (!f.gamma) f.gamma = parse_config_number(key, value);
        } else if (key == "nbar") {
            if (!f.nbar) f.nbar = parse_config_number(key, value);
        } else if (key == "delta") {
            file_delta = parse_config_number(key, value);
        } else if (key == "delta-over-gamma" || key == "delta_over_gamma") {
            file_delta_over_gamma = parse_config_number(key, value);
        } else if (key == "p") {
            if (!f.p) f.p = parse_config_number(key, value);
        } else if (key == "geometry") {
            if (!f.geometry) f.geometry = value;
        } else if (key == "preset") {
            if (!f.preset) f.preset = value;
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    if (file_delta && file_delta_over_gamma) {
        throw std::invalid_argument(
            "config: delta and delta-over-gamma are mutually exclusive");
    }
    // The splitting flags form one group: a command-line flag for either
    // member overrides whichever spelling the file uses.
    if (!f.delta && !f.delta_over_gamma) {
        f.delta = file_delta;
        f.delta_over_gamma = file_delta_over_gamma;
    }
}

struct SimulateFlags {
    std::optional<std::string> methods;
    std::optional<std::string> init;
    std::optional<double> t_max;
    std::optional<int> points;
    std::string time_unit = "s";
    std::string out = "lambdabloch_simulate";
};

struct GridFlags {
    std::optional<std::string> axis1;
    std::optional<std::string> axis2;
    int workers = 0;
    std::string out;
};

struct Preset {
    RawParams params;
    std::string init = "mixed";
    std::string methods = "spectral";
    std::optional<double> t_max;
    std::optional<GridSpec> grid;
};

Preset lookup_preset(const std::string& name) {
    Preset ps;
    if (name == "fig1b") {
        ps.params = {1e9, 1e9, 1.0, 1e9, 1.0, DriveGeometry::Isotropic};
        GridSpec grid;
        grid.axis1 = {AxisName::Nbar, 1e-4, 1e4, 256, AxisScale::Log};
        grid.axis2 = {AxisName::DeltaOverGamma, 1e-4, 1e4, 256, AxisScale::Log};
        grid.gamma = 1e9;
        grid.p = 1.0;
        ps.grid = grid;
        return ps;
    }
    if (name == "fig1c") {
        ps.params = {1e9, 1e9, 1e-3, 1e7, 1.0, DriveGeometry::Isotropic};
        ps.methods = "analytic,ode";
        ps.t_max = 3e-6;   // 3/r at r = nbar*gamma = 1e6
        return ps;
    }
    if (name == "fig1d") {
        ps.params = {1e9, 1e9, 1e-3, 2e7, 1.0, DriveGeometry::Isotropic};
        ps.init = "coherent";
        ps.methods = "analytic,ode";
        ps.t_max = 5e-6;
        return ps;
    }
    if (name == "fig2") {
        ps.params = {1e9, 1e9, 1e3, 1e10, 1.0, DriveGeometry::Isotropic};
        ps.methods = "spectral,ode";
        ps.t_max = 1e-7;   // several quasi-steady lifetimes
        return ps;
    }
    if (name == "fig3b") {
        ps.params = {1e8, 1e8, 1e-3, 1e6, 0.0, DriveGeometry::PolarizedX};
        return ps;
    }
    throw std::invalid_argument("unknown preset '" + name +
                                "' (known: fig1b fig1c fig1d fig2 fig3b)");
}

DriveGeometry parse_geometry(const std::string& s) {
    if (s == "isotropic") return DriveGeometry::Isotropic;
    if (s == "polarized") return DriveGeometry::PolarizedX;
    throw std::invalid_argument("unknown geometry '" + s +
                                "' (use isotropic|polarized)");
}

// Resolution order per field: explicit flag, then preset, then default.
// nbar and delta have no default; a missing one is reported by name.
SystemParams resolve_params(const ParamFlags& f) {
    std::optional<Preset> ps;
    if (f.preset) {
        ps = lookup_preset(*f.preset);
    }
    RawParams raw;
    raw.geometry = f.geometry ? parse_geometry(*f.geometry)
                              : (ps ? ps->params.geometry : DriveGeometry::Isotropic);
    const double gamma = f.gamma ? *f.gamma : (ps ? ps->params.gamma1 : 1e9);
    raw.gamma1 = gamma;
    raw.gamma2 = gamma;
    if (f.nbar) {
        raw.nbar = *f.nbar;
    } else if (ps) {
        raw.nbar = ps->params.nbar;
    } else {
        throw NonPhysical("nbar", "required: pass --nbar or a preset");
    }
    if (f.delta) {
        raw.delta = *f.delta;
    } else if (f.delta_over_gamma) {
        raw.delta = *f.delta_over_gamma * gamma;
    } else if (ps) {
        raw.delta = ps->params.delta;
    } else {
        throw NonPhysical(
            "delta", "required: pass --delta, --delta-over-gamma, or a preset");
    }
    if (f.p) {
        raw.p = *f.p;
    } else if (ps && raw.geometry == DriveGeometry::Isotropic) {
        raw.p = ps->params.p;
    }
    return validate_params(raw);
}

std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "spectral") {
            out.push_back(Method::Spectral);
        } else if (item == "ode") {
            out.push_back(Method::AdaptiveODE);
        } else if (item == "analytic") {
            out.push_back(Method::Analytic);
        } else {
            throw std::invalid_argument("unknown method '" + item +
                                        "' (use spectral|ode|analytic)");
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("--method needs at least one entry");
    }
    return out;
}

AxisName parse_axis_name(const std::string& s) {
    if (s == "nbar") return AxisName::Nbar;
    if (s == "delta-over-gamma" || s == "delta_over_gamma") {
        return AxisName::DeltaOverGamma;
    }
    if (s == "p") return AxisName::P;
    throw std::invalid_argument("unknown axis name '" + s +
                                "' (use nbar|delta-over-gamma|p)");
}

const char* axis_label(AxisName n) {
    switch (n) {
        case AxisName::Nbar: return "nbar";
        case AxisName::DeltaOverGamma: return "delta_over_gamma";
        case AxisName::P: return "p";
    }
    return "?";
}

Axis parse_axis(const std::string& s, const char* flag) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() != 5) {
        throw std::invalid_argument(std::string(flag) +
                                    ": expected name:min:max:count:scale");
    }
    Axis axis;
    axis.name = parse_axis_name(parts[0]);
    try {
        axis.min = std::stod(parts[1]);
        axis.max = std::stod(parts[2]);
        axis.count = static_cast<std::size_t>(std::stoul(parts[3]));
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(flag) +
                                    ": min/max/count must be numeric");
    }
    if (parts[4] == "linear") {
        axis.scale = AxisScale::Linear;
    } else if (parts[4] == "log") {
        axis.scale = AxisScale::Log;
    } else {
        throw std::invalid_argument(std::string(flag) +
                                    ": scale must be linear|log");
    }
    return axis;
}

GridSpec resolve_grid(const ParamFlags& pf, const GridFlags& gf) {
    std::optional<GridSpec> grid;
    if (pf.preset) {
        grid = lookup_preset(*pf.preset).grid;
        if (!grid && !(gf.axis1 && gf.axis2)) {
            throw std::invalid_argument("preset '" + *pf.preset +
                                        "' does not define a grid");
        }
    }
    if (!grid) {
        grid = GridSpec{};
    }
    if (gf.axis1) {
        grid->axis1 = parse_axis(*gf.axis1, "--axis1");
    }
    if (gf.axis2) {
        grid->axis2 = parse_axis(*gf.axis2, "--axis2");
    }
    if (grid->axis1.count == 0 || grid->axis2.count == 0) {
        throw std::invalid_argument(
            "grid axes missing: pass --axis1 and --axis2 or --preset fig1b");
    }
    if (pf.gamma) grid->gamma = *pf.gamma;
    if (pf.nbar) grid->nbar = *pf.nbar;
    if (pf.delta_over_gamma) grid->delta_over_gamma = *pf.delta_over_gamma;
    if (pf.delta) grid->delta_over_gamma = *pf.delta / grid->gamma;
    if (pf.p) grid->p = *pf.p;
    if (pf.geometry) grid->geometry = parse_geometry(*pf.geometry);
    validate_grid(*grid);
    return *grid;
}

json axis_json(const Axis& a) {
    return json{{"name", axis_label(a.name)},
                {"min", a.min},
                {"max", a.max},
                {"count", a.count},
                {"scale", a.scale == AxisScale::Log ? "log" : "linear"}};
}

json grid_json(const GridSpec& g) {
    return json{{"axis1", axis_json(g.axis1)},
                {"axis2", axis_json(g.axis2)},
                {"gamma", g.gamma},
                {"nbar", g.nbar},
                {"delta_over_gamma", g.delta_over_gamma},
                {"p", g.p},
                {"geometry", to_string(g.geometry)}};
}

std::string render_matrix_csv(const GridSpec& grid,
                              const std::vector<double>& vals1,
                              const std::vector<double>& vals2,
                              const std::function<std::string(std::size_t, std::size_t)>& cell) {
    std::string out;
    out += std::string(axis_label(grid.axis1.name)) + "|" +
           axis_label(grid.axis2.name);
    for (double v : vals2) {
        out += "," + fmt17(v);
    }
    out += "\n";
    for (std::size_t i = 0; i < vals1.size(); ++i) {
        out += fmt17(vals1[i]);
        for (std::size_t j = 0; j < vals2.size(); ++j) {
            out += "," + cell(i, j);
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateResolved {
    SystemParams params;
    LiouvilleState x0;
    std::vector<Method> methods;
    std::vector<double> times;
    double time_scale = 1.0;
};

SimulateResolved resolve_simulate(const ParamFlags& pf, const SimulateFlags& sf) {
    SimulateResolved r;
    r.params = resolve_params(pf);
    std::optional<Preset> ps;
    if (pf.preset) {
        ps = lookup_preset(*pf.preset);
    }

    const std::string init = sf.init ? *sf.init : (ps ? ps->init : "mixed");
    if (init == "mixed") {
        r.x0 = mixed_state();
    } else if (init == "coherent") {
        r.x0 = coherent_state();
    } else {
        throw std::invalid_argument("unknown --init '" + init +
                                    "' (use mixed|coherent)");
    }

    r.methods = parse_methods(sf.methods ? *sf.methods
                                         : (ps ? ps->methods : "spectral"));

    const int points = sf.points ? *sf.points : 2000;
    std::optional<double> t_max = sf.t_max;
    if (!t_max && ps) {
        t_max = ps->t_max;
    }
    if (t_max) {
        const double fast = std::max({r.params.gamma1, r.params.gamma2,
                                      r.params.r1(), r.params.r2()});
        r.times = log_time_grid(1e-3 / fast, *t_max, points);
    } else {
        r.times = default_time_grid(r.params, points);
    }

    if (sf.time_unit == "s") {
        r.time_scale = 1.0;
    } else if (sf.time_unit == "inv_r") {
        if (r.params.r1() == 0.0) {
            throw std::invalid_argument(
                "--time-unit inv_r is undefined at nbar = 0");
        }
        r.time_scale = r.params.r1();
    } else if (sf.time_unit == "inv_gamma") {
        r.time_scale = r.params.gamma1;
    } else {
        throw std::invalid_argument("unknown --time-unit '" + sf.time_unit +
                                    "' (use s|inv_r|inv_gamma)");
    }
    return r;
}

Trajectory propagate_one(const SystemParams& params, const LiouvilleState& x0,
                         const std::vector<double>& times, Method method,
                         bool* spectral_fallback) {
    switch (method) {
        case Method::Spectral:
            try {
                return propagate_spectral(build_generator(params), x0, times);
            } catch (const NearDegenerate&) {
                if (spectral_fallback) {
                    *spectral_fallback = true;
                }
                return propagate_ode(build_generator(params), x0, times);
            }
        case Method::AdaptiveODE:
            return propagate_ode(build_generator(params), x0, times);
        case Method::Analytic:
            return analytic_underdamped(params, x0.coherence(), times);
    }
    throw std::logic_error("unreachable method");
}

std::string render_trajectory_csv(const Trajectory& traj, double time_scale) {
    std::string out = "t,rho_g1g1,rho_g2g2,rho_ee,rho_R,rho_I,abs_coherence,entropy\n";
    const std::vector<double> S = entropy_series(traj);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const LiouvilleState& s = traj.states[i];
        out += fmt17(traj.times[i] * time_scale);
        out += "," + fmt17(s.rho_g1g1);
        out += "," + fmt17(s.rho_g2g2);
        out += "," + fmt17(s.rho_ee());
        out += "," + fmt17(s.rho_R);
        out += "," + fmt17(s.rho_I);
        out += "," + fmt17(s.abs_coherence());
        out += "," + fmt17(S[i]);
        out += "\n";
    }
    return out;
}

int cmd_simulate(const ParamFlags& pf, const SimulateFlags& sf) {
    const SimulateResolved r = resolve_simulate(pf, sf);

    bool spectral_fallback = false;
    const Trajectory primary =
        propagate_one(r.params, r.x0, r.times, r.methods.front(), &spectral_fallback);

    json diagnostics{{"spectral_fallback", spectral_fallback}};
    json method_names = json::array();
    for (Method m : r.methods) {
        method_names.push_back(to_string(m));
    }
    diagnostics["methods"] = method_names;
    diagnostics["primary_method"] = to_string(primary.method);
    if (r.methods.size() >= 2) {
        std::vector<Method> methods = r.methods;
        if (spectral_fallback) {
            for (Method& m : methods) {
                if (m == Method::Spectral) {
                    m = Method::AdaptiveODE;
                }
            }
        }
        const MethodComparison cmp = compare_methods(r.params, r.x0, r.times, methods);
        json pairs = json::array();
        double overall = 0.0;
        for (const auto& pr : cmp.pairs) {
            pairs.push_back(json{{"a", to_string(pr.a)},
                                 {"b", to_string(pr.b)},
                                 {"max_abs_dev", pr.max_abs_dev},
                                 {"mean_abs_dev", pr.mean_abs_dev}});
            overall = std::max(overall, pr.max_abs_dev);
        }
        diagnostics["comparison"] = json{{"pairs", pairs}, {"max_abs_dev", overall}};
    }

    const Generator gen = build_generator(r.params);
    const std::string csv_path = output_stem(sf.out) + ".csv";
    const std::string json_path = output_stem(sf.out) + ".json";

    json sidecar{{"schema_version", kSchemaVersion},
                 {"command", "simulate"},
                 {"params", params_json(r.params)},
                 {"initial_state", state_json(r.x0)},
                 {"time_unit", sf.time_unit},
                 {"time_grid", json{{"t0", r.times.front()},
                                    {"t_max", r.times.back()},
                                    {"points", r.times.size()},
                                    {"scale", "log"}}},
                 {"regime", regime_json(discriminant(r.params))},
                 {"eigenvalues", eigen_json(eigenvalues_cardano(gen),
                                            eigen_triple_numeric(gen))},
                 {"derived", derived_json(r.params)},
                 {"diagnostics", diagnostics},
                 {"outputs", json{{"csv", csv_path}, {"json", json_path}}}};

    write_text_file(csv_path, render_trajectory_csv(primary, r.time_scale));
    write_text_file(json_path, sidecar.dump(2) + "\n");
    std::cout << "wrote " << csv_path << " and " << json_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// regimes

int cmd_regimes(const ParamFlags& pf, const GridFlags& gf) {
    const GridSpec grid = resolve_grid(pf, gf);
    const RegimeMap map = map_regimes(grid, gf.workers);
    const std::vector<double> vals1 = axis_values(grid.axis1);
    const std::vector<double> vals2 = axis_values(grid.axis2);

    std::size_t counts[3] = {0, 0, 0};
    for (const RegimeNode& node : map.nodes) {
        counts[static_cast<int>(node.regime)]++;
    }

    json fit_json;
    try {
        const CriticalLineFit fit = fit_critical_line(grid);
        fit_json = json{{"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"residual_rms", fit.residual_rms},
                        {"n_points", fit.n_points}};
    } catch (const NoBoundary& e) {
        fit_json = json{{"error", e.what()}};
    }

    const std::string csv_path = output_stem(gf.out) + ".csv";
    const std::string json_path = output_stem(gf.out) + ".json";
    const std::string csv = render_matrix_csv(
        grid, vals1, vals2, [&map](std::size_t i, std::size_t j) {
            return std::to_string(static_cast<int>(map.at(i, j).regime));
        });

    json sidecar{{"schema_version", kSchemaVersion},
                 {"command", "regimes"},
                 {"grid", grid_json(grid)},
                 {"workers", gf.workers > 0 ? gf.workers : default_workers()},
                 {"regime_codes", json{{"0", "underdamped"},
                                       {"1", "overdamped"},
                                       {"2", "critical"}}},
                 {"counts", json{{"underdamped", counts[0]},
                                 {"overdamped", counts[1]},
                                 {"critical", counts[2]}}},
                 {"critical_line", fit_json},
                 {"outputs", json{{"csv", csv_path}, {"json", json_path}}}};

    write_text_file(csv_path, csv);
    write_text_file(json_path, sidecar.dump(2) + "\n");
    std::cout << "wrote " << csv_path << " and " << json_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// sweep-lifetimes

int cmd_sweep_lifetimes(const ParamFlags& pf, const GridFlags& gf) {
    const GridSpec grid = resolve_grid(pf, gf);
    const std::vector<double> surface = lifetime_surface(grid, gf.workers);
    const std::vector<double> vals1 = axis_values(grid.axis1);
    const std::vector<double> vals2 = axis_values(grid.axis2);

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double v : surface) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    const std::string csv_path = output_stem(gf.out) + ".csv";
    const std::string json_path = output_stem(gf.out) + ".json";
    const std::size_t n2 = vals2.size();
    const std::string csv = render_matrix_csv(
        grid, vals1, vals2, [&surface, n2](std::size_t i, std::size_t j) {
            return fmt17(surface[i * n2 + j]);
        });

    json sidecar{{"schema_version", kSchemaVersion},
                 {"command", "sweep-lifetimes"},
                 {"grid", grid_json(grid)},
                 {"workers", gf.workers > 0 ? gf.workers : default_workers()},
                 {"lifetime_range", json{{"min", lo}, {"max", hi}}},
                 {"outputs", json{{"csv", csv_path}, {"json", json_path}}}};

    write_text_file(csv_path, csv);
    write_text_file(json_path, sidecar.dump(2) + "\n");
    std::cout << "wrote " << csv_path << " and " << json_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// eigen / steady

int emit_record(const json& record, const std::optional<std::string>& out) {
    std::cout << record.dump(2) << "\n";
    if (out) {
        std::string path = *out;
        const std::string suffix = ".json";
        if (path.size() <= suffix.size() ||
            path.compare(path.size() - suffix.size(), suffix.size(), suffix) != 0) {
            path += suffix;
        }
        write_text_file(path, record.dump(2) + "\n");
    }
    return 0;
}

int cmd_eigen(const ParamFlags& pf, const std::optional<std::string>& out) {
    const SystemParams params = resolve_params(pf);
    const Generator gen = build_generator(params);
    json record{{"schema_version", kSchemaVersion},
                {"command", "eigen"},
                {"params", params_json(params)},
                {"regime", regime_json(discriminant(params))},
                {"eigenvalues", eigen_json(eigenvalues_cardano(gen),
                                           eigen_triple_numeric(gen))},
                {"derived", derived_json(params)}};
    return emit_record(record, out);
}

int cmd_steady(const ParamFlags& pf, const std::optional<std::string>& out) {
    const SystemParams params = resolve_params(pf);
    const LiouvilleState analytic =
        params.geometry == DriveGeometry::PolarizedX
            ? steady_state_polarized(params)
            : steady_state_thermal(params);
    const LiouvilleState thermal = steady_state_thermal(params);
    const ThermalDeviation dev = thermal_deviation(analytic, params);

    const Generator gen = build_generator(params);
    const EigenTriple roots = eigenvalues_cardano(gen);
    double slow = std::numeric_limits<double>::infinity();
    for (const auto& lambda : roots.all()) {
        const double re = std::abs(lambda.real());
        if (re > 1e-12 * params.gamma1) {
            slow = std::min(slow, re);
        }
    }
    const double t_final =
        std::isfinite(slow) ? 40.0 / slow : 40.0 / params.gamma1;
    const Trajectory tail =
        propagate_ode(gen, mixed_state(), {0.5 * t_final, t_final});
    const LiouvilleState integrated = tail.states.back();
    const double crosscheck =
        std::max({std::abs(integrated.rho_g1g1 - analytic.rho_g1g1),
                  std::abs(integrated.rho_g2g2 - analytic.rho_g2g2),
                  std::abs(integrated.rho_R - analytic.rho_R),
                  std::abs(integrated.rho_I - analytic.rho_I)});

    json record{{"schema_version", kSchemaVersion},
                {"command", "steady"},
                {"params", params_json(params)},
                {"steady_state", state_json(analytic)},
                {"thermal_reference", state_json(thermal)},
                {"deviation", json{{"population_deviation", dev.population_deviation},
                                   {"coherence_magnitude", dev.coherence_magnitude}}},
                {"integration_crosscheck",
                 json{{"t_final", t_final}, {"max_abs_dev", crosscheck}}},
                {"regime", regime_json(discriminant(params))}};
    return emit_record(record, out);
}

void add_param_flags(CLI::App* sub, ParamFlags& f) {
    sub->add_option("--gamma", f.gamma, "Spontaneous decay rate gamma [1/s]");
    sub->add_option("--nbar", f.nbar, "Mean photon occupation of the drive");
    auto* od = sub->add_option("--delta", f.delta,
                               "Ground-state splitting Delta [rad/s]");
    auto* og = sub->add_option("--delta-over-gamma", f.delta_over_gamma,
                               "Ground-state splitting in units of gamma");
    od->excludes(og);
    og->excludes(od);
    sub->add_option("--p", f.p, "Transition dipole alignment in [-1, 1]");
    sub->add_option("--geometry", f.geometry, "Drive geometry")
        ->check(CLI::IsMember({"isotropic", "polarized"}));
    sub->add_option("--preset", f.preset,
                    "Parameter preset: fig1b|fig1c|fig1d|fig2|fig3b");
    sub->add_option("--config", f.config,
                    "Flat key=value parameter file; flags override");
    bool seedless = false;
    sub->add_flag("--seedless", seedless,
                  "Deterministic mode (default; the pipeline is randomness-free)");
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Three-level Lambda-system dynamics under incoherent driving"};
    app.require_subcommand(1);

    ParamFlags sim_pf;
    SimulateFlags sim_sf;
    CLI::App* sim = app.add_subcommand(
        "simulate", "Propagate the density matrix and write CSV + JSON");
    add_param_flags(sim, sim_pf);
    sim->add_option("--method", sim_sf.methods,
                    "Comma list of spectral|ode|analytic; first is exported");
    sim->add_option("--init", sim_sf.init, "Initial state: mixed|coherent");
    sim->add_option("--t-max", sim_sf.t_max, "Final time [s]");
    sim->add_option("--points", sim_sf.points, "Number of time samples");
    sim->add_option("--time-unit", sim_sf.time_unit,
                    "t column unit: s|inv_r|inv_gamma")
        ->check(CLI::IsMember({"s", "inv_r", "inv_gamma"}));
    sim->add_option("--out", sim_sf.out, "Output basename");

    ParamFlags reg_pf;
    GridFlags reg_gf;
    reg_gf.out = "lambdabloch_regimes";
    CLI::App* reg = app.add_subcommand(
        "regimes", "Map dynamical regimes over a parameter grid");
    add_param_flags(reg, reg_pf);
    reg->add_option("--axis1", reg_gf.axis1, "Row axis as name:min:max:count:scale");
    reg->add_option("--axis2", reg_gf.axis2, "Column axis as name:min:max:count:scale");
    reg->add_option("--workers", reg_gf.workers, "Thread count (0 = auto)");
    reg->add_option("--out", reg_gf.out, "Output basename");

    ParamFlags swp_pf;
    GridFlags swp_gf;
    swp_gf.out = "lambdabloch_lifetimes";
    CLI::App* swp = app.add_subcommand(
        "sweep-lifetimes", "Coherence lifetime surface over a parameter grid");
    add_param_flags(swp, swp_pf);
    swp->add_option("--axis1", swp_gf.axis1, "Row axis as name:min:max:count:scale");
    swp->add_option("--axis2", swp_gf.axis2, "Column axis as name:min:max:count:scale");
    swp->add_option("--workers", swp_gf.workers, "Thread count (0 = auto)");
    swp->add_option("--out", swp_gf.out, "Output basename");

    ParamFlags eig_pf;
    std::optional<std::string> eig_out;
    CLI::App* eig = app.add_subcommand(
        "eigen", "Eigenvalues, regime report, and lifetime predictors");
    add_param_flags(eig, eig_pf);
    eig->add_option("--out", eig_out, "Also write the record to <out>.json");

    ParamFlags std_pf;
    std::optional<std::string> std_out;
    CLI::App* std_sub = app.add_subcommand(
        "steady", "Stationary state, thermal reference, and cross-checks");
    add_param_flags(std_sub, std_pf);
    std_sub->add_option("--out", std_out, "Also write the record to <out>.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            apply_config_file(sim_pf);
            return cmd_simulate(sim_pf, sim_sf);
        }
        if (reg->parsed()) {
            apply_config_file(reg_pf);
            return cmd_regimes(reg_pf, reg_gf);
        }
        if (swp->parsed()) {
            apply_config_file(swp_pf);
            return cmd_sweep_lifetimes(swp_pf, swp_gf);
        }
        if (eig->parsed()) {
            apply_config_file(eig_pf);
            return cmd_eigen(eig_pf, eig_out);
        }
        if (std_sub->parsed()) {
            apply_config_file(std_pf);
            return cmd_steady(std_pf, std_out);
        }
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace lambdabloch::cli
