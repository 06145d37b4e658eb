// generator.cpp — Bloch-Redfield generator assembly.

#include "lambdabloch/generator.hpp"

#include <cmath>

namespace lambdabloch {

namespace {

void require_symmetric(const SystemParams& params, const char* who) {
    if (!params.is_symmetric())
        throw Asymmetric(std::string(who) + " requires gamma1 == gamma2");
}

}  // namespace

Generator build_symmetric_isotropic(const SystemParams& params) {
    require_symmetric(params, "build_symmetric_isotropic");
    if (params.geometry != DriveGeometry::Isotropic)
        throw std::invalid_argument("build_symmetric_isotropic requires the isotropic geometry");
    const double g = params.gamma();
    const double r = params.r();
    const double dl = params.delta;
    const double p = params.p;

    Generator gen;
    gen.reduction = Reduction::Symmetric3;
    gen.A.resize(3, 3);
    gen.A << -(3.0 * r + 2.0 * g), -p * r, 0.0,
             -p * (3.0 * r + 2.0 * g), -r, dl,
             0.0, -dl, -r;
    gen.d.resize(3);
    gen.d << r + g, p * (r + g), 0.0;
    return gen;
}

Generator build_general_isotropic(const SystemParams& params) {
    if (params.geometry != DriveGeometry::Isotropic)
        throw std::invalid_argument("build_general_isotropic requires the isotropic geometry");
    const double g1 = params.gamma1, g2 = params.gamma2;
    const double r1 = params.r1(), r2 = params.r2();
    const double dl = params.delta;
    const double p = params.p;

    // Pumping and spontaneous cross-couplings; both scale with the dipole
    // alignment p, but only the pumping one feeds the populations.
    const double s = std::sqrt(r1 * r2);
    const double k = p * (s + std::sqrt(g1 * g2));
    const double rbar = 0.5 * (r1 + r2);

    Generator gen;
    gen.reduction = Reduction::General4;
    gen.A.resize(4, 4);
    gen.A << -(2.0 * r1 + g1), -(r1 + g1), -p * s, 0.0,
             -(r2 + g2), -(2.0 * r2 + g2), -p * s, 0.0,
             -(k + 0.5 * p * s), -(k + 0.5 * p * s), -rbar, dl,
             0.0, 0.0, -dl, -rbar;
    gen.d.resize(4);
    gen.d << r1 + g1, r2 + g2, k, 0.0;
    return gen;
}

Generator build_symmetric_polarized(const SystemParams& params) {
    require_symmetric(params, "build_symmetric_polarized");
    if (params.geometry != DriveGeometry::PolarizedX)
        throw std::invalid_argument("build_symmetric_polarized requires the polarized geometry");
    const double g = params.gamma();
    const double r = params.r();
    const double dl = params.delta;

    Generator gen;
    gen.reduction = Reduction::Symmetric3;
    gen.A.resize(3, 3);
    gen.A << -(3.0 * r + 2.0 * g), -r, 0.0,
             -3.0 * r, -r, dl,
             0.0, -dl, -r;
    gen.d.resize(3);
    gen.d << r + g, r, 0.0;
    return gen;
}

Generator build_generator(const SystemParams& params) {
    if (params.geometry == DriveGeometry::PolarizedX) return build_symmetric_polarized(params);
    if (params.is_symmetric()) return build_symmetric_isotropic(params);
    return build_general_isotropic(params);
}

Generator restrict_to_symmetric(const Generator& general) {
    if (general.reduction != Reduction::General4 || general.dim() != 4)
        throw std::invalid_argument("restrict_to_symmetric expects a 4-dim generator");

    // Embed (x1, xR, xI) -> (x1, x1, xR, xI) and read back rows (1, R, I).
    Eigen::MatrixXd embed(4, 3);
    embed << 1, 0, 0,
             1, 0, 0,
             0, 1, 0,
             0, 0, 1;
    Eigen::MatrixXd project(3, 4);
    project << 1, 0, 0, 0,
               0, 0, 1, 0,
               0, 0, 0, 1;

    Generator gen;
    gen.reduction = Reduction::Symmetric3;
    gen.A = project * general.A * embed;
    gen.d = project * general.d;
    return gen;
}

}  // namespace lambdabloch
