// generator.hpp — Assembly of the affine Bloch-Redfield generator (A, d) for
// each drive geometry and state-space reduction.

#pragma once

#include "lambdabloch/model.hpp"

namespace lambdabloch {

// Symmetric isotropic drive, state order (rho_g1g1, rho_R, rho_I):
//   A = [[-(3r+2g), -p r,       0    ],
//        [-p(3r+2g), -r,        Delta],
//        [ 0,        -Delta,    -r   ]],   d = [r+g, p(r+g), 0].
// Valid on the symmetric subspace rho_g1g1 == rho_g2g2.
Generator build_symmetric_isotropic(const SystemParams& params);

// General isotropic drive, state order (rho_g1g1, rho_g2g2, rho_R, rho_I),
// with rho_ee eliminated by the unit trace. Restricting to the symmetric
// subspace reproduces build_symmetric_isotropic entry-by-entry.
Generator build_general_isotropic(const SystemParams& params);

// Symmetric polarized drive, state order (rho_g1g1, rho_R, rho_I):
//   A = [[-(3r+2g), -r,     0    ],
//        [-3r,      -r,     Delta],
//        [ 0,       -Delta, -r   ]],   d = [r+g, r, 0].
// Cross-coupling survives only in the pumping terms: the transition dipoles
// are orthogonal, so spontaneous emission carries no interference term, while
// both dipoles couple to the same x-polarized mode.
Generator build_symmetric_polarized(const SystemParams& params);

// Dispatch on geometry and symmetry: polarized -> symmetric polarized (3x3),
// symmetric isotropic -> 3x3, asymmetric isotropic -> 4x4.
Generator build_generator(const SystemParams& params);

// Restriction of a 4-dim generator to the symmetric subspace
// (rho_g1g1 == rho_g2g2), as a 3-dim generator.
Generator restrict_to_symmetric(const Generator& general);

}  // namespace lambdabloch
