#pragma once

#include "fracscatter/levy.hpp"

namespace fracscatter {

struct OracleScattering {
  cplx t;    // = 1/m22 of the closed form
  cplx r_l;  // = m21/m22
  cplx r_r;  // = m12/m22
};

/// Scattering coefficients of the rectangular barrier obtained by solving the
/// 4-unknown plane-wave boundary-matching linear system directly, with no use
/// of the closed-form transfer matrix. Interface relations: continuity of psi
/// and of the k_local^(alpha-2)-weighted derivative at x = 0 and x = b, in the
/// e^{+iEt} time convention (right-movers e^{-ikx}). The raw reflection
/// amplitudes are re-referenced by -e^{ikb} (left) and e^{-ikb} (right) to the
/// phase convention of the closed form.
OracleScattering boundary_matching_scattering(const LevyContext& ctx, cplx height, double width,
                                              double energy);

}  // namespace fracscatter
