#pragma once

#include <complex>
#include <stdexcept>

namespace fracscatter {

using cplx = std::complex<double>;

/// z^w on the principal branch, Arg z in (-pi, pi].
/// Signed zero in Im(z) is normalized to +0 so that negative real
/// arguments land on the upper side of the cut.
cplx principal_pow(cplx z, cplx w);

inline cplx principal_pow(cplx z, double w) { return principal_pow(z, cplx{w, 0.0}); }

/// Levy index, characteristic velocity and units of the fractional system.
/// Valid range: 1 < alpha <= 2, v > 0, m > 0, hbar > 0.
struct LevyContext {
  double alpha;
  double v;
  double m;
  double hbar;

  explicit LevyContext(double alpha, double v = 1e-5, double m = 1.0, double hbar = 1.0);

  /// D_alpha = v^(2-alpha) / (alpha * m^(alpha-1))
  double diffusion_coefficient() const;

  LevyContext with_alpha(double a) const { return LevyContext(a, v, m, hbar); }
};

/// k_alpha = (E / (D_alpha hbar^alpha))^(1/alpha), principal branch.
cplx wavenumber(const LevyContext& ctx, cplx energy);

/// kbar_alpha = ((E - V) / (D_alpha hbar^alpha))^(1/alpha), principal branch.
/// E == V is a branch point and is rejected.
cplx inside_wavenumber(const LevyContext& ctx, double energy, cplx potential);

/// epsilon = (k_alpha / kbar_alpha)^(alpha-1).
/// The ratio is formed first and powered once, so both wavenumbers sitting
/// near the cut do not produce a spurious branch jump.
cplx epsilon_ratio(const LevyContext& ctx, double energy, cplx potential);

struct MuPair {
  cplx mu1;  // (eps + 1/eps) / 2
  cplx mu2;  // (eps - 1/eps) / 2
};

MuPair mu_pair(cplx eps);

}  // namespace fracscatter
