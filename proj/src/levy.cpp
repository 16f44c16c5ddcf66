#include "fracscatter/levy.hpp"

#include <cmath>

namespace fracscatter {

cplx principal_pow(cplx z, cplx w) {
  if (z == cplx{0.0, 0.0}) {
    throw std::domain_error("principal_pow: zero base");
  }
  if (z.imag() == 0.0) {
    z = cplx{z.real(), +0.0};  // put the negative real axis on the upper sheet
  }
  const cplx log_z{std::log(std::abs(z)), std::arg(z)};
  return std::exp(w * log_z);
}

LevyContext::LevyContext(double alpha_, double v_, double m_, double hbar_)
    : alpha(alpha_), v(v_), m(m_), hbar(hbar_) {
  if (!(alpha > 1.0) || !(alpha <= 2.0)) {
    throw std::domain_error("LevyContext: alpha must lie in (1, 2]");
  }
  if (!(v > 0.0)) throw std::domain_error("LevyContext: v must be positive");
  if (!(m > 0.0)) throw std::domain_error("LevyContext: m must be positive");
  if (!(hbar > 0.0)) throw std::domain_error("LevyContext: hbar must be positive");
  const double d = diffusion_coefficient();
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw std::domain_error("LevyContext: diffusion coefficient not finite positive");
  }
}

double LevyContext::diffusion_coefficient() const {
  return std::pow(v, 2.0 - alpha) / (alpha * std::pow(m, alpha - 1.0));
}

cplx wavenumber(const LevyContext& ctx, cplx energy) {
  if (energy == cplx{0.0, 0.0}) {
    throw std::domain_error("wavenumber: zero energy");
  }
  const double scale = ctx.diffusion_coefficient() * std::pow(ctx.hbar, ctx.alpha);
  return principal_pow(energy / scale, 1.0 / ctx.alpha);
}

cplx inside_wavenumber(const LevyContext& ctx, double energy, cplx potential) {
  const cplx diff = cplx{energy, 0.0} - potential;
  if (diff == cplx{0.0, 0.0}) {
    throw std::domain_error("inside_wavenumber: E == V is a branch point");
  }
  const double scale = ctx.diffusion_coefficient() * std::pow(ctx.hbar, ctx.alpha);
  return principal_pow(diff / scale, 1.0 / ctx.alpha);
}

cplx epsilon_ratio(const LevyContext& ctx, double energy, cplx potential) {
  const cplx k = wavenumber(ctx, cplx{energy, 0.0});
  const cplx kbar = inside_wavenumber(ctx, energy, potential);
  if (kbar == cplx{0.0, 0.0}) {
    throw std::domain_error("epsilon_ratio: vanishing inside wavenumber");
  }
  return principal_pow(k / kbar, ctx.alpha - 1.0);
}

MuPair mu_pair(cplx eps) {
  if (eps == cplx{0.0, 0.0}) {
    throw std::domain_error("mu_pair: zero epsilon");
  }
  const cplx inv = 1.0 / eps;
  return MuPair{0.5 * (eps + inv), 0.5 * (eps - inv)};
}

}  // namespace fracscatter
