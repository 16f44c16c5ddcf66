#include "fracscatter/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fracscatter {

TransferMatrix compose(const TransferMatrix& a, const TransferMatrix& b) {
  return TransferMatrix{
      a.m11 * b.m11 + a.m12 * b.m21,
      a.m11 * b.m12 + a.m12 * b.m22,
      a.m21 * b.m11 + a.m22 * b.m21,
      a.m21 * b.m12 + a.m22 * b.m22,
  };
}

TransferMatrix delta_matrix(const LevyContext& ctx, cplx zeta, double energy) {
  if (!(energy > 0.0)) {
    throw std::domain_error("delta_matrix: energy must be positive");
  }
  const cplx k = wavenumber(ctx, cplx{energy, 0.0});
  const double d = ctx.diffusion_coefficient();
  const double hpow = std::pow(ctx.hbar, ctx.alpha);
  const cplx x = cplx{0.0, 1.0} * zeta /
                 (2.0 * d * principal_pow(k, ctx.alpha - 1.0) * hpow);
  return TransferMatrix{1.0 + x, x, -x, 1.0 - x};
}

TransferMatrix barrier_matrix(const LevyContext& ctx, cplx height, double width, double energy) {
  if (!(energy > 0.0)) {
    throw std::domain_error("barrier_matrix: energy must be positive");
  }
  if (!(width > 0.0)) {
    throw std::domain_error("barrier_matrix: width must be positive");
  }
  const cplx k = wavenumber(ctx, cplx{energy, 0.0});
  const cplx kbar = inside_wavenumber(ctx, energy, height);
  const cplx eps = principal_pow(k / kbar, ctx.alpha - 1.0);
  const auto [mu1, mu2] = mu_pair(eps);
  const cplx i{0.0, 1.0};
  const cplx c = std::cos(kbar * width);
  const cplx s = std::sin(kbar * width);
  const cplx phase = std::exp(i * k * width);
  return TransferMatrix{
      (c - i * mu1 * s) * phase,
      i * mu2 * s,
      -i * mu2 * s,
      (c + i * mu1 * s) / phase,
  };
}

TransferMatrix potential_matrix(const LevyContext& ctx, const Potential& pot, double energy) {
  return std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ComplexDelta>) {
          return delta_matrix(ctx, p.zeta, energy);
        } else {
          return barrier_matrix(ctx, p.height, p.width, energy);
        }
      },
      pot);
}

TransferMatrix free_propagation(const LevyContext& ctx, double energy, double distance) {
  const cplx k = wavenumber(ctx, cplx{energy, 0.0});
  const cplx i{0.0, 1.0};
  return TransferMatrix{std::exp(i * k * distance), {0.0, 0.0}, {0.0, 0.0},
                        std::exp(-i * k * distance)};
}

spectral_singular_error::spectral_singular_error(double energy_, double alpha_)
    : std::runtime_error("spectral-singular point: m22 = 0"), energy(energy_), alpha(alpha_) {}

ScatteringSet scattering_set(const TransferMatrix& M, double energy, double alpha) {
  if (std::abs(M.m22) == 0.0) {
    throw spectral_singular_error(energy, alpha);
  }
  ScatteringSet s;
  s.t_l = 1.0 / M.m22;
  s.t_r = s.t_l;
  s.r_l = M.m21 / M.m22;
  s.r_r = M.m12 / M.m22;
  s.T = std::norm(s.t_l);
  s.R_l = std::norm(s.r_l);
  s.R_r = std::norm(s.r_r);
  return s;
}

cplx cpa_residual(const TransferMatrix& M) {
  const cplx offdiag = M.m12 * M.m21;
  if (std::abs(M.m22) == 0.0) {
    return offdiag - 1.0;
  }
  return (1.0 - offdiag) / (M.m22 * M.m22);
}

double cpa_certificate(const LevyContext& ctx, cplx height, double width, double energy) {
  const cplx kbar = inside_wavenumber(ctx, energy, height);
  const cplx eps = principal_pow(wavenumber(ctx, cplx{energy, 0.0}) / kbar, ctx.alpha - 1.0);
  const cplx mu2 = mu_pair(eps).mu2;
  const cplx s = std::sin(kbar * width);
  return std::abs(mu2 * mu2 * s * s - 1.0);
}

namespace {

double saturated_log10(double magnitude) {
  if (magnitude == 0.0) return -kLog10Cap;
  const double l = std::log10(magnitude);
  if (!std::isfinite(l)) return l > 0.0 ? kLog10Cap : -kLog10Cap;
  return std::clamp(l, -kLog10Cap, kLog10Cap);
}

}  // namespace

double log10_T(const TransferMatrix& M) {
  return std::clamp(-2.0 * saturated_log10(std::abs(M.m22)), -kLog10Cap, kLog10Cap);
}

double log10_R_l(const TransferMatrix& M) {
  const double l = 2.0 * (saturated_log10(std::abs(M.m21)) - saturated_log10(std::abs(M.m22)));
  return std::clamp(l, -kLog10Cap, kLog10Cap);
}

double log10_R_r(const TransferMatrix& M) {
  const double l = 2.0 * (saturated_log10(std::abs(M.m12)) - saturated_log10(std::abs(M.m22)));
  return std::clamp(l, -kLog10Cap, kLog10Cap);
}

double log10_abs_m22(const TransferMatrix& M) { return saturated_log10(std::abs(M.m22)); }

double log10_abs_cpa(const TransferMatrix& M) { return saturated_log10(std::abs(cpa_residual(M))); }

std::string to_json(const TransferMatrix& M) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "{\"m11\":[%.17g,%.17g],\"m12\":[%.17g,%.17g],"
                "\"m21\":[%.17g,%.17g],\"m22\":[%.17g,%.17g]}",
                M.m11.real(), M.m11.imag(), M.m12.real(), M.m12.imag(), M.m21.real(),
                M.m21.imag(), M.m22.real(), M.m22.imag());
  return buf;
}

}  // namespace fracscatter
