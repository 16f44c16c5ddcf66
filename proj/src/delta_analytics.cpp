#include "fracscatter/delta_analytics.hpp"

#include <cmath>

namespace fracscatter {

const char* to_string(ShiftClass c) {
  switch (c) {
    case ShiftClass::BlueShift: return "BlueShift";
    case ShiftClass::RedShift: return "RedShift";
    case ShiftClass::Bounded: return "Bounded";
    case ShiftClass::Indeterminate: return "Indeterminate";
  }
  return "?";
}

double delta_ss_energy(const LevyContext& ctx, double rho) {
  if (!(rho > 0.0)) {
    throw std::domain_error("delta_ss_energy: rho must be positive");
  }
  const double a = ctx.alpha;
  // a > 1 strictly is guaranteed by LevyContext.
  return ctx.m * std::pow(ctx.v, (a - 2.0) / (a - 1.0)) *
         std::pow(a / std::pow(ctx.hbar, a), 1.0 / (a - 1.0)) *
         std::pow(rho / 2.0, a / (a - 1.0));
}

PhaseCheck ss_phase_condition(cplx zeta) {
  if (zeta == cplx{0.0, 0.0}) {
    throw std::domain_error("ss_phase_condition: zero strength");
  }
  const double phase = std::arg(zeta);
  const bool admits = std::abs(phase + M_PI / 2.0) <= 1e-12;
  return PhaseCheck{admits, std::abs(zeta)};
}

double ss_ratio(const LevyContext& base, double alpha1, double alpha2, double rho) {
  if (!(rho > 0.0)) {
    throw std::domain_error("ss_ratio: rho must be positive");
  }
  // Validate both indices through the context machinery.
  (void)base.with_alpha(alpha1);
  (void)base.with_alpha(alpha2);
  const double a1 = alpha1, a2 = alpha2;
  const double lead = std::pow(a1, 1.0 / (a1 - 1.0)) / std::pow(a2, 1.0 / (a2 - 1.0));
  const double expo = (a1 - a2) / ((a1 - 1.0) * (a2 - 1.0));
  return lead * std::pow(2.0 * base.hbar * base.v / rho, expo);
}

ShiftClass classify_shift(double rho, double v, double hbar) {
  if (!(rho > 0.0) || !(v > 0.0)) {
    throw std::domain_error("classify_shift: rho and v must be positive");
  }
  const double two_hv = 2.0 * hbar * v;
  if (std::abs(two_hv - rho) <= 1e-12 * rho) return ShiftClass::Bounded;
  const double ratio = two_hv / rho;
  if (ratio < 1.0) return ShiftClass::BlueShift;
  if (ratio > M_E / 2.0) return ShiftClass::RedShift;
  return ShiftClass::Indeterminate;
}

DeltaSSResult delta_ss(const LevyContext& ctx, double rho) {
  return DeltaSSResult{delta_ss_energy(ctx, rho), rho, ctx.alpha,
                       classify_shift(rho, ctx.v, ctx.hbar)};
}

}  // namespace fracscatter
