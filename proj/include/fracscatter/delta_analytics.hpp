#pragma once

#include "fracscatter/levy.hpp"

namespace fracscatter {

/// Movement of the delta SS energy as alpha decreases from 2.
/// The inequalities 2*hbar*v/rho < 1 (blue) and > e/2 (red) are sufficient
/// conditions only; the band in between is reported as Indeterminate
/// rather than extrapolated.
enum class ShiftClass { BlueShift, RedShift, Bounded, Indeterminate };

const char* to_string(ShiftClass c);

/// Analytic SS energy of V(x) = -i rho delta(x - x0):
/// E_ss = m v^((a-2)/(a-1)) (a/hbar^a)^(1/(a-1)) (rho/2)^(a/(a-1)).
double delta_ss_energy(const LevyContext& ctx, double rho);

struct PhaseCheck {
  bool admits_ss;  // Arg zeta == -pi/2 within 1e-12
  double rho;      // |zeta|
};

/// A complex delta strength supports a real SS energy only at phase -pi/2,
/// i.e. zeta = -i rho with rho > 0.
PhaseCheck ss_phase_condition(cplx zeta);

/// Closed-form E_ss(alpha1) / E_ss(alpha2) at fixed rho and v.
double ss_ratio(const LevyContext& base, double alpha1, double alpha2, double rho);

ShiftClass classify_shift(double rho, double v, double hbar = 1.0);

struct DeltaSSResult {
  double e_ss;
  double rho;
  double alpha;
  ShiftClass shift_class;
};

DeltaSSResult delta_ss(const LevyContext& ctx, double rho);

}  // namespace fracscatter
