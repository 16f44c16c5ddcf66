#pragma once

#include <string>
#include <variant>

#include "fracscatter/levy.hpp"

namespace fracscatter {

struct TransferMatrix {
  cplx m11, m12, m21, m22;

  cplx det() const { return m11 * m22 - m12 * m21; }

  static TransferMatrix identity() {
    return TransferMatrix{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
  }
};

/// Ordinary 2x2 product; det is multiplicative.
TransferMatrix compose(const TransferMatrix& a, const TransferMatrix& b);
inline TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
  return compose(a, b);
}

struct ComplexDelta {
  cplx zeta;
  double x0 = 0.0;
};

struct ComplexBarrier {
  cplx height;  // V1 + i V2
  double width;
};

using Potential = std::variant<ComplexDelta, ComplexBarrier>;

/// Delta potential zeta * delta(x - x0). The matrix carries the paper
/// convention with no x0-dependent phases (all observables of interest
/// are phase-insensitive); translation phases are available via compose
/// with free_propagation.
TransferMatrix delta_matrix(const LevyContext& ctx, cplx zeta, double energy);

TransferMatrix barrier_matrix(const LevyContext& ctx, cplx height, double width, double energy);

TransferMatrix potential_matrix(const LevyContext& ctx, const Potential& pot, double energy);

/// diag(e^{i k d}, e^{-i k d}) for a field-free stretch of length d.
TransferMatrix free_propagation(const LevyContext& ctx, double energy, double distance);

/// Thrown when scattering coefficients are requested at an exact zero of m22.
/// Callers treat it as a located spectral singularity, not a failure.
class spectral_singular_error : public std::runtime_error {
 public:
  spectral_singular_error(double energy, double alpha);
  double energy;
  double alpha;
};

struct ScatteringSet {
  cplx t_l, t_r, r_l, r_r;
  double T, R_l, R_r;
};

ScatteringSet scattering_set(const TransferMatrix& M, double energy = 0.0, double alpha = 0.0);

/// C = t_l t_r - r_l r_r = (1 - m12 m21) / m22^2.
/// At m22 == 0 exactly, the m12 m21 - 1 form is returned instead
/// (same zero set; the SS overlap is detectable by the caller from m22).
cplx cpa_residual(const TransferMatrix& M);

/// |mu2^2 sin^2(kbar b) - 1| for a barrier: the transcendental form of the
/// CPA condition, used as an independent certificate at located minima.
double cpa_certificate(const LevyContext& ctx, cplx height, double width, double energy);

// Log-magnitude observables, saturated at +-308 to preserve ordering
// near poles without overflow.
inline constexpr double kLog10Cap = 308.0;

double log10_T(const TransferMatrix& M);
double log10_R_l(const TransferMatrix& M);
double log10_R_r(const TransferMatrix& M);
double log10_abs_m22(const TransferMatrix& M);
double log10_abs_cpa(const TransferMatrix& M);

/// Four entries as [re, im] pairs.
std::string to_json(const TransferMatrix& M);

}  // namespace fracscatter
