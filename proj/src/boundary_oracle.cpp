#include "fracscatter/boundary_oracle.hpp"

#include <array>
#include <cmath>

namespace fracscatter {

namespace {

// Gaussian elimination with partial pivoting on a 4x4 complex system.
std::array<cplx, 4> solve4(std::array<std::array<cplx, 4>, 4> a, std::array<cplx, 4> b) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int row = col + 1; row < 4; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    if (std::abs(a[col][col]) == 0.0) {
      throw std::runtime_error("boundary oracle: singular matching system");
    }
    for (int row = col + 1; row < 4; ++row) {
      const cplx f = a[row][col] / a[col][col];
      for (int j = col; j < 4; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  std::array<cplx, 4> x{};
  for (int row = 3; row >= 0; --row) {
    cplx s = b[row];
    for (int j = row + 1; j < 4; ++j) s -= a[row][j] * x[j];
    x[row] = s / a[row][row];
  }
  return x;
}

}  // namespace

OracleScattering boundary_matching_scattering(const LevyContext& ctx, cplx height, double width,
                                              double energy) {
  const cplx i{0.0, 1.0};
  const cplx k = wavenumber(ctx, cplx{energy, 0.0});
  const cplx kbar = inside_wavenumber(ctx, energy, height);
  const cplx wa = principal_pow(k, ctx.alpha - 1.0);
  const cplx wb = principal_pow(kbar, ctx.alpha - 1.0);
  const cplx ebm = std::exp(-i * kbar * width);  // right-mover phase across the well
  const cplx ebp = std::exp(i * kbar * width);
  const cplx ekm = std::exp(-i * k * width);
  const cplx ekp = std::exp(i * k * width);

  // Left incidence, unknowns (r, A, B, t):
  //   psi_L = e^{-ikx} + r e^{ikx},  psi_in = A e^{-i kbar x} + B e^{i kbar x},
  //   psi_R = t e^{-ikx}.
  const std::array<std::array<cplx, 4>, 4> left{{
      {cplx{-1.0, 0.0}, cplx{1.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0}},
      {wa, wb, -wb, cplx{0.0, 0.0}},
      {cplx{0.0, 0.0}, ebm, ebp, -ekm},
      {cplx{0.0, 0.0}, wb * ebm, -wb * ebp, -wa * ekm},
  }};
  const auto sol_l = solve4(left, {cplx{1.0, 0.0}, wa, cplx{0.0, 0.0}, cplx{0.0, 0.0}});

  // Right incidence, unknowns (t', A, B, r'):
  //   psi_R = e^{ikx} + r' e^{-ikx},  psi_L = t' e^{ikx}.
  const std::array<std::array<cplx, 4>, 4> right{{
      {cplx{1.0, 0.0}, cplx{-1.0, 0.0}, cplx{-1.0, 0.0}, cplx{0.0, 0.0}},
      {wa, wb, -wb, cplx{0.0, 0.0}},
      {cplx{0.0, 0.0}, ebm, ebp, -ekm},
      {cplx{0.0, 0.0}, -wb * ebm, wb * ebp, wa * ekm},
  }};
  const auto sol_r = solve4(right, {cplx{0.0, 0.0}, cplx{0.0, 0.0}, ekp, wa * ekp});

  OracleScattering out;
  out.t = sol_l[3];
  out.r_l = -std::exp(i * k * width) * sol_l[0];
  out.r_r = std::exp(-i * k * width) * sol_r[3];
  return out;
}

}  // namespace fracscatter
