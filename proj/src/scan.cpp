#include "fracscatter/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace fracscatter {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_branch_point(const Potential& pot, double energy) {
  if (const auto* barrier = std::get_if<ComplexBarrier>(&pot)) {
    return barrier->height.imag() == 0.0 && energy == barrier->height.real();
  }
  return false;
}

double median_of_finite(std::vector<double> vals) {
  vals.erase(std::remove_if(vals.begin(), vals.end(),
                            [](double x) { return !std::isfinite(x); }),
             vals.end());
  if (vals.empty()) return kNaN;
  const std::size_t mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
  double hi = vals[mid];
  if (vals.size() % 2 == 1) return hi;
  double lo = *std::max_element(vals.begin(), vals.begin() + mid);
  return 0.5 * (lo + hi);
}

double depth_decades(double median, double residual) {
  if (!(median > 0.0)) return 0.0;
  if (residual <= 0.0) return kLog10Cap;
  return std::min(std::log10(median / residual), kLog10Cap);
}

/// Index-ordered parallel for: f(i) must be pure; results must be written
/// by index so scheduling cannot change the output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  const int workers = std::min<int>(worker_count(), static_cast<int>(n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < n;
           i += static_cast<std::size_t>(workers)) {
        f(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

const char* to_string(Observable o) {
  switch (o) {
    case Observable::R: return "R";
    case Observable::T: return "T";
    case Observable::AbsM22: return "abs_m22";
    case Observable::AbsC: return "abs_C";
  }
  return "?";
}

const char* to_string(SingularityKind k) {
  return k == SingularityKind::SS ? "SS" : "CPA";
}

int worker_count() {
  if (const char* env = std::getenv("FRACSCATTER_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void ScanGrid::validate() const {
  if (!(e_min > 0.0) || !(e_min < e_max)) {
    throw std::domain_error("ScanGrid: need 0 < e_min < e_max");
  }
  if (e_points < 2) throw std::domain_error("ScanGrid: e_points must be >= 2");
  if (!(alpha_min > 1.0) || !(alpha_max <= 2.0) || !(alpha_min <= alpha_max)) {
    throw std::domain_error("ScanGrid: alpha bounds must lie in (1, 2]");
  }
  if (alpha_min < alpha_max && alpha_points < 2) {
    throw std::domain_error("ScanGrid: alpha_points must be >= 2 for a swept alpha axis");
  }
  if (alpha_points < 1) throw std::domain_error("ScanGrid: alpha_points must be >= 1");
}

std::vector<double> ScanGrid::energies() const {
  std::vector<double> out(static_cast<std::size_t>(e_points));
  if (e_scale == EScale::Linear) {
    const double step = (e_max - e_min) / (e_points - 1);
    for (int i = 0; i < e_points; ++i) out[i] = e_min + step * i;
  } else {
    const double l0 = std::log10(e_min);
    const double step = (std::log10(e_max) - l0) / (e_points - 1);
    for (int i = 0; i < e_points; ++i) out[i] = std::pow(10.0, l0 + step * i);
  }
  out.front() = e_min;
  out.back() = e_max;
  return out;
}

std::vector<double> ScanGrid::alphas() const {
  std::vector<double> out(static_cast<std::size_t>(alpha_points));
  if (alpha_points == 1) {
    out[0] = alpha_max;
    return out;
  }
  const double step = (alpha_max - alpha_min) / (alpha_points - 1);
  for (int i = 0; i < alpha_points; ++i) out[i] = alpha_min + step * i;
  out.front() = alpha_min;
  out.back() = alpha_max;
  return out;
}

ScanField scan_field(const Potential& pot, const LevyContext& ctx_template, const ScanGrid& grid,
                     Observable obs) {
  grid.validate();
  ScanField field;
  field.alphas = grid.alphas();
  field.energies = grid.energies();
  field.values.assign(field.alphas.size() * field.energies.size(), kNaN);
  const std::size_t cols = field.energies.size();

  parallel_for(field.alphas.size(), [&](std::size_t row) {
    const LevyContext ctx = ctx_template.with_alpha(field.alphas[row]);
    for (std::size_t col = 0; col < cols; ++col) {
      const double e = field.energies[col];
      if (is_branch_point(pot, e)) continue;  // flagged as NaN
      const TransferMatrix M = potential_matrix(ctx, pot, e);
      double v = 0.0;
      switch (obs) {
        case Observable::R: v = log10_R_l(M); break;
        case Observable::T: v = log10_T(M); break;
        case Observable::AbsM22: v = log10_abs_m22(M); break;
        case Observable::AbsC: v = log10_abs_cpa(M); break;
      }
      field.values[row * cols + col] = v;
    }
  });
  return field;
}

double singularity_residual(const Potential& pot, const LevyContext& ctx, double energy,
                            SingularityKind kind) {
  if (is_branch_point(pot, energy)) return kNaN;
  const TransferMatrix M = potential_matrix(ctx, pot, energy);
  return kind == SingularityKind::SS ? std::abs(M.m22) : std::abs(cpa_residual(M));
}

GoldenResult golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol, int max_iters) {
  if (!(lo < hi)) throw std::domain_error("golden_minimize: need lo < hi");
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  for (; it < max_iters; ++it) {
    if (b - a <= rel_tol * std::max(std::abs(a), std::abs(b))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return GoldenResult{x, f(x), it};
}

namespace {

struct GridMinimum {
  std::size_t index;
  double e_refined;
  double residual;
};

/// Strict local minima of `res` over indices [begin, end), refined by golden
/// section within the neighbouring-sample bracket.
std::vector<GridMinimum> refined_local_minima(const std::vector<double>& energies,
                                              const std::vector<double>& res, std::size_t begin,
                                              std::size_t end,
                                              const std::function<double(double)>& f,
                                              double rel_tol, int max_iters) {
  std::vector<GridMinimum> out;
  if (end > res.size()) end = res.size();
  for (std::size_t i = std::max<std::size_t>(begin, 1); i + 1 < end; ++i) {
    if (!std::isfinite(res[i]) || !std::isfinite(res[i - 1]) || !std::isfinite(res[i + 1])) {
      continue;
    }
    if (res[i] < res[i - 1] && res[i] < res[i + 1]) {
      const auto g = golden_minimize(f, energies[i - 1], energies[i + 1], rel_tol, max_iters);
      out.push_back(GridMinimum{i, g.x, g.fx});
    }
  }
  return out;
}

std::vector<SingularityReport> find_singularities(const Potential& pot, const LevyContext& ctx,
                                                  double e_lo, double e_hi, SingularityKind kind,
                                                  const FindOptions& opts) {
  if (!(e_lo > 0.0) || !(e_lo < e_hi)) {
    throw std::domain_error("find: need 0 < e_lo < e_hi");
  }
  const int n = std::max(opts.e_points, 3);
  std::vector<double> energies(static_cast<std::size_t>(n));
  const double step = (e_hi - e_lo) / (n - 1);
  for (int i = 0; i < n; ++i) energies[i] = e_lo + step * i;

  std::vector<double> res(energies.size(), kNaN);
  parallel_for(energies.size(), [&](std::size_t i) {
    res[i] = singularity_residual(pot, ctx, energies[i], kind);
  });
  const double median = median_of_finite(res);

  const auto f = [&](double e) { return singularity_residual(pot, ctx, e, kind); };
  const auto minima = refined_local_minima(energies, res, 0, res.size(), f, opts.refine_rel_tol,
                                           opts.max_iters);

  std::vector<SingularityReport> reports;
  for (const auto& m : minima) {
    const double depth = depth_decades(median, m.residual);
    if (depth < opts.threshold_decades) continue;
    SingularityReport r;
    r.kind = kind;
    r.e_star = m.e_refined;
    r.alpha_star = ctx.alpha;
    r.residual = m.residual;
    r.depth = depth;
    r.bracket_lo = energies[m.index - 1];
    r.bracket_hi = energies[m.index + 1];
    r.certificate = kNaN;
    if (kind == SingularityKind::CPA) {
      if (const auto* barrier = std::get_if<ComplexBarrier>(&pot)) {
        r.certificate = cpa_certificate(ctx, barrier->height, barrier->width, m.e_refined);
      }
    }
    reports.push_back(r);
  }
  std::sort(reports.begin(), reports.end(),
            [](const auto& a, const auto& b) { return a.e_star < b.e_star; });
  return reports;
}

}  // namespace

std::vector<SingularityReport> find_ss(const Potential& pot, const LevyContext& ctx, double e_lo,
                                       double e_hi, const FindOptions& opts) {
  return find_singularities(pot, ctx, e_lo, e_hi, SingularityKind::SS, opts);
}

std::vector<SingularityReport> find_cpa(const Potential& pot, const LevyContext& ctx, double e_lo,
                                        double e_hi, const FindOptions& opts) {
  return find_singularities(pot, ctx, e_lo, e_hi, SingularityKind::CPA, opts);
}

namespace {

SubPeakTrack::Sample make_sample(const Potential& pot, const LevyContext& ctx, double e) {
  const TransferMatrix M = potential_matrix(ctx, pot, e);
  return SubPeakTrack::Sample{ctx.alpha, e, log10_R_l(M), log10_T(M)};
}

}  // namespace

std::vector<SubPeakTrack> track_subpeaks(const Potential& pot, const LevyContext& ctx_template,
                                         const ScanGrid& grid, SingularityKind kind,
                                         const TrackOptions& opts) {
  grid.validate();
  if (grid.alpha_max != 2.0) {
    throw std::domain_error("track_subpeaks: grid must span alpha = 2 at its upper edge");
  }
  const std::vector<double> energies = grid.energies();
  const std::vector<double> alphas_asc = grid.alphas();
  const std::size_t cols = energies.size();
  const std::size_t rows = alphas_asc.size();

  // Residual field (linear scale), row-major with rows by descending alpha.
  std::vector<double> field(rows * cols, kNaN);
  parallel_for(rows, [&](std::size_t r) {
    const LevyContext ctx = ctx_template.with_alpha(alphas_asc[rows - 1 - r]);
    for (std::size_t c = 0; c < cols; ++c) {
      field[r * cols + c] = singularity_residual(pot, ctx, energies[c], kind);
    }
  });
  std::vector<double> row_median(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    row_median[r] = median_of_finite(
        std::vector<double>(field.begin() + r * cols, field.begin() + (r + 1) * cols));
  }

  const double rel_tol = 1e-10;
  const int max_iters = 200;

  // alpha = 2 row: main singularity and the sub-peaks above it.
  const LevyContext ctx_top = ctx_template.with_alpha(alphas_asc.back());
  const auto f_top = [&](double e) { return singularity_residual(pot, ctx_top, e, kind); };
  const std::vector<double> top_row(field.begin(), field.begin() + cols);
  auto top_minima = refined_local_minima(energies, top_row, 0, cols, f_top, rel_tol, max_iters);
  if (top_minima.empty()) return {};
  const auto deepest = std::min_element(
      top_minima.begin(), top_minima.end(),
      [](const auto& a, const auto& b) { return a.residual < b.residual; });
  const double e_main = deepest->e_refined;

  std::vector<SubPeakTrack> tracks;
  std::vector<double> positions;  // current refined peak position per track
  std::vector<bool> open;
  int next_id = 1;
  for (const auto& m : top_minima) {
    if (!(m.e_refined > e_main)) continue;
    SubPeakTrack t;
    t.peak_id = next_id++;
    t.samples.push_back(make_sample(pot, ctx_top, m.e_refined));
    const double depth = depth_decades(row_median[0], m.residual);
    if (depth >= opts.threshold_decades) t.developed_at = ctx_top.alpha;
    tracks.push_back(std::move(t));
    positions.push_back(m.e_refined);
    open.push_back(true);
  }

  const double spacing = (energies.back() - energies.front()) / (cols - 1);
  const double window = opts.window_spacings * spacing;

  for (std::size_t r = 1; r < rows; ++r) {
    const double alpha = alphas_asc[rows - 1 - r];
    const LevyContext ctx = ctx_template.with_alpha(alpha);
    const auto f = [&](double e) { return singularity_residual(pot, ctx, e, kind); };
    const double* row = field.data() + r * cols;
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      if (!open[t]) continue;
      // Grid local minima inside the continuation window around the last position.
      const double lo = positions[t] - window, hi = positions[t] + window;
      const auto first = static_cast<std::size_t>(std::max<double>(
          1.0, std::ceil((lo - energies.front()) / spacing)));
      const auto last = static_cast<std::size_t>(std::min<double>(
          static_cast<double>(cols) - 1.0, std::floor((hi - energies.front()) / spacing) + 1.0));
      std::optional<std::size_t> best;
      for (std::size_t i = first; i + 1 <= last && i + 1 < cols; ++i) {
        if (!std::isfinite(row[i]) || !std::isfinite(row[i - 1]) || !std::isfinite(row[i + 1])) {
          continue;
        }
        if (row[i] < row[i - 1] && row[i] < row[i + 1]) {
          if (!best || std::abs(energies[i] - positions[t]) <
                           std::abs(energies[*best] - positions[t])) {
            best = i;
          }
        }
      }
      if (!best) {
        open[t] = false;  // track lost; closed with developed_at as-is
        continue;
      }
      const auto g =
          golden_minimize(f, energies[*best - 1], energies[*best + 1], rel_tol, max_iters);
      positions[t] = g.x;
      tracks[t].samples.push_back(make_sample(pot, ctx, g.x));
      if (!tracks[t].developed_at &&
          depth_decades(row_median[r], g.fx) >= opts.threshold_decades) {
        tracks[t].developed_at = alpha;
      }
    }
  }

  if (opts.refine_development) {
    for (auto& t : tracks) {
      if (t.developed_at || t.samples.size() < 3) continue;
      // Deepest row along the track, then golden in alpha with nested E
      // refinement around the travelling peak position.
      std::size_t best = 0;
      double best_res = std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < t.samples.size(); ++s) {
        const LevyContext ctx = ctx_template.with_alpha(t.samples[s].alpha);
        const double res = singularity_residual(pot, ctx, t.samples[s].e_peak, kind);
        if (res < best_res) {
          best_res = res;
          best = s;
        }
      }
      const double a_hi = t.samples[best == 0 ? 0 : best - 1].alpha;
      const double a_lo = t.samples[std::min(best + 1, t.samples.size() - 1)].alpha;
      if (!(a_lo < a_hi)) continue;
      double e_state = t.samples[best].e_peak;
      const double e_win = 2.0 * std::abs(t.samples[best].e_peak -
                                          t.samples[best == 0 ? 0 : best - 1].e_peak) +
                           (energies.back() - energies.front()) / (cols - 1);
      const auto g_alpha = [&](double a) {
        const LevyContext ctx = ctx_template.with_alpha(a);
        const auto f = [&](double e) { return singularity_residual(pot, ctx, e, kind); };
        const auto ge = golden_minimize(f, e_state - e_win, e_state + e_win, rel_tol, max_iters);
        e_state = ge.x;
        return ge.fx;
      };
      const auto ga = golden_minimize(g_alpha, a_lo, a_hi, 1e-11, max_iters);
      const std::size_t row_near = static_cast<std::size_t>(std::clamp(
          std::lround((alphas_asc.back() - ga.x) /
                      ((alphas_asc.back() - alphas_asc.front()) /
                       static_cast<double>(rows - 1))),
          long{0}, static_cast<long>(rows - 1)));
      if (depth_decades(row_median[row_near], ga.fx) >= opts.threshold_decades) {
        t.developed_at = ga.x;
      }
    }
  }
  return tracks;
}

std::vector<ProfilePoint> alpha_profile(const Potential& pot, const LevyContext& ctx_template,
                                        double energy, double alpha_lo, double alpha_hi,
                                        int points) {
  if (!(energy > 0.0)) throw std::domain_error("alpha_profile: energy must be positive");
  if (is_branch_point(pot, energy)) {
    throw std::domain_error("alpha_profile: energy sits on the branch point E = V");
  }
  if (points < 2) throw std::domain_error("alpha_profile: points must be >= 2");
  std::vector<double> alphas(static_cast<std::size_t>(points));
  const double step = (alpha_hi - alpha_lo) / (points - 1);
  for (int i = 0; i < points; ++i) alphas[i] = alpha_lo + step * i;
  alphas.back() = alpha_hi;

  std::vector<ProfilePoint> out(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    const LevyContext ctx = ctx_template.with_alpha(alphas[i]);
    const TransferMatrix M = potential_matrix(ctx, pot, energy);
    out[i] = ProfilePoint{alphas[i], log10_R_l(M), log10_T(M), log10_abs_cpa(M)};
  });
  return out;
}

}  // namespace fracscatter
