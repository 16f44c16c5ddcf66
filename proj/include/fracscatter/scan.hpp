#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracscatter/transfer_matrix.hpp"

namespace fracscatter {

enum class Observable { R, T, AbsM22, AbsC };
enum class EScale { Linear, Logarithmic };
enum class SingularityKind { SS, CPA };

const char* to_string(Observable o);
const char* to_string(SingularityKind k);

/// Worker count used for grid evaluation: FRACSCATTER_THREADS if set,
/// otherwise the machine parallelism. Output never depends on it.
int worker_count();

struct ScanGrid {
  double e_min, e_max;
  int e_points;
  EScale e_scale = EScale::Linear;
  double alpha_min, alpha_max;
  int alpha_points;

  void validate() const;
  std::vector<double> energies() const;
  std::vector<double> alphas() const;  // ascending
};

/// Dense log10 field, one row per alpha (ascending), one column per energy.
/// Entries saturate at +-308; branch-point grid points (E == Re V with
/// Im V == 0) are flagged as NaN and skipped by consumers.
struct ScanField {
  std::vector<double> alphas;
  std::vector<double> energies;
  std::vector<double> values;  // row-major, alphas.size() x energies.size()

  double at(std::size_t row, std::size_t col) const { return values[row * energies.size() + col]; }
};

ScanField scan_field(const Potential& pot, const LevyContext& ctx_template, const ScanGrid& grid,
                     Observable obs);

/// |m22| for SS, |C| for CPA, at the given (potential, ctx, E).
/// Branch points return NaN.
double singularity_residual(const Potential& pot, const LevyContext& ctx, double energy,
                            SingularityKind kind);

struct GoldenResult {
  double x;
  double fx;
  int iterations;
};

/// Derivative-free bracketed minimization, stopping at relative bracket
/// width rel_tol or max_iters.
GoldenResult golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol = 1e-10, int max_iters = 200);

struct SingularityReport {
  SingularityKind kind;
  double e_star;
  double alpha_star;
  double residual;     // |m22| or |C| at the optimum
  double depth;        // log10(median residual on grid / residual at optimum)
  double bracket_lo;
  double bracket_hi;
  double certificate;  // |mu2^2 sin^2(kbar b) - 1| at e_star (CPA barrier), else NaN
};

struct FindOptions {
  int e_points = 4000;
  double threshold_decades = 6.0;
  double refine_rel_tol = 1e-10;
  int max_iters = 200;
};

/// Grid + golden-section location of deep minima of |m22| over [e_lo, e_hi].
/// Reports with depth below the threshold are dropped; an empty list is not
/// an error. Sorted by energy.
std::vector<SingularityReport> find_ss(const Potential& pot, const LevyContext& ctx, double e_lo,
                                       double e_hi, const FindOptions& opts = {});

/// Same protocol on |C|; each report carries the transcendental certificate.
std::vector<SingularityReport> find_cpa(const Potential& pot, const LevyContext& ctx, double e_lo,
                                        double e_hi, const FindOptions& opts = {});

struct SubPeakTrack {
  struct Sample {
    double alpha;
    double e_peak;
    double log10_R;
    double log10_T;
  };
  int peak_id = 0;                    // by increasing E at alpha = 2
  std::vector<Sample> samples;        // ordered by decreasing alpha
  std::optional<double> developed_at;  // alpha where depth first crosses the threshold
};

struct TrackOptions {
  double threshold_decades = 6.0;
  /// Continuation window in units of the E grid spacing per alpha step.
  double window_spacings = 1.0;
  /// After grid continuation, refine the development alpha by nested
  /// golden-section (alpha outer, E inner) around the deepest row; row-level
  /// refinement in E alone cannot certify a deep two-parameter zero.
  bool refine_development = true;
};

/// Follows sub-peaks of the alpha = 2 row with E above the main SS/CPA energy
/// across decreasing alpha. Tracks that lose their peak are closed with
/// developed_at absent.
std::vector<SubPeakTrack> track_subpeaks(const Potential& pot, const LevyContext& ctx_template,
                                         const ScanGrid& grid, SingularityKind kind,
                                         const TrackOptions& opts = {});

struct ProfilePoint {
  double alpha;
  double log10_R;
  double log10_T;
  double log10_abs_C;
};

/// Fixed-energy cut across alpha.
std::vector<ProfilePoint> alpha_profile(const Potential& pot, const LevyContext& ctx_template,
                                        double energy, double alpha_lo, double alpha_hi,
                                        int points);

}  // namespace fracscatter
