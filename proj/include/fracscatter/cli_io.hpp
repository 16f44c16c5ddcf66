#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracscatter/scan.hpp"

namespace fracscatter::cli {

/// Fully-resolved run parameters for one CLI invocation. Flags override
/// config-file values; the resolved config is echoed to stderr in the same
/// flat `key = value` form the config file uses.
struct RunConfig {
  std::string subcommand;

  // potential
  std::string potential = "barrier";  // delta | barrier
  double rho = 1.5;
  std::optional<double> zeta_re, zeta_im;  // delta strength with general phase
  double v1 = 0.0, v2 = 0.0;               // barrier height V1 + i V2
  double width = 10.0;

  // context
  std::vector<double> alphas = {2.0};
  double v = 1e-5;
  double mass = 1.0;
  double hbar = 1.0;

  // grid
  double e_min = 1.0, e_max = 100.0;
  int e_points = 4000;
  std::string e_scale = "linear";  // linear | log
  double alpha_min = 1.98, alpha_max = 2.0;
  int alpha_points = 200;
  double energy = 100.0;  // profile cut

  // detection
  std::string kind = "ss";  // ss | cpa
  double threshold = 6.0;
  double window = 1.0;  // continuation window, E grid spacings
  bool deepest_only = false;

  // output
  std::string output = "-";
  std::string format = "csv";  // csv | json
  std::optional<double> dump_matrix_energy;

  std::string preset_id;  // preset subcommand

  Potential make_potential() const;
  LevyContext make_context(double alpha) const;

  /// Flat `key = value` echo; re-parsing it reproduces this config.
  std::string echo() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses argv (and an optional --config file; flags override file values).
/// Returns the resolved config, or an exit code if parsing terminated
/// (help: 0, usage error: 2).
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = 0;
};

ParseResult parse_config(int argc, const char* const* argv);
ParseResult parse_config(const std::vector<std::string>& args);

/// The ten frozen figure-reproduction presets (fig1 .. fig10).
RunConfig figure_preset(const std::string& id);
std::vector<std::string> preset_ids();

/// Executes a resolved config. Exit codes: 0 success, 1 numerical or I/O
/// failure, 2 usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Invariant suite behind the `check` subcommand: unit determinant,
/// alpha = 2 reduction, mu identity, boundary-matching oracle agreement.
bool run_check(std::ostream& out);

}  // namespace fracscatter::cli
