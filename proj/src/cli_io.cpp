#include "fracscatter/cli_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fracscatter/boundary_oracle.hpp"
#include "fracscatter/delta_analytics.hpp"

namespace fracscatter::cli {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt17(const std::optional<double>& x) { return x ? fmt17(*x) : std::string(); }

}  // namespace

Potential RunConfig::make_potential() const {
  if (potential == "delta") {
    if (zeta_re || zeta_im) {
      return ComplexDelta{cplx{zeta_re.value_or(0.0), zeta_im.value_or(0.0)}, 0.0};
    }
    return ComplexDelta{cplx{0.0, -rho}, 0.0};
  }
  return ComplexBarrier{cplx{v1, v2}, width};
}

LevyContext RunConfig::make_context(double alpha) const { return LevyContext(alpha, v, mass, hbar); }

std::string RunConfig::echo() const {
  std::ostringstream os;
  os << "# fracscatter " << subcommand << "\n";
  const auto put = [&](const char* key, const std::string& val) {
    os << key << " = " << val << "\n";
  };
  const bool is_delta_cmd = subcommand == "delta-ss";
  const bool is_find = subcommand == "barrier-ss" || subcommand == "barrier-cpa";
  const bool is_scan = subcommand == "scan";
  const bool is_track = subcommand == "track";
  const bool is_profile = subcommand == "profile";
  if (subcommand == "preset") {
    put("id", preset_id);
    put("output", output);
    put("format", format);
    return os.str();
  }
  if (is_scan || is_track || is_profile) put("potential", potential);
  if (is_delta_cmd || potential == "delta") {
    put("rho", fmt17(rho));
    if (zeta_re) put("zeta-re", fmt17(*zeta_re));
    if (zeta_im) put("zeta-im", fmt17(*zeta_im));
  }
  if (is_find || potential == "barrier") {
    put("v1", fmt17(v1));
    put("v2", fmt17(v2));
    put("b", fmt17(width));
  }
  if (is_delta_cmd || is_find) {
    std::string list = "[";
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      list += (i ? ", " : "") + fmt17(alphas[i]);
    }
    put("alpha", list + "]");
  }
  if (is_find || is_scan || is_track) {
    put("e-min", fmt17(e_min));
    put("e-max", fmt17(e_max));
    put("e-points", fmt17(static_cast<double>(e_points)));
  }
  if (is_scan) put("e-scale", e_scale);
  if (is_scan || is_track || is_profile) {
    put("alpha-min", fmt17(alpha_min));
    put("alpha-max", fmt17(alpha_max));
    put("alpha-points", fmt17(static_cast<double>(alpha_points)));
  }
  if (is_profile) put("e", fmt17(energy));
  if (is_track) put("kind", kind);
  if (is_find || is_track) put("threshold", fmt17(threshold));
  if (is_track) put("window", fmt17(window));
  if (is_find) put("deepest-only", deepest_only ? "true" : "false");
  if (is_find && dump_matrix_energy) put("dump-matrix", fmt17(*dump_matrix_energy));
  if (is_delta_cmd && dump_matrix_energy) put("dump-matrix", fmt17(*dump_matrix_energy));
  put("v", fmt17(v));
  put("m", fmt17(mass));
  put("hbar", fmt17(hbar));
  put("output", output);
  put("format", format);
  return os.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.subcommand == b.subcommand && a.potential == b.potential && a.rho == b.rho &&
         a.zeta_re == b.zeta_re && a.zeta_im == b.zeta_im && a.v1 == b.v1 && a.v2 == b.v2 &&
         a.width == b.width && a.alphas == b.alphas && a.v == b.v && a.mass == b.mass &&
         a.hbar == b.hbar && a.e_min == b.e_min && a.e_max == b.e_max &&
         a.e_points == b.e_points && a.e_scale == b.e_scale && a.alpha_min == b.alpha_min &&
         a.alpha_max == b.alpha_max && a.alpha_points == b.alpha_points &&
         a.energy == b.energy && a.kind == b.kind && a.threshold == b.threshold &&
         a.window == b.window && a.deepest_only == b.deepest_only && a.output == b.output &&
         a.format == b.format && a.dump_matrix_energy == b.dump_matrix_energy &&
         a.preset_id == b.preset_id;
}

namespace {

void add_context_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--v", cfg.v, "characteristic velocity (natural units)")
      ->capture_default_str();
  sub->add_option("--m", cfg.mass, "mass (natural units)")->capture_default_str();
  sub->add_option("--hbar", cfg.hbar, "action quantum (natural units)")->capture_default_str();
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-o,--output", cfg.output, "output path, - for stdout")->capture_default_str();
  sub->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_barrier_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--v1", cfg.v1, "barrier height, real part")->capture_default_str();
  sub->add_option("--v2", cfg.v2, "barrier height, imaginary part")->capture_default_str();
  sub->add_option("--b", cfg.width, "barrier width")->capture_default_str();
}

void add_egrid_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--e-min", cfg.e_min, "energy range start")->capture_default_str();
  sub->add_option("--e-max", cfg.e_max, "energy range end")->capture_default_str();
  sub->add_option("--e-points", cfg.e_points, "energy grid points")->capture_default_str();
}

void add_alpha_grid_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--alpha-min", cfg.alpha_min, "Levy index range start")->capture_default_str();
  sub->add_option("--alpha-max", cfg.alpha_max, "Levy index range end")->capture_default_str();
  sub->add_option("--alpha-points", cfg.alpha_points, "Levy index grid points")
      ->capture_default_str();
}

void validate_domain(const RunConfig& cfg) {
  for (double a : cfg.alphas) (void)cfg.make_context(a);  // throws with the violated invariant
  if (cfg.subcommand == "scan" || cfg.subcommand == "track" || cfg.subcommand == "profile") {
    (void)cfg.make_context(cfg.alpha_min);
    (void)cfg.make_context(cfg.alpha_max);
  }
  if (cfg.subcommand == "delta-ss" && !(cfg.zeta_re || cfg.zeta_im) && !(cfg.rho > 0.0)) {
    throw std::domain_error("rho must be positive");
  }
  const Potential pot = cfg.make_potential();
  if (const auto* barrier = std::get_if<ComplexBarrier>(&pot); barrier && !(barrier->width > 0.0)) {
    throw std::domain_error("barrier width b must be positive");
  }
}

}  // namespace

ParseResult parse_config(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("fracscatter");
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

ParseResult parse_config(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"scattering observables of the 1-D fractional Schrodinger equation for "
               "non-Hermitian delta and rectangular-barrier potentials"};
  app.require_subcommand(0, 1);

  auto* delta_ss = app.add_subcommand("delta-ss", "analytic delta SS energy and shift class");
  delta_ss->add_option("--rho", cfg.rho, "delta strength rho (zeta = -i rho)")
      ->capture_default_str();
  double zre = 0.0, zim = 0.0;
  auto* opt_zre = delta_ss->add_option("--zeta-re", zre, "delta strength, real part");
  auto* opt_zim = delta_ss->add_option("--zeta-im", zim, "delta strength, imaginary part");
  delta_ss->add_option("--alpha", cfg.alphas, "Levy index values")->capture_default_str();

  auto* barrier_ss = app.add_subcommand("barrier-ss", "numerical SS location for the barrier");
  auto* barrier_cpa = app.add_subcommand("barrier-cpa", "numerical CPA location for the barrier");
  for (auto* sub : {barrier_ss, barrier_cpa}) {
    add_barrier_options(sub, cfg);
    sub->add_option("--alpha", cfg.alphas, "Levy index values")->capture_default_str();
    add_egrid_options(sub, cfg);
    sub->add_option("--threshold", cfg.threshold, "detection threshold, decades below median")
        ->capture_default_str();
    sub->add_flag("--deepest-only", cfg.deepest_only, "keep only the deepest report per alpha");
    sub->add_option("--dump-matrix", [&cfg](const std::vector<std::string>& vals) {
          cfg.dump_matrix_energy = std::stod(vals.at(0));
          return true;
        },
        "dump the transfer matrix at this energy as JSON to stderr")
        ->expected(1);
  }
  delta_ss->add_option("--dump-matrix", [&cfg](const std::vector<std::string>& vals) {
        cfg.dump_matrix_energy = std::stod(vals.at(0));
        return true;
      },
      "dump the transfer matrix at this energy as JSON to stderr")
      ->expected(1);

  auto* scan = app.add_subcommand("scan", "2-D (E, alpha) field of log10 observables");
  auto* track = app.add_subcommand("track", "follow sub-peaks across decreasing alpha");
  auto* profile = app.add_subcommand("profile", "fixed-energy cut across alpha");
  for (auto* sub : {scan, track, profile}) {
    sub->add_option("--potential", cfg.potential, "delta | barrier")
        ->check(CLI::IsMember({"delta", "barrier"}))
        ->capture_default_str();
    sub->add_option("--rho", cfg.rho, "delta strength rho (zeta = -i rho)")
        ->capture_default_str();
    add_barrier_options(sub, cfg);
    add_alpha_grid_options(sub, cfg);
  }
  add_egrid_options(scan, cfg);
  scan->add_option("--e-scale", cfg.e_scale, "linear | log")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  add_egrid_options(track, cfg);
  track->add_option("--kind", cfg.kind, "ss | cpa")
      ->check(CLI::IsMember({"ss", "cpa"}))
      ->capture_default_str();
  track->add_option("--threshold", cfg.threshold, "development threshold, decades below median")
      ->capture_default_str();
  track->add_option("--window", cfg.window, "continuation window, E grid spacings")
      ->capture_default_str();
  profile->add_option("--e", cfg.energy, "cut energy")->capture_default_str();

  auto* preset = app.add_subcommand("preset", "reproduce one figure's data");
  preset->add_option("id", cfg.preset_id, "fig1 .. fig10")
      ->required()
      ->check(CLI::IsMember(preset_ids()));

  app.add_subcommand("check", "run the invariant suite");

  for (auto* sub : {delta_ss, barrier_ss, barrier_cpa, scan, track, profile}) {
    sub->set_config("--config", "", "flat key = value config file");
    add_context_options(sub, cfg);
    add_output_options(sub, cfg);
  }
  add_output_options(preset, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return ParseResult{std::nullopt, 0};
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return ParseResult{std::nullopt, 2};
  }

  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return ParseResult{std::nullopt, 2};
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (opt_zre->count() > 0) cfg.zeta_re = zre;
  if (opt_zim->count() > 0) cfg.zeta_im = zim;
  if (cfg.subcommand == "barrier-cpa") cfg.kind = "cpa";
  if (cfg.subcommand == "barrier-ss") cfg.kind = "ss";
  if (cfg.subcommand != "scan" && cfg.subcommand != "track" && cfg.subcommand != "profile") {
    cfg.potential = cfg.subcommand == "delta-ss" ? "delta" : "barrier";
  }

  try {
    if (cfg.subcommand != "preset" && cfg.subcommand != "check") validate_domain(cfg);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseResult{std::nullopt, 2};
  }

  std::cerr << cfg.echo();
  return ParseResult{cfg, 0};
}

std::vector<std::string> preset_ids() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"};
}

RunConfig figure_preset(const std::string& id) {
  RunConfig c;
  c.v = 1e-5;
  if (id == "fig1" || id == "fig2") {
    c.subcommand = "delta-ss";
    c.potential = "delta";
    c.rho = id == "fig1" ? 1.5 : 1e-5;
    c.alphas = {2.0, 1.9, 1.85};
    return c;
  }
  if (id == "fig3" || id == "fig7") {
    c.subcommand = id == "fig3" ? "barrier-ss" : "barrier-cpa";
    c.kind = id == "fig3" ? "ss" : "cpa";
    c.potential = "barrier";
    c.v1 = id == "fig3" ? 9.1675 : 0.1;
    c.v2 = id == "fig3" ? -10.0 : 5.0;
    c.width = 10.0;
    c.alphas = {2.0, 1.99, 1.98, 1.95};
    c.e_min = id == "fig3" ? 100.0 : 1.0;
    c.e_max = id == "fig3" ? 900.0 : 400.0;
    c.e_points = 8000;
    c.threshold = 1.0;
    c.deepest_only = true;
    return c;
  }
  if (id == "fig4" || id == "fig9") {
    c.subcommand = "track";
    c.potential = "barrier";
    c.kind = id == "fig4" ? "ss" : "cpa";
    c.v1 = id == "fig4" ? 9.1675 : 0.1;
    c.v2 = id == "fig4" ? -10.0 : 5.0;
    c.width = 10.0;
    c.e_min = id == "fig4" ? 100.0 : 60.0;
    c.e_max = id == "fig4" ? 360.0 : 157.0;
    c.e_points = 4000;
    c.alpha_min = id == "fig4" ? 1.98 : 1.97;
    c.alpha_max = 2.0;
    c.alpha_points = 200;
    c.threshold = 6.0;
    c.window = 8.0;
    return c;
  }
  if (id == "fig5" || id == "fig8") {
    c.subcommand = "scan";
    c.potential = "barrier";
    c.v1 = id == "fig5" ? 9.1675 : 0.1;
    c.v2 = id == "fig5" ? -10.0 : 5.0;
    c.width = 10.0;
    c.e_min = id == "fig5" ? 270.0 : 60.0;
    c.e_max = id == "fig5" ? 278.0 : 130.0;
    c.e_points = id == "fig5" ? 800 : 1400;
    c.alpha_min = id == "fig5" ? 1.996 : 1.992;
    c.alpha_max = 2.0;
    c.alpha_points = 100;
    return c;
  }
  if (id == "fig6") {
    c.subcommand = "profile";
    c.potential = "barrier";
    c.v1 = 9.1675;
    c.v2 = -10.0;
    c.width = 10.0;
    c.energy = 280.0;
    c.alpha_min = 1.98;
    c.alpha_max = 2.0;
    c.alpha_points = 2000;
    return c;
  }
  if (id == "fig10") {
    c.subcommand = "profile";  // run() loops the figure's eight energies
    c.preset_id = "fig10";
    c.potential = "barrier";
    c.v1 = 0.1;
    c.v2 = 5.0;
    c.width = 10.0;
    c.alpha_min = 1.4;
    c.alpha_max = 2.0;
    c.alpha_points = 3000;
    return c;
  }
  throw std::domain_error("unknown preset id: " + id);
}

namespace {

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output path: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit_reports(std::ostream& os, const std::string& format,
                  const std::vector<SingularityReport>& reports) {
  if (format == "csv") {
    os << "kind,alpha_star,e_star,residual,depth,bracket_lo,bracket_hi,certificate\n";
    for (const auto& r : reports) {
      os << to_string(r.kind) << ',' << fmt17(r.alpha_star) << ',' << fmt17(r.e_star) << ','
         << fmt17(r.residual) << ',' << fmt17(r.depth) << ',' << fmt17(r.bracket_lo) << ','
         << fmt17(r.bracket_hi) << ',' << (std::isnan(r.certificate) ? "" : fmt17(r.certificate))
         << '\n';
    }
    return;
  }
  os << "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << (i ? ",\n " : "\n ") << "{\"kind\":\"" << to_string(r.kind) << "\",\"e_star\":"
       << fmt17(r.e_star) << ",\"alpha_star\":" << fmt17(r.alpha_star) << ",\"residual\":"
       << fmt17(r.residual) << ",\"depth\":" << fmt17(r.depth) << ",\"bracket\":["
       << fmt17(r.bracket_lo) << "," << fmt17(r.bracket_hi) << "]";
    if (!std::isnan(r.certificate)) os << ",\"certificate\":" << fmt17(r.certificate);
    os << "}";
  }
  os << "\n]\n";
}

void emit_tracks(std::ostream& os, const std::string& format,
                 const std::vector<SubPeakTrack>& tracks) {
  if (format == "csv") {
    os << "peak_id,alpha,e_peak,log10R,log10T,developed_at\n";
    for (const auto& t : tracks) {
      for (const auto& s : t.samples) {
        os << t.peak_id << ',' << fmt17(s.alpha) << ',' << fmt17(s.e_peak) << ','
           << fmt17(s.log10_R) << ',' << fmt17(s.log10_T) << ',' << fmt17(t.developed_at) << '\n';
      }
    }
    return;
  }
  os << "[";
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    const auto& t = tracks[i];
    os << (i ? ",\n " : "\n ") << "{\"peak_id\":" << t.peak_id << ",\"developed_at\":"
       << (t.developed_at ? fmt17(*t.developed_at) : std::string("null")) << ",\"samples\":[";
    for (std::size_t s = 0; s < t.samples.size(); ++s) {
      const auto& smp = t.samples[s];
      os << (s ? "," : "") << "[" << fmt17(smp.alpha) << "," << fmt17(smp.e_peak) << ","
         << fmt17(smp.log10_R) << "," << fmt17(smp.log10_T) << "]";
    }
    os << "]}";
  }
  os << "\n]\n";
}

void emit_scan(std::ostream& os, const std::string& format, const ScanField& r,
               const ScanField& t, const ScanField& m22, const ScanField& c) {
  const std::size_t rows = r.alphas.size(), cols = r.energies.size();
  if (format == "csv") {
    os << "alpha,E,log10R,log10T,log10_abs_m22,log10_abs_C\n";
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        os << fmt17(r.alphas[i]) << ',' << fmt17(r.energies[j]) << ',' << fmt17(r.at(i, j)) << ','
           << fmt17(t.at(i, j)) << ',' << fmt17(m22.at(i, j)) << ',' << fmt17(c.at(i, j)) << '\n';
      }
    }
    return;
  }
  os << "[";
  bool first = true;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      os << (first ? "\n " : ",\n ") << "{\"alpha\":" << fmt17(r.alphas[i]) << ",\"E\":"
         << fmt17(r.energies[j]) << ",\"log10R\":" << fmt17(r.at(i, j)) << ",\"log10T\":"
         << fmt17(t.at(i, j)) << ",\"log10_abs_m22\":" << fmt17(m22.at(i, j))
         << ",\"log10_abs_C\":" << fmt17(c.at(i, j)) << "}";
      first = false;
    }
  }
  os << "\n]\n";
}

void emit_profile(std::ostream& os, const std::string& format, std::optional<double> energy,
                  const std::vector<ProfilePoint>& points, bool header = true) {
  if (format == "csv") {
    if (header) os << (energy ? "E," : "") << "alpha,log10R,log10T,log10_abs_C\n";
    for (const auto& p : points) {
      if (energy) os << fmt17(*energy) << ',';
      os << fmt17(p.alpha) << ',' << fmt17(p.log10_R) << ',' << fmt17(p.log10_T) << ','
         << fmt17(p.log10_abs_C) << '\n';
    }
    return;
  }
  os << "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    os << (i ? ",\n " : "\n ") << "{";
    if (energy) os << "\"E\":" << fmt17(*energy) << ",";
    os << "\"alpha\":" << fmt17(p.alpha) << ",\"log10R\":" << fmt17(p.log10_R) << ",\"log10T\":"
       << fmt17(p.log10_T) << ",\"log10_abs_C\":" << fmt17(p.log10_abs_C) << "}";
  }
  os << "\n]\n";
}

int run_delta_ss(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  if (cfg.zeta_re || cfg.zeta_im) {
    const cplx zeta{cfg.zeta_re.value_or(0.0), cfg.zeta_im.value_or(0.0)};
    const auto check = ss_phase_condition(zeta);
    if (!check.admits_ss) {
      err << "delta strength phase is not -pi/2: no real SS energy exists "
             "(zeta must equal -i rho, rho > 0)\n";
      return 1;
    }
  }
  const double rho = (cfg.zeta_re || cfg.zeta_im)
                         ? std::abs(cplx{cfg.zeta_re.value_or(0.0), cfg.zeta_im.value_or(0.0)})
                         : cfg.rho;
  if (cfg.format == "csv") os << "alpha,e_ss,rho,shift_class\n";
  else os << "[";
  for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
    const LevyContext ctx = cfg.make_context(cfg.alphas[i]);
    const DeltaSSResult res = delta_ss(ctx, rho);
    if (cfg.dump_matrix_energy) {
      err << to_json(delta_matrix(ctx, cplx{0.0, -rho}, *cfg.dump_matrix_energy)) << "\n";
    }
    if (cfg.format == "csv") {
      os << fmt17(res.alpha) << ',' << fmt17(res.e_ss) << ',' << fmt17(res.rho) << ','
         << to_string(res.shift_class) << '\n';
    } else {
      os << (i ? ",\n " : "\n ") << "{\"alpha\":" << fmt17(res.alpha) << ",\"e_ss\":"
         << fmt17(res.e_ss) << ",\"rho\":" << fmt17(res.rho) << ",\"shift_class\":\""
         << to_string(res.shift_class) << "\"}";
    }
  }
  if (cfg.format != "csv") os << "\n]\n";
  return 0;
}

int run_find(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Potential pot = cfg.make_potential();
  const SingularityKind kind = cfg.kind == "cpa" ? SingularityKind::CPA : SingularityKind::SS;
  FindOptions opts;
  opts.e_points = cfg.e_points;
  opts.threshold_decades = cfg.threshold;
  std::vector<SingularityReport> all;
  for (double a : cfg.alphas) {
    const LevyContext ctx = cfg.make_context(a);
    if (cfg.dump_matrix_energy) {
      err << to_json(potential_matrix(ctx, pot, *cfg.dump_matrix_energy)) << "\n";
    }
    auto reports = kind == SingularityKind::SS ? find_ss(pot, ctx, cfg.e_min, cfg.e_max, opts)
                                               : find_cpa(pot, ctx, cfg.e_min, cfg.e_max, opts);
    if (cfg.deepest_only && !reports.empty()) {
      const auto deepest = std::min_element(
          reports.begin(), reports.end(),
          [](const auto& x, const auto& y) { return x.residual < y.residual; });
      reports = {*deepest};
    }
    all.insert(all.end(), reports.begin(), reports.end());
  }
  emit_reports(os, cfg.format, all);
  return 0;
}

int run_scan(const RunConfig& cfg, std::ostream& os) {
  const Potential pot = cfg.make_potential();
  const LevyContext ctx = cfg.make_context(cfg.alpha_max);
  ScanGrid grid{cfg.e_min, cfg.e_max, cfg.e_points,
                cfg.e_scale == "log" ? EScale::Logarithmic : EScale::Linear,
                cfg.alpha_min, cfg.alpha_max, cfg.alpha_points};
  const auto r = scan_field(pot, ctx, grid, Observable::R);
  const auto t = scan_field(pot, ctx, grid, Observable::T);
  const auto m22 = scan_field(pot, ctx, grid, Observable::AbsM22);
  const auto c = scan_field(pot, ctx, grid, Observable::AbsC);
  emit_scan(os, cfg.format, r, t, m22, c);
  return 0;
}

int run_track(const RunConfig& cfg, std::ostream& os) {
  const Potential pot = cfg.make_potential();
  const LevyContext ctx = cfg.make_context(cfg.alpha_max);
  ScanGrid grid{cfg.e_min, cfg.e_max, cfg.e_points, EScale::Linear,
                cfg.alpha_min, cfg.alpha_max, cfg.alpha_points};
  TrackOptions opts;
  opts.threshold_decades = cfg.threshold;
  opts.window_spacings = cfg.window;
  const auto tracks = track_subpeaks(
      pot, ctx, grid, cfg.kind == "cpa" ? SingularityKind::CPA : SingularityKind::SS, opts);
  emit_tracks(os, cfg.format, tracks);
  return 0;
}

int run_profile(const RunConfig& cfg, std::ostream& os) {
  const Potential pot = cfg.make_potential();
  const LevyContext ctx = cfg.make_context(cfg.alpha_max);
  if (cfg.preset_id == "fig10") {
    const double energies[] = {50, 100, 200, 400, 600, 800, 1500, 2000};
    bool header = true;
    if (cfg.format != "csv") os << "{";
    bool first = true;
    for (double e : energies) {
      const auto points = alpha_profile(pot, ctx, e, cfg.alpha_min, cfg.alpha_max,
                                        cfg.alpha_points);
      if (cfg.format == "csv") {
        emit_profile(os, cfg.format, e, points, header);
        header = false;
      } else {
        os << (first ? "\n\"" : ",\n\"") << fmt17(e) << "\":";
        emit_profile(os, cfg.format, std::nullopt, points, false);
        first = false;
      }
    }
    if (cfg.format != "csv") os << "}\n";
    return 0;
  }
  const auto points =
      alpha_profile(pot, ctx, cfg.energy, cfg.alpha_min, cfg.alpha_max, cfg.alpha_points);
  emit_profile(os, cfg.format, std::nullopt, points);
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "preset") {
      RunConfig bound = figure_preset(config.preset_id);
      bound.output = config.output;
      bound.format = config.format;
      bound.preset_id = config.preset_id;
      return run(bound, out, err);
    }
    Output sink(config.output, out);
    std::ostream& os = sink.stream();
    if (config.subcommand == "delta-ss") return run_delta_ss(config, os, err);
    if (config.subcommand == "barrier-ss" || config.subcommand == "barrier-cpa") {
      return run_find(config, os, err);
    }
    if (config.subcommand == "scan") return run_scan(config, os);
    if (config.subcommand == "track") return run_track(config, os);
    if (config.subcommand == "profile") return run_profile(config, os);
    if (config.subcommand == "check") return run_check(os) ? 0 : 1;
    err << "error: unknown subcommand " << config.subcommand << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

bool run_check(std::ostream& out) {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  bool all_ok = true;
  const auto report = [&](const char* name, bool ok) {
    out << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    all_ok = all_ok && ok;
  };

  // unit determinant across the randomized sweep
  {
    int checked = 0;
    bool ok = true;
    while (checked < 10000) {
      const double alpha = 1.0 + 1e-6 + (1.0 - 1e-6) * uni(rng);
      const double e = std::pow(10.0, -3.0 + 7.0 * uni(rng));
      const double b = std::pow(10.0, -1.0 + 3.0 * uni(rng));
      const cplx V{200.0 * uni(rng) - 100.0, 200.0 * uni(rng) - 100.0};
      const LevyContext ctx(alpha, 1e-5);
      TransferMatrix M;
      if (uni(rng) < 0.5) {
        M = delta_matrix(ctx, V, e);
      } else {
        const cplx kbar = inside_wavenumber(ctx, e, V);
        if (std::abs(kbar.imag()) * b > 600.0) continue;  // cosh overflow; resample
        M = barrier_matrix(ctx, V, b, e);
      }
      const double scale = std::max(1.0, std::abs(M.m11 * M.m22) + std::abs(M.m12 * M.m21));
      if (!(std::abs(M.det() - 1.0) <= 1e-10 * scale)) ok = false;
      ++checked;
    }
    report("det M = 1 over randomized sweep (1e4 draws)", ok);
  }

  // mu1^2 - mu2^2 = 1
  {
    bool ok = true;
    for (int i = 0; i < 10000; ++i) {
      const double mag = std::pow(10.0, -6.0 + 12.0 * uni(rng));
      const double phase = 2.0 * M_PI * uni(rng) - M_PI;
      const auto [mu1, mu2] = mu_pair(std::polar(mag, phase));
      const double scale = std::max(1.0, std::abs(mu1 * mu1) + std::abs(mu2 * mu2));
      if (!(std::abs(mu1 * mu1 - mu2 * mu2 - 1.0) <= 1e-12 * scale)) ok = false;
    }
    report("mu1^2 - mu2^2 = 1 over |eps| in [1e-6, 1e6]", ok);
  }

  // alpha = 2 reduction: entries equal the standard-QM closed form
  {
    bool ok = true;
    for (int i = 0; i < 2000; ++i) {
      const double e = 0.5 + 100.0 * uni(rng);
      const double b = 0.1 + 5.0 * uni(rng);
      const cplx V{30.0 * uni(rng) - 15.0, 30.0 * uni(rng) - 15.0};
      if (std::abs(e - V.real()) < 1e-6 && std::abs(V.imag()) < 1e-6) continue;
      const LevyContext ctx(2.0, 1e-5);
      const TransferMatrix M = barrier_matrix(ctx, V, b, e);
      const cplx i_unit{0.0, 1.0};
      const double k = std::sqrt(2.0 * ctx.m * e) / ctx.hbar;
      const cplx kb = std::sqrt(2.0 * ctx.m * (cplx{e, 0.0} - V)) / ctx.hbar;
      const cplx eps = k / kb;
      const cplx mu1 = 0.5 * (eps + 1.0 / eps), mu2 = 0.5 * (eps - 1.0 / eps);
      const cplx c = std::cos(kb * b), s = std::sin(kb * b);
      const TransferMatrix S{(c - i_unit * mu1 * s) * std::exp(i_unit * k * b),
                             i_unit * mu2 * s, -i_unit * mu2 * s,
                             (c + i_unit * mu1 * s) * std::exp(-i_unit * k * b)};
      const std::pair<cplx, cplx> entries[] = {
          {M.m11, S.m11}, {M.m12, S.m12}, {M.m21, S.m21}, {M.m22, S.m22}};
      for (const auto& [a, bb] : entries) {
        if (!(std::abs(a - bb) <= 1e-12 * std::max(1.0, std::abs(bb)))) ok = false;
      }
    }
    report("alpha = 2 barrier matrix reduces to the standard-QM closed form", ok);
  }

  // Hermitian unitarity at alpha = 2
  {
    bool ok = true;
    for (int i = 0; i < 2000; ++i) {
      const double e = 0.5 + 100.0 * uni(rng);
      const double vr = 100.0 * uni(rng) - 50.0;
      if (std::abs(e - vr) < 1e-6) continue;
      const LevyContext ctx(2.0, 1e-5);
      const auto s = scattering_set(barrier_matrix(ctx, cplx{vr, 0.0}, 0.1 + 5.0 * uni(rng), e));
      if (!(std::abs(s.T + s.R_l - 1.0) <= 1e-10)) ok = false;
    }
    report("R + T = 1 for real barriers at alpha = 2", ok);
  }

  // closed form vs boundary-matching oracle
  {
    int checked = 0;
    bool ok = true;
    while (checked < 1000) {
      const double alpha = 1.0 + 1e-3 + (1.0 - 1e-3) * uni(rng);
      const double e = 1.0 + 999.0 * uni(rng);
      const double b = 0.1 + 19.9 * uni(rng);
      const cplx V{40.0 * uni(rng) - 20.0, 40.0 * uni(rng) - 20.0};
      const LevyContext ctx(alpha, 1e-5);
      const cplx kbar = inside_wavenumber(ctx, e, V);
      if (std::abs(kbar.imag()) * b > 60.0) continue;  // keep the 4x4 solve well conditioned
      const TransferMatrix M = barrier_matrix(ctx, V, b, e);
      if (std::abs(M.m22) < 1e-8) continue;
      const auto s = scattering_set(M);
      const auto o = boundary_matching_scattering(ctx, V, b, e);
      const auto close = [](cplx x, cplx y) {
        return std::abs(x - y) <= 1e-10 * std::max({1.0, std::abs(x), std::abs(y)});
      };
      if (!close(s.t_l, o.t) || !close(s.r_l, o.r_l) || !close(s.r_r, o.r_r)) ok = false;
      ++checked;
    }
    report("closed-form scattering matches the 4x4 boundary-matching oracle (1e3 draws)", ok);
  }

  return all_ok;
}

}  // namespace fracscatter::cli
