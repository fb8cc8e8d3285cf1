#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kgres/cli.hpp"
#include "kgres/constants.hpp"
#include "kgres/cutoffs.hpp"
#include "kgres/littlewood_paley.hpp"
#include "kgres/probes.hpp"
#include "kgres/report_io.hpp"
#include "kgres/smooth.hpp"

namespace kgres::cli {

namespace {

using json = nlohmann::ordered_json;

inline constexpr const char* kProbeSchema = "operator-probe/1";
inline constexpr const char* kCutoffExportSchema = "cutoff-export/1";

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  body(file);
  if (!file) throw std::runtime_error("write failed for " + path);
}

void emit_json(const std::string& path, std::ostream& out, const json& doc) {
  emit(path, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
}

void add_scan_options(CLI::App* cmd, ScanOptions& scan) {
  cmd->add_option("--r-max", scan.r_max, "Largest |eta| scanned")->check(CLI::PositiveNumber);
  cmd->add_option("--grid-step", scan.grid_step, "Scan step in r")->check(CLI::PositiveNumber);
  cmd->add_option("--tau-sep", scan.tau_sep, "Separation tolerance")->check(CLI::NonNegativeNumber);
}

std::vector<double> default_rhos() { return {1.0, 0.1, 0.01}; }

json probe_holder(int n, double box, int trials, std::uint64_t seed) {
  const Grid grid(1, static_cast<std::size_t>(n), box);
  const smooth::BumpProfile bump{};
  const std::vector<std::pair<std::string, Symbol>> symbols{
      {"gaussian", [](const Vec3& xi, const Vec3& eta) { return std::exp(-(dot(xi, xi) + dot(eta, eta))); }},
      {"tensor_bump", [bump](const Vec3& xi, const Vec3& eta) { return bump(norm(eta) / 2.0) * bump(norm(xi - eta) / 2.0); }},
      {"translation", [bump](const Vec3& xi, const Vec3& eta) { return bump(norm(xi - 2.0 * eta) / 2.0); }},
  };
  json rows = json::array();
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto p = holder_probe(grid, symbols[i].second, trials, seed + i);
    rows.push_back({{"symbol", symbols[i].first},
                    {"l1", p.bound.l1},
                    {"boundary_fraction", p.bound.boundary_fraction},
                    {"truncation_warning", p.bound.truncation_warning},
                    {"pairs", p.pairs},
                    {"max_ratio", p.max_ratio},
                    {"max_ratio_over_bound", p.max_ratio_over_bound}});
  }
  return rows;
}

json probe_translation(int n, double dk, double lambda, const std::vector<double>& rhos) {
  const Grid grid(1, static_cast<std::size_t>(n), 2.0 * std::numbers::pi / dk);
  json rows = json::array();
  for (const auto& r : translation_uniformity(grid, rhos, lambda)) rows.push_back({{"rho", r.rho}, {"l1", r.l1}});
  return rows;
}

json probe_radial_shell(int n, double box, double R, double s, const std::vector<double>& rhos) {
  const Grid grid(3, static_cast<std::size_t>(n), box);
  const std::vector<double> sigmas{1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
  json rows = json::array();
  for (double rho : rhos) rows.push_back({{"rho", rho}, {"ratio", radial_shell_ratio(grid, R, rho, s, sigmas)}});
  return rows;
}

json probe_bernstein(int n, double box, double p, double q, int j_max, int trials, std::uint64_t seed) {
  const Grid grid(1, static_cast<std::size_t>(n), box);
  json rows = json::array();
  for (int j = 0; j <= j_max; ++j) rows.push_back({{"j", j}, {"ratio", lp::bernstein_check(grid, j, p, q, trials, seed)}});
  return rows;
}

json probe_cutoff_bounds(double c, const ScanOptions& scan, const std::string& phase, const std::vector<double>& rhos,
                         int samples, std::uint64_t seed) {
  const CutoffFamily family(scan_all(c, scan), parse_phase_index(phase));
  const auto probe = bound_probe(family, rhos, samples, seed);
  json rows = json::array();
  for (const auto& r : probe.rows)
    rows.push_back({{"rho", r.rho}, {"sup_S_over_phi", r.sup_S_over_phi}, {"sup_T_over_grad", r.sup_T_over_grad}});
  return {{"rows", rows},
          {"exponent_S", probe.exponent_S},
          {"exponent_T", probe.exponent_T},
          {"n", probe.n},
          {"high_radius", probe.high_radius},
          {"high_sup_S_over_phi", probe.high_sup_S_over_phi},
          {"high_sup_T_over_grad", probe.high_sup_T_over_grad},
          {"high_exponent", probe.high_exponent}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Space-time resonance toolkit for two-speed Klein-Gordon systems", "kgres"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::string output;
  app.add_option("--seed", seed, "Seed for randomized probes");

  // resonances
  double c = 0.0;
  ScanOptions scan;
  auto* resonances = app.add_subcommand("resonances", "Scan all phases for space-time resonances");
  resonances->add_option("--c", c, "Fast speed")->required();
  add_scan_options(resonances, scan);
  resonances->add_option("-o,--output", output, "Output file (default stdout)");

  // sweep
  double c_from = 0.0, c_to = 0.0;
  int steps = 0;
  auto* sweep = app.add_subcommand("sweep", "Separation verdict over a range of speeds");
  sweep->add_option("--from", c_from)->required();
  sweep->add_option("--to", c_to)->required();
  sweep->add_option("--steps", steps)->required()->check(CLI::PositiveNumber);
  add_scan_options(sweep, scan);
  sweep->add_option("-o,--output", output);

  // constants
  double A = 10.0;
  int n_weight = 1;
  auto* constants = app.add_subcommand("constants", "Search admissible small/large constants");
  constants->add_option("--A", A)->check(CLI::PositiveNumber);
  constants->add_option("--n", n_weight)->check(CLI::PositiveNumber);
  constants->add_option("-o,--output", output);

  // cutoff-export
  std::string phase = "c11+--";
  std::string kind = "chi_S";
  double rho = 0.1, span = 0.5, delta0 = 0.0, M = 0.0;
  int nu = 101, nv = 101;
  std::vector<double> origin, u_dir, v_dir;
  std::string meta;
  auto* cutoff = app.add_subcommand("cutoff-export", "Evaluate one cut-off on a planar lattice in (xi, eta)");
  cutoff->add_option("--c", c)->required();
  cutoff->add_option("--phase", phase);
  cutoff->add_option("--kind", kind, "theta, chi_O, chi_O_tilde, chi_R, chi_S or chi_T");
  cutoff->add_option("--rho", rho)->check(CLI::PositiveNumber);
  cutoff->add_option("--nu", nu)->check(CLI::Range(2, 100000));
  cutoff->add_option("--nv", nv)->check(CLI::Range(2, 100000));
  cutoff->add_option("--span", span, "Half-width of the default plane")->check(CLI::PositiveNumber);
  cutoff->add_option("--origin", origin, "6 numbers")->expected(6)->delimiter(',');
  cutoff->add_option("--u", u_dir, "6 numbers")->expected(6)->delimiter(',');
  cutoff->add_option("--v", v_dir, "6 numbers")->expected(6)->delimiter(',');
  cutoff->add_option("--delta0", delta0)->check(CLI::NonNegativeNumber);
  cutoff->add_option("--M", M)->check(CLI::NonNegativeNumber);
  add_scan_options(cutoff, scan);
  cutoff->add_option("-o,--output", output, "CSV output");
  cutoff->add_option("--meta", meta, "JSON file echoing the family parameters");

  // operator-probe
  std::string probe = "holder";
  int trials = 100, grid_n = 0, j_max = 5, samples = 20000;
  double box = 0.0, dk = 1e-3, lambda = 2.0, shell_R = 0.5, s_weight = 0.5;
  double p_exp = std::numeric_limits<double>::infinity(), q_exp = 2.0;
  std::vector<double> rhos;
  auto* opprobe = app.add_subcommand("operator-probe", "Empirical operator-bound checks");
  opprobe->add_option("--probe", probe)->check(
      CLI::IsMember({"holder", "translation", "radial-shell", "bernstein", "cutoff-bounds"}));
  opprobe->add_option("--trials", trials)->check(CLI::PositiveNumber);
  opprobe->add_option("--grid", grid_n, "Points per axis");
  opprobe->add_option("--box", box, "Box length");
  opprobe->add_option("--dk", dk, "Lattice spacing in frequency (translation)")->check(CLI::PositiveNumber);
  opprobe->add_option("--lambda", lambda);
  opprobe->add_option("--rho", rhos)->delimiter(',');
  opprobe->add_option("--R", shell_R)->check(CLI::PositiveNumber);
  opprobe->add_option("--s", s_weight)->check(CLI::NonNegativeNumber);
  opprobe->add_option("--p", p_exp);
  opprobe->add_option("--q", q_exp);
  opprobe->add_option("--j-max", j_max)->check(CLI::NonNegativeNumber);
  opprobe->add_option("--c", c);
  opprobe->add_option("--phase", phase);
  opprobe->add_option("--samples", samples)->check(CLI::PositiveNumber);
  add_scan_options(opprobe, scan);
  opprobe->add_option("-o,--output", output);

  // simulate
  std::string config_path, csv_path;
  auto* simulate = app.add_subcommand("simulate", "Resonant amplification experiment from a config file");
  simulate->add_option("config", config_path)->required();
  simulate->add_option("-o,--output", output, "JSON record (overrides the config)");
  simulate->add_option("--csv", csv_path, "CSV time series (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*resonances) {
      const auto report = scan_all(c, scan);
      emit_json(output, out, io::to_json(report));
      return report.separated ? kExitOk : kExitNotSeparated;
    }
    if (*sweep) {
      const auto rows = sweep_speed(c_from, c_to, steps, scan);
      emit(output, out, [&](std::ostream& s) { io::write_sweep_csv(s, rows); });
      std::string summary;
      for (const auto& r : rows) {
        if (r.exceptional) summary += (summary.empty() ? "" : " ") + io::format_double(r.c);
      }
      err << "exceptional speeds: " << (summary.empty() ? "none" : summary) << '\n';
      return kExitOk;
    }
    if (*constants) {
      const auto search = find_admissible_constants(A, n_weight);
      emit_json(output, out, io::to_json(search, A, n_weight));
      return search.budget ? kExitOk : kExitNotSeparated;
    }
    if (*cutoff) {
      CutoffOptions options;
      options.delta0 = delta0;
      options.M = M;
      const CutoffFamily family(scan_all(c, scan), parse_phase_index(phase), options);
      const auto which = parse_cutoff_kind(kind);
      CutoffGrid plane;
      plane.nu = nu;
      plane.nv = nv;
      if (!origin.empty()) {
        std::copy(origin.begin(), origin.end(), plane.origin.begin());
        std::copy(u_dir.begin(), u_dir.end(), plane.u.begin());
        std::copy(v_dir.begin(), v_dir.end(), plane.v.begin());
      } else {
        // Plane through the first component, spanned by xi_1 and eta_1.
        FrequencyPair centre;
        if (!family.components().empty()) centre = family.components().front().point({1.0, 0.0, 0.0});
        plane.origin = {centre.xi[0] - span, centre.xi[1], centre.xi[2], centre.eta[0] - span, centre.eta[1], centre.eta[2]};
        plane.u = {2.0 * span, 0, 0, 0, 0, 0};
        plane.v = {0, 0, 0, 2.0 * span, 0, 0};
      }
      emit(output, out, [&](std::ostream& s) { export_cutoff_grid(s, family, which, rho, plane); });
      if (!meta.empty()) {
        json comps = json::array();
        for (const auto& comp : family.components())
          comps.push_back({{"phase", to_string(comp.idx)}, {"R", comp.radius}, {"lambda", comp.lambda}});
        json doc{{"schema", kCutoffExportSchema},
                 {"c", c},
                 {"phase", to_string(family.phase())},
                 {"kind", std::string(to_string(which))},
                 {"rho", rho},
                 {"M", family.M()},
                 {"delta0", family.delta0()},
                 {"n", family.n()},
                 {"components", comps},
                 {"grid", {{"origin", plane.origin}, {"u", plane.u}, {"v", plane.v}, {"nu", nu}, {"nv", nv}}}};
        emit_json(meta, out, doc);
      }
      return kExitOk;
    }
    if (*opprobe) {
      if (rhos.empty()) rhos = default_rhos();
      json params;
      json results;
      if (probe == "holder") {
        const int n = grid_n > 0 ? grid_n : 64;
        const double L = box > 0.0 ? box : 16.0 * std::numbers::pi;
        params = {{"grid", n}, {"box", L}, {"trials", trials}};
        results = probe_holder(n, L, trials, seed);
      } else if (probe == "translation") {
        const int n = grid_n > 0 ? grid_n : 16384;
        params = {{"grid", n}, {"dk", dk}, {"lambda", lambda}, {"rho", rhos}};
        results = probe_translation(n, dk, lambda, rhos);
      } else if (probe == "radial-shell") {
        const int n = grid_n > 0 ? grid_n : 64;
        const double L = box > 0.0 ? box : 100.0;
        params = {{"grid", n}, {"box", L}, {"R", shell_R}, {"s", s_weight}, {"rho", rhos}};
        results = probe_radial_shell(n, L, shell_R, s_weight, rhos);
      } else if (probe == "bernstein") {
        const int n = grid_n > 0 ? grid_n : 4096;
        const double L = box > 0.0 ? box : 64.0;
        params = {{"grid", n}, {"box", L}, {"p", p_exp}, {"q", q_exp}, {"j_max", j_max}, {"trials", trials}};
        results = probe_bernstein(n, L, p_exp, q_exp, j_max, trials, seed);
      } else {
        if (c == 0.0) throw std::invalid_argument("cutoff-bounds needs --c");
        params = {{"c", c}, {"phase", phase}, {"rho", rhos}, {"samples", samples}};
        results = probe_cutoff_bounds(c, scan, phase, rhos, samples, seed);
      }
      emit_json(output, out, {{"schema", kProbeSchema}, {"probe", probe}, {"seed", seed}, {"parameters", params}, {"results", results}});
      return kExitOk;
    }
    if (*simulate) {
      SimulateConfig cfg;
      try {
        cfg = simulate_config(load_config(config_path));
        if (!output.empty()) cfg.output = output;
        if (!csv_path.empty()) cfg.csv = csv_path;
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
      }
      const auto record = sim::run_resonant_amplification(scan_all(cfg.c, cfg.scan), cfg.experiment);
      emit_json(cfg.output, out, sim::to_json(record));
      if (!cfg.csv.empty()) emit(cfg.csv, out, [&](std::ostream& s) { sim::write_experiment_csv(s, record); });
      if (record.inconclusive) {
        err << (record.resonant.completed ? record.detuned.failure : record.resonant.failure) << '\n';
        return kExitBlowUp;
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"kgres"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace kgres::cli
