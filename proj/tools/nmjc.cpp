// Command-line front end: `simulate` writes observable time series, `compare` cross-checks engines.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nmjc/config.hpp"
#include "nmjc/errors.hpp"
#include "nmjc/scenario.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::optional<int> threads;
  bool force = false;
};

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw nmjc::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nmjc::RunConfig load(const CommonOptions& o) {
  std::vector<nmjc::ConfigEntry> entries;
  if (!o.config_path.empty()) entries = nmjc::read_config_entries(read_text(o.config_path));
  else if (o.preset.empty()) throw nmjc::ConfigError("either --config or --preset is required");
  std::optional<std::string> preset;
  if (!o.preset.empty()) preset = o.preset;
  auto cfg = nmjc::build_config(entries, preset);
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
  if (o.threads) nmjc::apply_config_key(cfg, "threads", std::to_string(*o.threads));
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Run configuration (key = value lines)");
  cmd->add_option("--preset", o.preset, "Figure preset: fig1a..fig1f, fig2a..fig2f (no 'e')");
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_option("--threads", o.threads, "Worker threads (output is identical for any count)");
}

void print_series_summary(const nmjc::RunOutputs& out) {
  for (const auto& s : out.series)
    std::cout << nmjc::to_string(s.engine) << ": " << s.rows() << " rows, max hermitize correction "
              << s.corrections.hermitize << ", max renormalize correction " << s.corrections.renormalize << "\n";
  for (const auto& f : out.files) std::cout << "wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-damped Jaynes-Cummings simulator with a moving atom in a gravitational field"};
  app.require_subcommand(1);

  CommonOptions sim_opts;
  std::string engine, variant, quartic;
  std::optional<int> cutoff, momentum_nodes;
  bool hermitize = false, renormalize = false, emit_pn = false;
  auto* sim = app.add_subcommand("simulate", "Evolve one configuration and write series.csv");
  add_common(sim, sim_opts);
  sim->add_option("--engine", engine, "exact_spectral | paper_spectral | paper_series | direct_integrator");
  sim->add_option("--cutoff", cutoff, "Fock cutoff N");
  sim->add_option("--momentum-nodes", momentum_nodes, "Gauss-Hermite nodes for the momentum average");
  sim->add_option("--series-variant", variant, "definitions | reconstruction");
  sim->add_flag("--hermitize", hermitize, "Symmetrize paper-literal outputs");
  sim->add_flag("--renormalize", renormalize, "Divide paper-literal outputs by their trace");
  sim->add_option("--quartic-rate-mode", quartic, "gamma_eta | bare_eta");
  sim->add_flag("--emit-pn", emit_pn, "Also write the photon distribution pn.csv");
  sim->add_flag("--force", sim_opts.force, "Accept a coherent state truncated above 1e-12 tail mass");

  CommonOptions cmp_opts;
  std::vector<std::string> engines;
  auto* cmp = app.add_subcommand("compare", "Run several engines and write compare.csv");
  add_common(cmp, cmp_opts);
  cmp->add_option("--engines", engines, "Comma-separated engine list")->delimiter(',')->required();
  cmp->add_flag("--force", cmp_opts.force, "Allow closed-form vs direct comparison at qg != 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) {
      auto cfg = load(sim_opts);
      if (!engine.empty()) nmjc::apply_config_key(cfg, "engine", engine);
      if (cutoff) nmjc::apply_config_key(cfg, "cutoff", std::to_string(*cutoff));
      if (momentum_nodes) nmjc::apply_config_key(cfg, "momentum_nodes", std::to_string(*momentum_nodes));
      if (!variant.empty()) nmjc::apply_config_key(cfg, "series_variant", variant);
      if (hermitize) cfg.engine.hermitize = true;
      if (renormalize) cfg.engine.renormalize = true;
      if (!quartic.empty()) nmjc::apply_config_key(cfg, "quartic_rate_mode", quartic);
      if (emit_pn) cfg.emit_pn = true;
      if (sim_opts.force) cfg.params.allow_coherent_tail = true;
      nmjc::check_config(cfg);
      print_series_summary(nmjc::run_scenario(cfg));
    } else {
      auto cfg = load(cmp_opts);
      std::vector<nmjc::EngineKind> kinds;
      for (const auto& e : engines) {
        try {
          kinds.push_back(nmjc::parse_engine_kind(e));
        } catch (const std::invalid_argument& ex) {
          throw nmjc::ConfigError(ex.what());
        }
      }
      const auto report = nmjc::compare_engines(cfg, kinds, cmp_opts.force);
      for (const auto& p : report.pairs)
        std::cout << nmjc::to_string(p.a) << " vs " << nmjc::to_string(p.b) << ": max|dW| " << p.max_dW
                  << ", max|dQ| " << p.max_dQ << ", max|dtrace| " << p.max_dtrace << "\n";
      std::cout << "wrote " << report.csv.string() << "\n";
    }
  } catch (const nmjc::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nmjc::ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nmjc::ScenarioError& e) {
    std::cerr << "run failed: " << e.what() << " (" << e.rows_completed << " rows written)\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
