#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nmjc/direct.hpp"
#include "nmjc/engine.hpp"
#include "nmjc/params.hpp"

namespace nmjc {

struct RunConfig {
  PhysicalParams params;
  EngineMode engine;
  SeriesControls series;
  double tau_max = 50.0;
  double tau_step = 0.05;
  int momentum_nodes = 1;
  double dt_integrator = 1e-3;
  bool direct_audit = false;
  double direct_audit_tolerance = 1e-8;
  std::filesystem::path output_dir = "out";
  bool emit_pn = false;
  int threads = 1;
  std::optional<std::string> preset;
  /// Extra engine run emitted next to the main series (figure presets use exact_spectral).
  std::optional<EngineKind> reference_engine;
  double alpha_phase = 0.0;  // arg(alpha); kept separately so `alpha = |alpha|` can be set in any order

  TimeGrid grid() const { return {tau_max, tau_step}; }
  DirectControls direct_controls() const { return {dt_integrator, direct_audit, direct_audit_tolerance}; }
};

/// Figure panels a, b, c, d, f (there is no e).
std::vector<std::string> preset_names();

/// Throws ConfigError for unknown names.
RunConfig preset_config(std::string_view name);

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Splits `key = value` lines, dropping `#` comments and blank lines. Throws ConfigError.
std::vector<ConfigEntry> read_config_entries(std::string_view text);

/// Expands the preset (the override if given, else the `preset` entry, wherever it appears) and
/// then applies every other entry in order, so explicit keys win.
RunConfig build_config(const std::vector<ConfigEntry>& entries,
                       const std::optional<std::string>& preset_override = std::nullopt);

/// read_config_entries + build_config. Throws ConfigError carrying the offending line number.
RunConfig parse_config(std::string_view text);

/// Applies one `key = value` assignment; used by the parser and by CLI overrides.
void apply_config_key(RunConfig& cfg, std::string_view key, std::string_view value, std::size_t line = 0);

/// Checks RunConfig invariants (tau_step > 0, tau_max >= tau_step, ...). Throws ConfigError.
void check_config(const RunConfig& cfg);

}  // namespace nmjc
