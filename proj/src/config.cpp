#include "nmjc/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <set>

#include "nmjc/errors.hpp"

namespace nmjc {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(std::string_view key, std::string_view value, std::size_t line) {
  const std::string v(value);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d))
    throw ConfigError("'" + std::string(key) + "' expects a finite number, got '" + v + "'", line);
  return d;
}

int to_int(std::string_view key, std::string_view value, std::size_t line) {
  const std::string v(value);
  char* end = nullptr;
  errno = 0;
  const long n = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || n < -1000000000L || n > 1000000000L)
    throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + v + "'", line);
  return static_cast<int>(n);
}

bool to_bool(std::string_view key, std::string_view value, std::size_t line) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("'" + std::string(key) + "' expects true or false, got '" + std::string(value) + "'", line);
}

template <class F>
auto parse_enum(std::string_view key, std::string_view value, std::size_t line, F parse) {
  try {
    return parse(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(key) + ": " + e.what(), line);
  }
}

// Keys that, on their own, describe a model without a preset.
const std::set<std::string, std::less<>> kModelKeys = {"lambda", "delta0", "alpha", "omega_recoil", "q", "mass"};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const char* fig : {"fig1", "fig2"})
    for (const char* panel : {"a", "b", "c", "d", "f"}) names.push_back(std::string(fig) + panel);
  return names;
}

RunConfig preset_config(std::string_view name) {
  if (name.size() != 5 || (name.substr(0, 4) != "fig1" && name.substr(0, 4) != "fig2"))
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  const char panel = name[4];

  RunConfig cfg;
  cfg.preset = std::string(name);
  auto& p = cfg.params;
  p.lambda_coupling = 1e6;
  p.delta0 = 1.8e6;
  p.omega_c_scaled = 1.0;
  p.gravity = 9.8;
  p.omega_recoil = 0.5e6;
  p.alpha_coherent = {2.0, 0.0};
  p.sigma0_momentum_width = 1.0;
  p.fock_cutoff = 32;
  // q = 1e7 /m and M = 1e-26 kg are quoted alongside, but hbar q^2 / 2M = 5.27e5 rad/s does not
  // match the quoted recoil frequency, so only the recoil frequency is carried.

  switch (panel) {
    case 'a': p.qg_product = 0.0; break;
    case 'b': p.qg_product = 0.1e7; break;
    case 'c': p.qg_product = 0.1e7; p.gamma_damping = 7e-5; break;
    case 'd': p.qg_product = 0.1e7; p.gamma_damping = 7e-5; p.eta_nonmarkov = 5e-5; break;
    case 'f': p.qg_product = 0.1e7; p.gamma_damping = 7e-5; p.eta_nonmarkov = 5e-3; break;
    default: throw ConfigError("unknown preset '" + std::string(name) + "'");
  }

  cfg.engine = {EngineKind::paper_spectral, SeriesVariant::definitions, true, true};
  cfg.reference_engine = EngineKind::exact_spectral;
  cfg.output_dir = std::string("out/") + std::string(name);
  return cfg;
}

void apply_config_key(RunConfig& cfg, std::string_view key, std::string_view value, std::size_t line) {
  auto& p = cfg.params;
  auto real = [&] { return to_real(key, value, line); };
  auto integer = [&] { return to_int(key, value, line); };
  auto boolean = [&] { return to_bool(key, value, line); };

  if (key == "preset") {
    cfg = preset_config(value);
  } else if (key == "lambda") {
    p.lambda_coupling = real();
  } else if (key == "delta0") {
    p.delta0 = real();
  } else if (key == "omega_c") {
    p.omega_c_scaled = real();
  } else if (key == "q") {
    p.q_wavenumber = real();
  } else if (key == "mass") {
    p.atom_mass = real();
  } else if (key == "gravity") {
    p.gravity = real();
  } else if (key == "qg") {
    p.qg_product = real();
  } else if (key == "omega_recoil") {
    p.omega_recoil = real();
  } else if (key == "gamma") {
    p.gamma_damping = real();
  } else if (key == "eta") {
    p.eta_nonmarkov = real();
  } else if (key == "alpha") {
    p.alpha_coherent = std::polar(real(), cfg.alpha_phase);
  } else if (key == "alpha_phase") {
    cfg.alpha_phase = real();
    p.alpha_coherent = std::polar(std::abs(p.alpha_coherent), cfg.alpha_phase);
  } else if (key == "sigma0") {
    p.sigma0_momentum_width = real();
  } else if (key == "cutoff") {
    p.fock_cutoff = integer();
  } else if (key == "quartic_rate_mode") {
    p.quartic_rate_mode = parse_enum(key, value, line, parse_quartic_rate_mode);
  } else if (key == "allow_coherent_tail") {
    p.allow_coherent_tail = boolean();
  } else if (key == "engine") {
    cfg.engine.kind = parse_enum(key, value, line, parse_engine_kind);
  } else if (key == "series_variant") {
    cfg.engine.variant = parse_enum(key, value, line, parse_series_variant);
  } else if (key == "hermitize") {
    cfg.engine.hermitize = boolean();
  } else if (key == "renormalize") {
    cfg.engine.renormalize = boolean();
  } else if (key == "reference_engine") {
    if (value == "none")
      cfg.reference_engine.reset();
    else
      cfg.reference_engine = parse_enum(key, value, line, parse_engine_kind);
  } else if (key == "tau_max") {
    cfg.tau_max = real();
  } else if (key == "tau_step") {
    cfg.tau_step = real();
  } else if (key == "momentum_nodes") {
    cfg.momentum_nodes = integer();
  } else if (key == "dt") {
    cfg.dt_integrator = real();
  } else if (key == "direct_audit") {
    cfg.direct_audit = boolean();
  } else if (key == "direct_audit_tolerance") {
    cfg.direct_audit_tolerance = real();
  } else if (key == "output_dir") {
    if (value.empty()) throw ConfigError("output_dir must not be empty", line);
    cfg.output_dir = std::string(value);
  } else if (key == "emit_pn") {
    cfg.emit_pn = boolean();
  } else if (key == "threads") {
    cfg.threads = integer();
  } else if (key == "series_max_terms") {
    cfg.series.max_terms = integer();
  } else if (key == "series_term_tol") {
    cfg.series.term_tol = real();
  } else if (key == "series_max_rounding") {
    cfg.series.max_rounding = real();
  } else if (key == "exponent_clamp") {
    cfg.series.exponent_clamp = real();
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'", line);
  }
}

std::vector<ConfigEntry> read_config_entries(std::string_view text) {
  std::vector<ConfigEntry> entries;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", line_no);
    if (!seen.insert(std::string(key)).second) throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
    entries.push_back({std::string(key), std::string(value), line_no});
  }
  return entries;
}

RunConfig build_config(const std::vector<ConfigEntry>& entries, const std::optional<std::string>& preset_override) {
  RunConfig cfg;
  bool have_preset = false;
  if (preset_override) {
    cfg = preset_config(*preset_override);
    have_preset = true;
  } else {
    for (const auto& e : entries)
      if (e.key == "preset") {
        try {
          cfg = preset_config(e.value);
        } catch (const ConfigError& err) {
          throw ConfigError(err.what(), e.line);
        }
        have_preset = true;
      }
  }

  std::set<std::string, std::less<>> given;
  for (const auto& e : entries) {
    if (e.key == "preset") continue;
    apply_config_key(cfg, e.key, e.value, e.line);
    given.insert(e.key);
  }

  if (!have_preset) {
    bool any_model = false;
    for (const auto& k : kModelKeys) any_model = any_model || given.contains(k);
    if (!any_model) throw ConfigError("missing preset or params");
    for (const char* k : {"lambda", "delta0", "alpha"})
      if (!given.contains(k)) throw ConfigError(std::string("missing required key '") + k + "'");
    if (!given.contains("omega_recoil")) {
      if (!(given.contains("q") && given.contains("mass")))
        throw ConfigError("missing required key 'omega_recoil' (or both 'q' and 'mass')");
      const double q = *cfg.params.q_wavenumber;
      cfg.params.omega_recoil = kHbar * q * q / (2.0 * *cfg.params.atom_mass);
    }
  }
  check_config(cfg);
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  return build_config(read_config_entries(text));
}

void check_config(const RunConfig& cfg) {
  if (!(cfg.tau_step > 0.0)) throw ConfigError("tau_step must be positive");
  if (!(cfg.tau_max >= cfg.tau_step)) throw ConfigError("tau_max must be at least tau_step");
  if (cfg.momentum_nodes < 1) throw ConfigError("momentum_nodes must be at least 1");
  if (!(cfg.dt_integrator > 0.0)) throw ConfigError("dt must be positive");
  if (cfg.dt_integrator > cfg.tau_step) throw ConfigError("dt must not exceed tau_step");
  if (!(cfg.direct_audit_tolerance > 0.0)) throw ConfigError("direct_audit_tolerance must be positive");
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
  if (cfg.series.max_terms < 1) throw ConfigError("series_max_terms must be at least 1");
  if (!(cfg.series.term_tol > 0.0)) throw ConfigError("series_term_tol must be positive");
  if (!(cfg.series.max_rounding > 0.0)) throw ConfigError("series_max_rounding must be positive");
}

}  // namespace nmjc
