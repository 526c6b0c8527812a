#include "nmjc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "nmjc/direct.hpp"
#include "nmjc/errors.hpp"
#include "nmjc/quadrature.hpp"
#include "nmjc/simd/kernels.hpp"

namespace nmjc {

namespace {

struct Row {
  double W = 0.0;
  std::optional<double> Q;
  double mean_n = 0.0;
  double trace_re = 0.0;
  double herm_defect = 0.0;
  PhotonDistribution pn;
  Corrections corrections;
};

bool is_paper(EngineKind k) {
  return k == EngineKind::paper_spectral || k == EngineKind::paper_series;
}

std::vector<MomentumNode> nodes_for(const RunConfig& cfg) {
  if (cfg.momentum_nodes == 1) return {MomentumNode{0.0, 1.0}};
  return gauss_quadrature_nodes(cfg.params.sigma0_momentum_width, cfg.momentum_nodes);
}

Row reduce(const std::vector<BlockedDensity>& per_node, const std::vector<MomentumNode>& nodes) {
  Row r;
  std::vector<double> w(nodes.size()), tr(nodes.size());
  std::vector<PhotonDistribution> pn(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    w[j] = population_inversion(per_node[j]).value;
    tr[j] = per_node[j].trace().real();
    pn[j] = photon_distribution(per_node[j]);
    r.herm_defect = std::max(r.herm_defect, per_node[j].hermiticity_defect());
  }
  r.W = momentum_average(w, nodes);
  r.trace_re = momentum_average(tr, nodes);
  r.pn = momentum_average(std::span<const PhotonDistribution>(pn), nodes);
  try {
    const auto m = photon_moments(r.pn);
    r.mean_n = m.mean;
    r.Q = m.mandel_q;
  } catch (const std::domain_error&) {
    r.mean_n = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

// Runs fn(i) for i in [0, count) over `threads` contiguous chunks. Returns the smallest index that
// threw (or count) and the matching exception.
template <class F>
std::pair<std::size_t, std::exception_ptr> parallel_rows(std::size_t count, int threads, F fn) {
  std::size_t first_fail = count;
  std::exception_ptr error;
  std::mutex m;
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (i < first_fail) {
          first_fail = i;
          error = std::current_exception();
        }
        return;
      }
    }
  };
  const auto t = static_cast<std::size_t>(std::max(1, threads));
  if (t == 1 || count < 2) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + t - 1) / t;
    for (std::size_t b = 0; b < count; b += chunk) pool.emplace_back(worker, b, std::min(count, b + chunk));
    for (auto& th : pool) th.join();
  }
  return {first_fail, error};
}

std::string describe(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ObservableSeries compute_series(const RunConfig& cfg, EngineKind engine) {
  const ScaledParams sp = validate_and_scale(cfg.params, cfg.grid());
  const auto weights = coherent_weights(cfg.params.alpha_coherent, cfg.params.fock_cutoff);
  const BlockedDensity rho0 = initial_blocked_density(weights);
  const auto nodes = nodes_for(cfg);

  EngineMode mode = cfg.engine;
  mode.kind = engine;
  if (!is_paper(engine)) {
    // Repairs only exist for the non-physical paper-literal maps.
    mode.hermitize = false;
    mode.renormalize = false;
  }

  const std::size_t count = sp.tau_grid.size();
  std::vector<Row> rows(count);
  std::size_t completed = count;
  std::exception_ptr error;
  double audit = 0.0;

  if (engine == EngineKind::direct_integrator) {
    std::vector<DirectResult> traj(nodes.size());
    auto [fail, err] = parallel_rows(nodes.size(), cfg.threads, [&](std::size_t j) {
      traj[j] = evolve_direct(rho0, sp, nodes[j].p_recoil, sp.tau_grid, cfg.direct_controls());
    });
    if (err) {
      completed = 0;
      error = err;
    } else {
      for (const auto& t : traj) audit = std::max(audit, t.audit_deviation);
      parallel_rows(count, cfg.threads, [&](std::size_t i) {
        std::vector<BlockedDensity> per_node(nodes.size());
        for (std::size_t j = 0; j < nodes.size(); ++j) per_node[j] = traj[j].trajectory[i];
        rows[i] = reduce(per_node, nodes);
      });
    }
  } else {
    auto [fail, err] = parallel_rows(count, cfg.threads, [&](std::size_t i) {
      std::vector<BlockedDensity> per_node(nodes.size());
      Corrections corr;
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        auto ev = evolve_density(rho0, sp, nodes[j].p_recoil, mode, sp.tau_grid[i], cfg.series);
        corr.merge(ev.corrections);
        per_node[j] = std::move(ev.rho);
      }
      rows[i] = reduce(per_node, nodes);
      rows[i].corrections = corr;
    });
    completed = fail;
    error = err;
  }

  ObservableSeries s;
  s.engine = engine;
  s.direct_audit_deviation = audit;
  for (std::size_t i = 0; i < completed; ++i) {
    const auto& r = rows[i];
    s.tau.push_back(sp.tau_grid[i]);
    s.W.push_back(r.W);
    s.Q.push_back(r.Q);
    s.mean_n.push_back(r.mean_n);
    s.trace_re.push_back(r.trace_re);
    s.herm_defect.push_back(r.herm_defect);
    s.pn.push_back(r.pn);
    s.corrections.merge(r.corrections);
  }
  if (error) {
    const std::string what = std::string(to_string(engine)) + " failed after " + std::to_string(completed) +
                             " of " + std::to_string(count) + " rows: " + describe(error);
    throw ScenarioError(what, completed, std::move(s));
  }
  return s;
}

void write_series_csv(std::ostream& os, const ObservableSeries& s) {
  os << "tau,W,Q,mean_n,trace_re,herm_defect\n";
  for (std::size_t i = 0; i < s.rows(); ++i) {
    os << format_real(s.tau[i]) << ',' << format_real(s.W[i]) << ','
       << (s.Q[i] ? format_real(*s.Q[i]) : std::string("nan")) << ',' << format_real(s.mean_n[i]) << ','
       << format_real(s.trace_re[i]) << ',' << format_real(s.herm_defect[i]) << '\n';
  }
}

void write_pn_csv(std::ostream& os, const ObservableSeries& s) {
  os << "tau,n,P\n";
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t n = 0; n < s.pn[i].P.size(); ++n)
      os << format_real(s.tau[i]) << ',' << n << ',' << format_real(s.pn[i].P[n]) << '\n';
}

namespace {

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  body(f);
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json manifest(const RunConfig& cfg, const std::vector<ObservableSeries>& series,
                        const std::vector<std::filesystem::path>& files, const std::string& status) {
  const auto& p = cfg.params;
  nlohmann::json j;
  j["preset"] = cfg.preset ? nlohmann::json(*cfg.preset) : nlohmann::json(nullptr);
  j["raw"] = {
      {"lambda", p.lambda_coupling},
      {"delta0", p.delta0},
      {"omega_c_scaled", p.omega_c_scaled},
      {"q", optional_json(p.q_wavenumber)},
      {"mass", optional_json(p.atom_mass)},
      {"gravity", p.gravity},
      {"qg", optional_json(p.qg_product)},
      {"qg_effective", p.effective_qg()},
      {"omega_recoil", p.omega_recoil},
      {"gamma", p.gamma_damping},
      {"eta", p.eta_nonmarkov},
      {"alpha_re", p.alpha_coherent.real()},
      {"alpha_im", p.alpha_coherent.imag()},
      {"sigma0", p.sigma0_momentum_width},
      {"cutoff", p.fock_cutoff},
      {"quartic_rate_mode", std::string(to_string(p.quartic_rate_mode))},
      {"allow_coherent_tail", p.allow_coherent_tail},
  };
  try {
    const auto sp = validate_and_scale(p, cfg.grid());
    j["scaled"] = {{"delta0_s", sp.delta0_s},       {"omega_c_s", sp.omega_c_s},   {"doppler_coeff", sp.doppler_coeff},
                   {"grav_drift", sp.grav_drift},   {"gamma_s", sp.gamma_s},       {"eta_s", sp.eta_s},
                   {"eta_quartic", sp.eta_quartic()}, {"tau_points", sp.tau_grid.size()}};
    j["warnings"] = sp.warnings;
  } catch (const std::exception& e) {
    j["scaled"] = nullptr;
    j["warnings"] = {e.what()};
  }
  j["engine"] = {{"kind", std::string(to_string(cfg.engine.kind))},
                 {"series_variant", std::string(to_string(cfg.engine.variant))},
                 {"hermitize", cfg.engine.hermitize},
                 {"renormalize", cfg.engine.renormalize}};
  j["reference_engine"] =
      cfg.reference_engine ? nlohmann::json(std::string(to_string(*cfg.reference_engine))) : nlohmann::json(nullptr);
  j["grid"] = {{"tau_max", cfg.tau_max}, {"tau_step", cfg.tau_step}};
  j["momentum_nodes"] = cfg.momentum_nodes;
  j["integrator"] = {{"dt", cfg.dt_integrator}, {"audit", cfg.direct_audit}, {"audit_tolerance", cfg.direct_audit_tolerance}};
  j["series_controls"] = {{"max_terms", cfg.series.max_terms},
                          {"term_tol", cfg.series.term_tol},
                          {"exponent_clamp", cfg.series.exponent_clamp},
                          {"max_rounding", cfg.series.max_rounding}};
  j["simd_backend"] = std::string(simd::active_kernels().name);
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& s : series) {
    runs.push_back({{"engine", std::string(to_string(s.engine))},
                    {"rows", s.rows()},
                    {"hermitize_correction_max", s.corrections.hermitize},
                    {"renormalize_correction_max", s.corrections.renormalize},
                    {"direct_audit_deviation", s.direct_audit_deviation}});
  }
  j["runs"] = runs;
  nlohmann::json fl = nlohmann::json::array();
  for (const auto& f : files) fl.push_back(f.filename().string());
  j["files"] = fl;
  j["status"] = status;
  return j;
}

std::string series_file_name(EngineKind k) {
  return "series_" + std::string(to_string(k)) + ".csv";
}

}  // namespace

RunOutputs run_scenario(const RunConfig& cfg) {
  check_config(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  RunOutputs out;

  auto emit = [&](const ObservableSeries& s, const std::string& name, bool with_pn) {
    const auto path = cfg.output_dir / name;
    write_file(path, [&](std::ostream& os) { write_series_csv(os, s); });
    out.files.push_back(path);
    if (with_pn) {
      const auto pn = cfg.output_dir / "pn.csv";
      write_file(pn, [&](std::ostream& os) { write_pn_csv(os, s); });
      out.files.push_back(pn);
    }
  };
  auto write_manifest = [&](const std::string& status) {
    const auto path = cfg.output_dir / "run-manifest.json";
    auto files = out.files;
    files.push_back(path);
    const auto text = manifest(cfg, out.series, files, status).dump(2) + "\n";
    write_file(path, [&](std::ostream& os) { os << text; });
    out.files.push_back(path);
  };

  std::vector<EngineKind> engines{cfg.engine.kind};
  if (cfg.reference_engine && *cfg.reference_engine != cfg.engine.kind) engines.push_back(*cfg.reference_engine);

  for (std::size_t k = 0; k < engines.size(); ++k) {
    const bool main = k == 0;
    const std::string name = main ? "series.csv" : series_file_name(engines[k]);
    try {
      out.series.push_back(compute_series(cfg, engines[k]));
    } catch (ScenarioError& e) {
      out.series.push_back(e.partial);
      emit(out.series.back(), name, main && cfg.emit_pn);
      write_manifest(std::string("failed: ") + e.what());
      throw;
    }
    emit(out.series.back(), name, main && cfg.emit_pn);
  }
  write_manifest("ok");
  return out;
}

CompareReport compare_engines(const RunConfig& cfg, const std::vector<EngineKind>& engines, bool force) {
  check_config(cfg);
  if (engines.size() < 2) throw ConfigError("compare needs at least two engines");
  const bool has_direct = std::find(engines.begin(), engines.end(), EngineKind::direct_integrator) != engines.end();
  const bool has_closed = std::any_of(engines.begin(), engines.end(),
                                      [](EngineKind k) { return k != EngineKind::direct_integrator; });
  if (has_direct && has_closed && cfg.params.effective_qg() != 0.0 && !force)
    throw ConfigError("closed-form engines freeze the detuning over [0, tau]; comparing them with the direct "
                      "integrator needs qg = 0 (or --force)");

  std::vector<ObservableSeries> series;
  for (auto k : engines) series.push_back(compute_series(cfg, k));

  std::filesystem::create_directories(cfg.output_dir);
  CompareReport report;
  report.csv = cfg.output_dir / "compare.csv";
  std::ofstream f(report.csv, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + report.csv.string());
  f << "tau,engine_a,engine_b,dW,dQ,dtrace\n";

  auto nan_max = [](double acc, double v) { return std::isnan(acc) || std::isnan(v) ? std::nan("") : std::max(acc, v); };
  for (std::size_t a = 0; a < series.size(); ++a)
    for (std::size_t b = a + 1; b < series.size(); ++b) {
      PairDifference d{engines[a], engines[b]};
      const auto& sa = series[a];
      const auto& sb = series[b];
      for (std::size_t i = 0; i < sa.rows(); ++i) {
        const double dw = std::abs(sa.W[i] - sb.W[i]);
        double dq = 0.0;
        if (sa.Q[i] && sb.Q[i])
          dq = std::abs(*sa.Q[i] - *sb.Q[i]);
        else if (sa.Q[i].has_value() != sb.Q[i].has_value())
          dq = std::nan("");
        const double dt = std::abs(sa.trace_re[i] - sb.trace_re[i]);
        d.max_dW = std::max(d.max_dW, dw);
        d.max_dQ = nan_max(d.max_dQ, dq);
        d.max_dtrace = std::max(d.max_dtrace, dt);
        f << format_real(sa.tau[i]) << ',' << to_string(engines[a]) << ',' << to_string(engines[b]) << ','
          << format_real(dw) << ',' << format_real(dq) << ',' << format_real(dt) << '\n';
      }
      report.pairs.push_back(d);
    }
  return report;
}

}  // namespace nmjc
