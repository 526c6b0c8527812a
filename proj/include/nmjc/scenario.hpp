#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nmjc/config.hpp"
#include "nmjc/observables.hpp"

namespace nmjc {

struct ObservableSeries {
  EngineKind engine = EngineKind::exact_spectral;
  std::vector<double> tau;
  std::vector<double> W;
  std::vector<std::optional<double>> Q;
  std::vector<double> mean_n;
  std::vector<double> trace_re;
  std::vector<double> herm_defect;
  std::vector<PhotonDistribution> pn;  // node-averaged, raw (not renormalized)
  Corrections corrections;
  double direct_audit_deviation = 0.0;

  std::size_t rows() const { return tau.size(); }
};

/// Thrown when an engine fails part-way; `rows_completed` leading rows are valid.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& what, std::size_t rows_completed, ObservableSeries partial)
      : std::runtime_error(what), rows_completed(rows_completed), partial(std::move(partial)) {}
  std::size_t rows_completed;
  ObservableSeries partial;
};

/// Evaluates one engine on the configured grid and momentum nodes.
ObservableSeries compute_series(const RunConfig& cfg, EngineKind engine);

/// `tau,W,Q,mean_n,trace_re,herm_defect`, 17 significant digits, '\n' line ends.
void write_series_csv(std::ostream& os, const ObservableSeries& s);
/// `tau,n,P`
void write_pn_csv(std::ostream& os, const ObservableSeries& s);

struct RunOutputs {
  std::vector<std::filesystem::path> files;
  std::vector<ObservableSeries> series;
};

/// Writes series.csv (main engine), series_<engine>.csv for the reference engine if any,
/// pn.csv when requested, and run-manifest.json. On failure the valid rows are still written and
/// the ScenarioError is rethrown.
RunOutputs run_scenario(const RunConfig& cfg);

struct PairDifference {
  EngineKind a, b;
  double max_dW = 0.0, max_dQ = 0.0, max_dtrace = 0.0;
};

struct CompareReport {
  std::vector<PairDifference> pairs;
  std::filesystem::path csv;
};

/// Runs every engine and writes compare.csv (`tau,engine_a,engine_b,dW,dQ,dtrace`).
/// Refuses closed-form vs direct comparisons at q g != 0 unless `force`.
CompareReport compare_engines(const RunConfig& cfg, const std::vector<EngineKind>& engines, bool force = false);

/// Decimal rendering used by every CSV writer.
std::string format_real(double v);

}  // namespace nmjc
