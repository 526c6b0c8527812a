#pragma once

#include <string_view>

#include "nmjc/density.hpp"
#include "nmjc/kernels.hpp"
#include "nmjc/params.hpp"
#include "nmjc/spectrum.hpp"

namespace nmjc {

enum class EngineKind { exact_spectral, paper_spectral, paper_series, direct_integrator };

std::string_view to_string(EngineKind kind);
EngineKind parse_engine_kind(std::string_view text);

struct EngineMode {
  EngineKind kind = EngineKind::exact_spectral;
  SeriesVariant variant = SeriesVariant::definitions;  // paper_* kinds only
  bool hermitize = false;
  bool renormalize = false;
};

/// Truncation of the literal power sums.
struct SeriesControls {
  int max_terms = 400;
  double term_tol = 1e-15;
  double exponent_clamp = 50.0;
  /// Abort when the estimated rounding error of an alternating sum (eps * peak term) exceeds this.
  double max_rounding = 1e-8;
};

struct DampingRates {
  double gamma = 0.0;
  double eta = 0.0;          // used as gamma * eta by paper_spectral and paper_series
  double eta_quartic = 0.0;  // quadruple-commutator rate of the exact and direct engines

  static DampingRates from(const ScaledParams& sp) { return {sp.gamma_s, sp.eta_s, sp.eta_quartic()}; }
};

/// Magnitudes of the repairs applied after a paper-literal evolution.
struct Corrections {
  double hermitize = 0.0;    // max elementwise change
  double renormalize = 0.0;  // |Re tr - 1| before division

  void merge(const Corrections& other);
};

/// Evolves one block from tau = 0 to `tau` with H frozen at the spectrum's detuning.
/// No post-steps are applied here; see evolve_density. Throws for direct_integrator.
Block evolve_block(const Block& rho0, const BlockSpectrum& spec, const EngineMode& mode,
                   const DampingRates& rates, double tau, const SeriesControls& controls = {});

/// The |g,0> population under the same engine.
double evolve_ground(double pop0, double energy, const EngineMode& mode, const DampingRates& rates,
                     double tau, const SeriesControls& controls = {});

struct EvolvedDensity {
  BlockedDensity rho;
  Corrections corrections;
};

/// Closed-form engines on a whole node: snapshot detuning delta(p, tau), every block evolved,
/// then hermitize / renormalize if the mode asks for it.
EvolvedDensity evolve_density(const BlockedDensity& rho0, const ScaledParams& sp, double p,
                              const EngineMode& mode, double tau, const SeriesControls& controls = {});

/// exp(-i H2 tau) on block n: cos(Omega tau) I - i sin(Omega tau) / Omega * H2.
Eigen::Matrix2cd block_propagator(double delta, int n, double tau);

/// rho <- (rho + rho^dagger) / 2 blockwise. Returns the largest elementwise change.
double hermitize(BlockedDensity& rho);
Block hermitize(const Block& b);

/// rho <- rho / Re tr rho. Returns |Re tr - 1|. Throws std::domain_error when |tr| < 1e-14.
double renormalize(BlockedDensity& rho);

}  // namespace nmjc
