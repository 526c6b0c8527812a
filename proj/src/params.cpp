#include "nmjc/params.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "nmjc/coherent.hpp"
#include "nmjc/errors.hpp"

namespace nmjc {

std::string_view to_string(QuarticRateMode mode) {
  return mode == QuarticRateMode::gamma_eta ? "gamma_eta" : "bare_eta";
}

QuarticRateMode parse_quartic_rate_mode(std::string_view text) {
  if (text == "gamma_eta") return QuarticRateMode::gamma_eta;
  if (text == "bare_eta") return QuarticRateMode::bare_eta;
  throw std::invalid_argument("unknown quartic rate mode '" + std::string(text) + "'");
}

double PhysicalParams::effective_qg() const {
  if (qg_product) return *qg_product;
  if (q_wavenumber) return *q_wavenumber * gravity;
  return 0.0;
}

std::vector<double> make_tau_grid(double tau_max, double tau_step) {
  if (!(tau_step > 0.0) || !std::isfinite(tau_step)) throw ValidationError("tau_step must be positive");
  if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) throw ValidationError("tau_max must be non-negative");
  // Tolerate tau_max being a hair below a multiple of the step.
  const auto count = static_cast<std::size_t>(std::floor(tau_max / tau_step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = static_cast<double>(i) * tau_step;
  return grid;
}

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
}

}  // namespace

ScaledParams validate_and_scale(const PhysicalParams& params, const TimeGrid& grid) {
  require_finite(params.lambda_coupling, "lambda");
  require_finite(params.delta0, "delta0");
  require_finite(params.omega_c_scaled, "omega_c");
  require_finite(params.gravity, "gravity");
  require_finite(params.omega_recoil, "omega_recoil");
  require_finite(params.gamma_damping, "gamma");
  require_finite(params.eta_nonmarkov, "eta");
  require_finite(params.alpha_coherent.real(), "alpha");
  require_finite(params.alpha_coherent.imag(), "alpha");
  require_finite(params.sigma0_momentum_width, "sigma0");
  if (params.qg_product) require_finite(*params.qg_product, "qg");

  if (!(params.lambda_coupling > 0.0)) throw ValidationError("lambda must be positive");
  if (params.gamma_damping < 0.0) throw ValidationError("gamma must be non-negative");
  if (params.eta_nonmarkov < 0.0) throw ValidationError("eta must be non-negative");
  if (params.fock_cutoff < 1) throw ValidationError("fock cutoff must be at least 1");
  if (!(params.sigma0_momentum_width > 0.0)) throw ValidationError("sigma0 must be positive");
  if (params.omega_recoil < 0.0) throw ValidationError("omega_recoil must be non-negative");

  if (params.q_wavenumber && params.atom_mass) {
    const double q = *params.q_wavenumber;
    const double m = *params.atom_mass;
    require_finite(q, "q");
    require_finite(m, "mass");
    if (!(m > 0.0)) throw ValidationError("mass must be positive");
    const double expected = kHbar * q * q / (2.0 * m);
    if (std::abs(params.omega_recoil - expected) > 1e-6 * expected) {
      std::ostringstream os;
      os.precision(10);
      os << "omega_recoil " << params.omega_recoil << " inconsistent with hbar q^2 / 2M = " << expected;
      throw ValidationError(os.str());
    }
  }

  ScaledParams sp;
  const double lambda = params.lambda_coupling;
  sp.delta0_s = params.delta0 / lambda;
  sp.omega_c_s = params.omega_c_scaled;
  sp.doppler_coeff = 2.0 * params.omega_recoil / lambda;
  sp.grav_drift = params.effective_qg() / (lambda * lambda);
  sp.gamma_s = params.gamma_damping;
  sp.eta_s = params.eta_nonmarkov;
  sp.quartic_mode = params.quartic_rate_mode;

  for (double v : {sp.delta0_s, sp.doppler_coeff, sp.grav_drift})
    if (!std::isfinite(v)) throw ValidationError("scaled parameter overflowed");

  const double tail = coherent_tail(params.alpha_coherent, params.fock_cutoff);
  if (tail >= 1e-12) {
    std::ostringstream os;
    os << "coherent-state tail beyond cutoff " << params.fock_cutoff << " is " << tail;
    if (!params.allow_coherent_tail) throw ValidationError(os.str() + " (>= 1e-12)");
    sp.warnings.push_back(os.str());
  }

  sp.tau_grid = make_tau_grid(grid.tau_max, grid.tau_step);
  return sp;
}

double doppler_detuning(const ScaledParams& sp, double p, double tau) {
  return sp.delta0_s - sp.doppler_coeff * p - sp.grav_drift * tau;
}

double coupling_phase(const ScaledParams& sp, double p, double tau) {
  return 0.5 * tau * (doppler_detuning(sp, p, tau) + sp.doppler_coeff);
}

}  // namespace nmjc
