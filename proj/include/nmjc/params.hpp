#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nmjc {

inline constexpr double kHbar = 1.054571817e-34;  // J s

/// Selects the coefficient of the quadruple-commutator dissipator.
enum class QuarticRateMode {
  gamma_eta,  // gamma * eta, the rate that appears in every factor of the closed-form solution
  bare_eta,   // eta alone, as written in the master equation
};

std::string_view to_string(QuarticRateMode mode);
QuarticRateMode parse_quartic_rate_mode(std::string_view text);

/// Model constants in the units they are quoted in (rad/s, SI), hbar = 1 for energies.
struct PhysicalParams {
  double lambda_coupling = 0.0;  // rad/s
  double delta0 = 0.0;           // rad/s, full detuning at p = 0, t = 0
  double omega_c_scaled = 1.0;   // cavity frequency in units of lambda

  std::optional<double> q_wavenumber;  // 1/m
  std::optional<double> atom_mass;     // kg
  double gravity = 0.0;                // m/s^2
  std::optional<double> qg_product;    // rad/s^2, overrides q * g when set

  double omega_recoil = 0.0;  // rad/s
  double gamma_damping = 0.0;
  double eta_nonmarkov = 0.0;

  std::complex<double> alpha_coherent{0.0, 0.0};
  double sigma0_momentum_width = 1.0;  // recoil units
  int fock_cutoff = 32;
  QuarticRateMode quartic_rate_mode = QuarticRateMode::gamma_eta;

  /// Accept a coherent state whose Poisson tail beyond the cutoff exceeds 1e-12
  /// (recorded as a warning instead of rejected).
  bool allow_coherent_tail = false;

  /// q * g actually used: the explicit product if set, else q * g from the components.
  double effective_qg() const;
};

struct TimeGrid {
  double tau_max = 0.0;
  double tau_step = 1.0;
};

/// Dimensionless parameters: energies in units of lambda, time tau = lambda t.
struct ScaledParams {
  double delta0_s = 0.0;
  double omega_c_s = 1.0;
  double doppler_coeff = 0.0;  // 2 omega_rec / lambda, multiplies p in recoil units
  double grav_drift = 0.0;     // q g / lambda^2
  double gamma_s = 0.0;
  double eta_s = 0.0;
  QuarticRateMode quartic_mode = QuarticRateMode::gamma_eta;
  std::vector<double> tau_grid;
  std::vector<std::string> warnings;

  /// Coefficient of the quadruple commutator for the exact and direct engines.
  double eta_quartic() const {
    return quartic_mode == QuarticRateMode::gamma_eta ? gamma_s * eta_s : eta_s;
  }
};

/// tau_i = i * step for i = 0 .. floor(tau_max / step), computed without accumulation.
std::vector<double> make_tau_grid(double tau_max, double tau_step);

/// Throws ValidationError on any violated invariant. `grid` may be empty (tau_max = 0 gives {0}).
ScaledParams validate_and_scale(const PhysicalParams& params, const TimeGrid& grid = {});

/// delta(p, tau) = delta0_s - doppler_coeff * p - grav_drift * tau.
double doppler_detuning(const ScaledParams& sp, double p, double tau);

/// Phase of the effective coupling kappa(t) = lambda exp(i t (Delta + hbar q^2 / M) / 2), in scaled
/// units. It cancels from every block-diagonal quantity and is kept for diagnostics only.
double coupling_phase(const ScaledParams& sp, double p, double tau);

}  // namespace nmjc
