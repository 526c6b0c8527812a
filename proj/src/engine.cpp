#include "nmjc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nmjc/series.hpp"

namespace nmjc {

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::exact_spectral: return "exact_spectral";
    case EngineKind::paper_spectral: return "paper_spectral";
    case EngineKind::paper_series: return "paper_series";
    case EngineKind::direct_integrator: return "direct_integrator";
  }
  return "?";
}

EngineKind parse_engine_kind(std::string_view text) {
  for (auto k : {EngineKind::exact_spectral, EngineKind::paper_spectral, EngineKind::paper_series,
                 EngineKind::direct_integrator})
    if (text == to_string(k)) return k;
  throw std::invalid_argument("unknown engine '" + std::string(text) + "'");
}

void Corrections::merge(const Corrections& other) {
  hermitize = std::max(hermitize, other.hermitize);
  renormalize = std::max(renormalize, other.renormalize);
}

namespace {

std::complex<double> spectral_kernel(double e_a, double e_b, const EngineMode& mode, const DampingRates& rates,
                                     double tau, double clamp) {
  if (mode.kind == EngineKind::exact_spectral) return kernel_exact(e_a, e_b, rates.gamma, rates.eta_quartic, tau);
  return kernel_paper(e_a, e_b, rates.gamma, rates.eta, tau, mode.variant, clamp);
}

}  // namespace

Block evolve_block(const Block& rho0, const BlockSpectrum& spec, const EngineMode& mode, const DampingRates& rates,
                   double tau, const SeriesControls& controls) {
  switch (mode.kind) {
    case EngineKind::exact_spectral:
    case EngineKind::paper_spectral: {
      const Eigen::Matrix2cd v = spec.eigenvectors().cast<std::complex<double>>();
      Block in_eigen = v.transpose() * rho0 * v;
      const double e[2] = {spec.eig_plus, spec.eig_minus};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          in_eigen(a, b) *= spectral_kernel(e[a], e[b], mode, rates, tau, controls.exponent_clamp);
      return v * in_eigen * v.transpose();
    }
    case EngineKind::paper_series: {
      const Eigen::MatrixXcd h = assemble_block(spec.omega_c_s, spec.delta, spec.n).cast<std::complex<double>>();
      const Eigen::MatrixXcd r0 = rho0;
      auto res = evolve_series_literal(r0, h, rates.gamma, rates.eta, tau, controls, mode.variant);
      return res.rho;
    }
    case EngineKind::direct_integrator:
      break;
  }
  throw std::invalid_argument("evolve_block: the direct integrator has no closed-form block map");
}

double evolve_ground(double pop0, double energy, const EngineMode& mode, const DampingRates& rates, double tau,
                     const SeriesControls& controls) {
  switch (mode.kind) {
    case EngineKind::exact_spectral:
    case EngineKind::direct_integrator:
      return pop0;  // commutator generators leave a 1x1 sector alone
    case EngineKind::paper_spectral:
      return pop0 * spectral_kernel(energy, energy, mode, rates, tau, controls.exponent_clamp).real();
    case EngineKind::paper_series: {
      Eigen::MatrixXcd h(1, 1), r(1, 1);
      h(0, 0) = energy;
      r(0, 0) = pop0;
      return evolve_series_literal(r, h, rates.gamma, rates.eta, tau, controls, mode.variant).rho(0, 0).real();
    }
  }
  return pop0;
}

EvolvedDensity evolve_density(const BlockedDensity& rho0, const ScaledParams& sp, double p, const EngineMode& mode,
                              double tau, const SeriesControls& controls) {
  const double delta = doppler_detuning(sp, p, tau);
  const auto rates = DampingRates::from(sp);
  EvolvedDensity out;
  out.rho.blocks.resize(rho0.blocks.size());
  for (std::size_t n = 0; n < rho0.blocks.size(); ++n) {
    const auto spec = block_spectrum(sp.omega_c_s, delta, static_cast<int>(n));
    out.rho.blocks[n] = evolve_block(rho0.blocks[n], spec, mode, rates, tau, controls);
  }
  out.rho.ground_pop = evolve_ground(rho0.ground_pop, ground_energy(sp.omega_c_s, delta), mode, rates, tau, controls);
  if (mode.hermitize) out.corrections.hermitize = hermitize(out.rho);
  if (mode.renormalize) out.corrections.renormalize = renormalize(out.rho);
  return out;
}

Eigen::Matrix2cd block_propagator(double delta, int n, double tau) {
  const double omega = rabi_frequency(delta, n);
  const Eigen::Matrix2cd h2 = assemble_interaction_block(delta, n).cast<std::complex<double>>();
  const std::complex<double> off(0.0, -std::sin(omega * tau) / omega);
  return std::cos(omega * tau) * Eigen::Matrix2cd::Identity() + off * h2;
}

Block hermitize(const Block& b) {
  return 0.5 * (b + b.adjoint());
}

double hermitize(BlockedDensity& rho) {
  double change = 0.0;
  for (auto& b : rho.blocks) {
    const Block h = hermitize(b);
    change = std::max(change, (h - b).cwiseAbs().maxCoeff());
    b = h;
  }
  return change;
}

double renormalize(BlockedDensity& rho) {
  const auto tr = rho.trace();
  if (std::abs(tr) < 1e-14) throw std::domain_error("renormalize: trace vanishes");
  const double t = tr.real();
  rho.ground_pop /= t;
  for (auto& b : rho.blocks) b /= t;
  return std::abs(t - 1.0);
}

}  // namespace nmjc
