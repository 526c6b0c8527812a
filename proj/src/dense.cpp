#include "nmjc/dense.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

#include "nmjc/kernels.hpp"
#include "nmjc/spectrum.hpp"

namespace nmjc::dense {

using Eigen::MatrixXcd;

MatrixXcd DenseSystem::free_part() const {
  MatrixXcd h = MatrixXcd::Zero(dim(), dim());
  for (int n = 0; n <= fock_cutoff; ++n) {
    h(excited(n), excited(n)) = omega_c_s * (n + 0.5);
    h(ground(n), ground(n)) = omega_c_s * (n - 0.5);
  }
  return h;
}

MatrixXcd DenseSystem::interaction_part() const {
  MatrixXcd h = MatrixXcd::Zero(dim(), dim());
  for (int n = 0; n <= fock_cutoff; ++n) {
    h(excited(n), excited(n)) = 0.25 * delta;
    h(ground(n), ground(n)) = -0.25 * delta;
  }
  for (int n = 0; n + 1 <= fock_cutoff; ++n) {
    const double c = std::sqrt(n + 1.0);
    h(excited(n), ground(n + 1)) = c;
    h(ground(n + 1), excited(n)) = c;
  }
  return h;
}

SeriesOracleTables make_oracle_tables(const DenseSystem& sys, double gamma, double eta, double tau) {
  const std::complex<double> i(0.0, 1.0);
  SeriesOracleTables t;
  t.free_part = sys.free_part();
  t.interaction_part = sys.interaction_part();
  t.h = t.free_part + t.interaction_part;
  t.h_sq = t.h * t.h;
  t.h_quartic = t.h_sq * t.h_sq;

  t.sq_diag = t.free_part * t.free_part + t.interaction_part * t.interaction_part;
  t.sq_cross = 2.0 * t.free_part * t.interaction_part;
  t.quart_diag = t.sq_diag * t.sq_diag + t.sq_cross * t.sq_cross;
  t.quart_cross = 2.0 * t.sq_diag * t.sq_cross;

  const double ge = gamma * eta;
  t.interaction_propagator = (-i * tau * t.interaction_part).exp();
  t.sq_cross_damping = (-gamma * tau * t.sq_cross).exp();
  t.quart_cross_damping = (-ge * tau * t.quart_cross).exp();
  const MatrixXcd free_prop = (-i * tau * t.free_part).exp();
  const MatrixXcd sq_diag_damp = (-gamma * tau * t.sq_diag).exp();
  const MatrixXcd quart_diag_damp = (-ge * tau * t.quart_diag).exp();
  t.diagonal_factor = free_prop * sq_diag_damp * quart_diag_damp;
  t.left_factor = t.interaction_propagator * t.sq_cross_damping * t.quart_cross_damping * t.diagonal_factor;
  return t;
}

DenseEigenbasis analytic_eigenbasis(const DenseSystem& sys) {
  const int d = sys.dim();
  DenseEigenbasis b;
  b.vectors = Eigen::MatrixXd::Zero(d, d);
  b.energies = Eigen::VectorXd::Zero(d);
  int col = 0;

  b.vectors(DenseSystem::ground(0), col) = 1.0;
  b.energies[col++] = ground_energy(sys.omega_c_s, sys.delta);

  for (int n = 0; n + 1 <= sys.fock_cutoff; ++n) {
    const auto s = block_spectrum(sys.omega_c_s, sys.delta, n);
    const int e = DenseSystem::excited(n);
    const int g = DenseSystem::ground(n + 1);
    b.vectors(e, col) = s.mix_cos;
    b.vectors(g, col) = s.mix_sin;
    b.energies[col++] = s.eig_plus;
    b.vectors(e, col) = -s.mix_sin;
    b.vectors(g, col) = s.mix_cos;
    b.energies[col++] = s.eig_minus;
  }

  const int top = sys.fock_cutoff;
  b.vectors(DenseSystem::excited(top), col) = 1.0;
  b.energies[col++] = sys.omega_c_s * (top + 0.5) + 0.25 * sys.delta;
  return b;
}

MatrixXcd spectral_evolve(const DenseSystem& sys, const MatrixXcd& rho0, const EngineMode& mode,
                          const DampingRates& rates, double tau, double exponent_clamp) {
  if (mode.kind != EngineKind::exact_spectral && mode.kind != EngineKind::paper_spectral)
    throw std::invalid_argument("dense spectral_evolve: spectral engines only");
  const auto basis = analytic_eigenbasis(sys);
  const MatrixXcd u = basis.vectors.cast<std::complex<double>>();
  MatrixXcd r = u.transpose() * rho0 * u;
  for (int a = 0; a < r.rows(); ++a)
    for (int b = 0; b < r.cols(); ++b) {
      const double ea = basis.energies[a], eb = basis.energies[b];
      r(a, b) *= mode.kind == EngineKind::exact_spectral
                     ? kernel_exact(ea, eb, rates.gamma, rates.eta_quartic, tau)
                     : kernel_paper(ea, eb, rates.gamma, rates.eta, tau, mode.variant, exponent_clamp);
    }
  return u * r * u.transpose();
}

MatrixXcd embed(const BlockedDensity& rho, int fock_cutoff) {
  if (static_cast<int>(rho.blocks.size()) > fock_cutoff)
    throw std::invalid_argument("embed: blocks exceed the dense truncation");
  const DenseSystem sys{fock_cutoff, 0.0, 0.0};
  MatrixXcd m = MatrixXcd::Zero(sys.dim(), sys.dim());
  m(DenseSystem::ground(0), DenseSystem::ground(0)) = rho.ground_pop;
  for (int n = 0; n < static_cast<int>(rho.blocks.size()); ++n) {
    const int idx[2] = {DenseSystem::excited(n), DenseSystem::ground(n + 1)};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m(idx[a], idx[b]) = rho.blocks[n](a, b);
  }
  return m;
}

BlockedDensity extract_blocks(const MatrixXcd& rho, int max_block) {
  BlockedDensity out;
  out.ground_pop = rho(DenseSystem::ground(0), DenseSystem::ground(0)).real();
  out.blocks.resize(static_cast<std::size_t>(max_block) + 1);
  for (int n = 0; n <= max_block; ++n) {
    const int idx[2] = {DenseSystem::excited(n), DenseSystem::ground(n + 1)};
    if (idx[1] >= rho.rows()) throw std::invalid_argument("extract_blocks: block beyond the dense truncation");
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out.blocks[n](a, b) = rho(idx[a], idx[b]);
  }
  return out;
}

}  // namespace nmjc::dense
