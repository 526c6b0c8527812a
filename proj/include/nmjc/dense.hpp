#pragma once

// Small dense realization of the truncated atom-field space, used as an independent oracle for the
// blocked engines. Basis index: |e,n> -> 2n, |g,n> -> 2n + 1, for n = 0..fock_cutoff.

#include <Eigen/Core>

#include "nmjc/density.hpp"
#include "nmjc/engine.hpp"

namespace nmjc::dense {

struct DenseSystem {
  int fock_cutoff = 3;
  double omega_c_s = 1.0;
  double delta = 0.0;

  int dim() const { return 2 * (fock_cutoff + 1); }
  static int excited(int n) { return 2 * n; }
  static int ground(int n) { return 2 * n + 1; }

  /// omega_c (a^dagger a + sigma_z / 2), diagonal.
  Eigen::MatrixXcd free_part() const;
  /// (delta/4) sigma_z + sqrt(n+1) (|e,n><g,n+1| + h.c.), truncated at the cutoff.
  Eigen::MatrixXcd interaction_part() const;
  Eigen::MatrixXcd hamiltonian() const { return free_part() + interaction_part(); }
};

/// Dense operators that the closed-form solution is assembled from.
struct SeriesOracleTables {
  Eigen::MatrixXcd h, h_sq, h_quartic;
  Eigen::MatrixXcd free_part, interaction_part;
  Eigen::MatrixXcd sq_diag, sq_cross;          // H^2 = sq_diag + sq_cross
  Eigen::MatrixXcd quart_diag, quart_cross;    // H^4 = quart_diag + quart_cross
  Eigen::MatrixXcd interaction_propagator;     // exp(-i H2 t)
  Eigen::MatrixXcd sq_cross_damping;           // exp(-gamma sq_cross t)
  Eigen::MatrixXcd quart_cross_damping;        // exp(-gamma eta quart_cross t)
  Eigen::MatrixXcd diagonal_factor;            // exp(-i H1 t) exp(-gamma sq_diag t) exp(-gamma eta quart_diag t)
  Eigen::MatrixXcd left_factor;                // product of all of the above, the left action on rho0
};

SeriesOracleTables make_oracle_tables(const DenseSystem& sys, double gamma, double eta, double tau);

struct DenseEigenbasis {
  Eigen::MatrixXd vectors;  // columns
  Eigen::VectorXd energies;
};

/// Eigenbasis assembled from the analytic block spectra (ground, full blocks, and the dangling
/// |e,cutoff> state whose partner lies beyond the truncation).
DenseEigenbasis analytic_eigenbasis(const DenseSystem& sys);

/// Spectral engine on the full dense operator (all sectors, including cross-block coherences).
Eigen::MatrixXcd spectral_evolve(const DenseSystem& sys, const Eigen::MatrixXcd& rho0, const EngineMode& mode,
                                 const DampingRates& rates, double tau, double exponent_clamp = 50.0);

/// Places a blocked density (blocks 0..fock_cutoff-1) into the dense space.
Eigen::MatrixXcd embed(const BlockedDensity& rho, int fock_cutoff);

/// Reads the sector-diagonal blocks 0..max_block and the ground population back out.
BlockedDensity extract_blocks(const Eigen::MatrixXcd& rho, int max_block);

}  // namespace nmjc::dense
