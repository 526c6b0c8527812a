#pragma once

#include <Eigen/Core>
#include <vector>

namespace nmjc {

/// Generalized Rabi frequency Omega_n = sqrt((delta/4)^2 + (n + 1)), units of lambda.
double rabi_frequency(double delta, int n);

/// Dressed spectrum of the excitation block {|e,n>, |g,n+1>}.
///
/// The block Hamiltonian is omega_c (n + 1/2) I + [[delta/4, sqrt(n+1)], [sqrt(n+1), -delta/4]].
/// The "+" eigenvector is (mix_cos, mix_sin), the "-" eigenvector (-mix_sin, mix_cos).
struct BlockSpectrum {
  int n = 0;
  double omega_c_s = 0.0;
  double delta = 0.0;
  double rabi = 0.0;
  double eig_plus = 0.0;
  double eig_minus = 0.0;
  double mix_cos = 1.0;
  double mix_sin = 0.0;

  /// Columns are the "+" and "-" eigenvectors.
  Eigen::Matrix2d eigenvectors() const;
  Eigen::Vector2d eigenvalues() const { return {eig_plus, eig_minus}; }
};

BlockSpectrum block_spectrum(double omega_c_s, double delta, int n);

/// Energy of the uncoupled |g,0> sector: -omega_c/2 - delta/4.
double ground_energy(double omega_c_s, double delta);

/// Direct assembly of the block Hamiltonian H1 + H2 (coupling phase absorbed).
Eigen::Matrix2d assemble_block(double omega_c_s, double delta, int n);

/// Only the H2 part of the block: [[delta/4, sqrt(n+1)], [sqrt(n+1), -delta/4]].
Eigen::Matrix2d assemble_interaction_block(double delta, int n);

/// All blocks 0..max_block and the ground sector at one detuning.
struct Spectrum {
  std::vector<BlockSpectrum> blocks;
  double ground = 0.0;
};

Spectrum system_spectrum(double omega_c_s, double delta, int max_block);

}  // namespace nmjc
