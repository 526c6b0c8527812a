#include "nmjc/spectrum.hpp"

#include <cmath>

namespace nmjc {

double rabi_frequency(double delta, int n) {
  return std::hypot(0.25 * delta, std::sqrt(n + 1.0));
}

Eigen::Matrix2d BlockSpectrum::eigenvectors() const {
  Eigen::Matrix2d v;
  v << mix_cos, -mix_sin,
       mix_sin, mix_cos;
  return v;
}

BlockSpectrum block_spectrum(double omega_c_s, double delta, int n) {
  BlockSpectrum s;
  s.n = n;
  s.omega_c_s = omega_c_s;
  s.delta = delta;
  s.rabi = rabi_frequency(delta, n);
  const double centre = omega_c_s * (n + 0.5);
  s.eig_plus = centre + s.rabi;
  s.eig_minus = centre - s.rabi;
  // [[d, c], [c, -d]] with c > 0: the upper eigenvector sits at half the angle atan2(c, d).
  const double theta = 0.5 * std::atan2(std::sqrt(n + 1.0), 0.25 * delta);
  s.mix_cos = std::cos(theta);
  s.mix_sin = std::sin(theta);
  return s;
}

double ground_energy(double omega_c_s, double delta) {
  return -0.5 * omega_c_s - 0.25 * delta;
}

Eigen::Matrix2d assemble_interaction_block(double delta, int n) {
  const double c = std::sqrt(n + 1.0);
  Eigen::Matrix2d h;
  h << 0.25 * delta, c,
       c, -0.25 * delta;
  return h;
}

Eigen::Matrix2d assemble_block(double omega_c_s, double delta, int n) {
  return omega_c_s * (n + 0.5) * Eigen::Matrix2d::Identity() + assemble_interaction_block(delta, n);
}

Spectrum system_spectrum(double omega_c_s, double delta, int max_block) {
  Spectrum s;
  s.blocks.reserve(static_cast<std::size_t>(max_block) + 1);
  for (int n = 0; n <= max_block; ++n) s.blocks.push_back(block_spectrum(omega_c_s, delta, n));
  s.ground = ground_energy(omega_c_s, delta);
  return s;
}

}  // namespace nmjc
