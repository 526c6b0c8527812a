#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "nmjc/density.hpp"
#include "nmjc/params.hpp"

namespace nmjc::testing {

inline Eigen::MatrixXcd random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// Random PSD blocks with unit total trace, including a ground population.
inline BlockedDensity random_blocked(int blocks, std::mt19937_64& rng) {
  BlockedDensity rho;
  rho.ground_pop = std::uniform_real_distribution<double>(0.0, 0.2)(rng);
  rho.blocks.resize(static_cast<std::size_t>(blocks));
  double total = rho.ground_pop;
  for (auto& b : rho.blocks) {
    b = random_density(2, rng);
    const double scale = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    b *= scale;
    total += scale;
  }
  rho.ground_pop /= total;
  for (auto& b : rho.blocks) b /= total;
  return rho;
}

inline double max_abs_diff(const BlockedDensity& a, const BlockedDensity& b) {
  double d = std::abs(a.ground_pop - b.ground_pop);
  for (std::size_t n = 0; n < a.blocks.size(); ++n) d = std::max(d, (a.blocks[n] - b.blocks[n]).cwiseAbs().maxCoeff());
  return d;
}

inline ScaledParams scaled(double delta0, double gamma, double eta) {
  ScaledParams sp;
  sp.omega_c_s = 1.0;
  sp.delta0_s = delta0;
  sp.doppler_coeff = 1.0;
  sp.gamma_s = gamma;
  sp.eta_s = eta;
  return sp;
}

}  // namespace nmjc::testing
