#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nmjc/coherent.hpp"
#include "nmjc/density.hpp"
#include "nmjc/quadrature.hpp"
#include "nmjc/spectrum.hpp"

namespace nmjc {

struct InversionReading {
  double value = 0.0;          // sum_n <e,n|rho|e,n> - <g,n|rho|g,n>, real parts
  double imag_residue = 0.0;   // same sum over imaginary parts
};

InversionReading population_inversion(const BlockedDensity& rho);

/// Standard resonant/detuned JCM inversion for gamma = eta = 0:
/// W = sum_n |w_n|^2 [(delta/4)^2 + (n+1) cos(2 Omega_n tau)] / Omega_n^2.
double analytic_inversion_undamped(const CoherentWeights& w, double delta, double tau);

struct PhotonDistribution {
  std::vector<double> P;  // n = 0 .. blocks
  double sum() const;
};

/// P(n) = Re block_n[0,0] + Re block_{n-1}[1,1] (+ ground population for n = 0).
PhotonDistribution photon_distribution(const BlockedDensity& rho);

struct PhotonMoments {
  double total = 0.0;   // sum P before renormalization
  double mean = 0.0;    // of the sum-renormalized distribution
  double second = 0.0;
  std::optional<double> mandel_q;  // empty when <n> = 0
};

/// Moments of P / sum(P). Throws std::domain_error when sum(P) <= 1e-12.
PhotonMoments photon_moments(const PhotonDistribution& p);

/// Q = (<n^2> - <n>^2) / <n> - 1; empty when <n> = 0.
std::optional<double> mandel_q(const PhotonDistribution& p);

/// sum_i weight_i value_i in node order. Throws std::invalid_argument on length mismatch.
double momentum_average(std::span<const double> values, std::span<const MomentumNode> nodes);

/// Same weighted sum applied componentwise to per-node distributions (padded with zeros).
PhotonDistribution momentum_average(std::span<const PhotonDistribution> values, std::span<const MomentumNode> nodes);

/// Long-time reference: coherences between dressed states removed, populations kept.
BlockedDensity dephased_projection(const BlockedDensity& rho, const Spectrum& spectrum);

}  // namespace nmjc
