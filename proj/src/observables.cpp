#include "nmjc/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace nmjc {

InversionReading population_inversion(const BlockedDensity& rho) {
  InversionReading r;
  for (const auto& b : rho.blocks) {
    const auto diff = b(0, 0) - b(1, 1);
    r.value += diff.real();
    r.imag_residue += diff.imag();
  }
  r.value -= rho.ground_pop;
  return r;
}

double analytic_inversion_undamped(const CoherentWeights& w, double delta, double tau) {
  const double q = 0.25 * delta;
  double sum = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    const double omega = rabi_frequency(delta, static_cast<int>(n));
    sum += w.probability(n) * (q * q + (n + 1.0) * std::cos(2.0 * omega * tau)) / (omega * omega);
  }
  return sum;
}

double PhotonDistribution::sum() const {
  double s = 0.0;
  for (double v : P) s += v;
  return s;
}

PhotonDistribution photon_distribution(const BlockedDensity& rho) {
  PhotonDistribution d;
  d.P.assign(rho.blocks.size() + 1, 0.0);
  d.P[0] = rho.ground_pop;
  for (std::size_t n = 0; n < rho.blocks.size(); ++n) {
    d.P[n] += rho.blocks[n](0, 0).real();
    d.P[n + 1] += rho.blocks[n](1, 1).real();
  }
  return d;
}

PhotonMoments photon_moments(const PhotonDistribution& p) {
  PhotonMoments m;
  m.total = p.sum();
  if (!(m.total > 1e-12)) throw std::domain_error("photon distribution has no weight");
  for (std::size_t n = 0; n < p.P.size(); ++n) {
    const double pn = p.P[n] / m.total;
    m.mean += n * pn;
    m.second += static_cast<double>(n) * n * pn;
  }
  if (m.mean != 0.0) m.mandel_q = (m.second - m.mean * m.mean) / m.mean - 1.0;
  return m;
}

std::optional<double> mandel_q(const PhotonDistribution& p) {
  return photon_moments(p).mandel_q;
}

double momentum_average(std::span<const double> values, std::span<const MomentumNode> nodes) {
  if (values.size() != nodes.size()) throw std::invalid_argument("momentum_average: one value per node required");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += nodes[i].weight * values[i];
  return s;
}

PhotonDistribution momentum_average(std::span<const PhotonDistribution> values, std::span<const MomentumNode> nodes) {
  if (values.size() != nodes.size()) throw std::invalid_argument("momentum_average: one value per node required");
  PhotonDistribution out;
  for (const auto& v : values) out.P.resize(std::max(out.P.size(), v.P.size()), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t n = 0; n < values[i].P.size(); ++n) out.P[n] += nodes[i].weight * values[i].P[n];
  return out;
}

BlockedDensity dephased_projection(const BlockedDensity& rho, const Spectrum& spectrum) {
  if (spectrum.blocks.size() < rho.blocks.size()) throw std::invalid_argument("dephased_projection: spectrum too short");
  BlockedDensity out = rho;
  for (std::size_t n = 0; n < rho.blocks.size(); ++n) {
    const Eigen::Matrix2cd v = spectrum.blocks[n].eigenvectors().cast<std::complex<double>>();
    Block e = v.transpose() * rho.blocks[n] * v;
    e(0, 1) = 0.0;
    e(1, 0) = 0.0;
    out.blocks[n] = v * e * v.transpose();
  }
  return out;
}

}  // namespace nmjc
