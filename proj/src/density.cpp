#include "nmjc/density.hpp"

#include <algorithm>

namespace nmjc {

std::complex<double> BlockedDensity::trace() const {
  std::complex<double> t = ground_pop;
  for (const auto& b : blocks) t += b.trace();
  return t;
}

double BlockedDensity::hermiticity_defect() const {
  double d = 0.0;
  for (const auto& b : blocks) d = std::max(d, (b - b.adjoint()).cwiseAbs().maxCoeff());
  return d;
}

BlockedDensity initial_blocked_density(const CoherentWeights& w) {
  BlockedDensity rho;
  rho.blocks.resize(w.size(), Block::Zero());
  for (std::size_t n = 0; n < w.size(); ++n) rho.blocks[n](0, 0) = w.probability(n);
  return rho;
}

std::vector<BlockedDensity> initial_blocked_density(const CoherentWeights& w, std::size_t node_count) {
  return std::vector<BlockedDensity>(node_count, initial_blocked_density(w));
}

}  // namespace nmjc
