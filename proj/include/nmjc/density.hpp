#pragma once

#include <Eigen/Core>
#include <vector>

#include "nmjc/coherent.hpp"

namespace nmjc {

/// 2x2 block in the ordered basis {|e,n>, |g,n+1>}.
using Block = Eigen::Matrix2cd;

/// Sector-diagonal part of the atom-field density operator for one momentum node.
struct BlockedDensity {
  double ground_pop = 0.0;  // <g,0|rho|g,0>
  std::vector<Block> blocks;

  std::complex<double> trace() const;
  /// max elementwise |rho - rho^dagger| over all blocks.
  double hermiticity_defect() const;
};

/// Atom excited, field coherent: block n = [[|w_n|^2, 0], [0, 0]], ground sector empty.
BlockedDensity initial_blocked_density(const CoherentWeights& w);

/// The same initial state replicated for each momentum node.
std::vector<BlockedDensity> initial_blocked_density(const CoherentWeights& w, std::size_t node_count);

}  // namespace nmjc
