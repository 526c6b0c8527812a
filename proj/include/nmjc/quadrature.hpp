#pragma once

#include <vector>

namespace nmjc {

struct MomentumNode {
  double p_recoil = 0.0;  // momentum along q in units of hbar q
  double weight = 1.0;
};

/// Gauss-Hermite rule for the weight exp(-2 p^2 / sigma0^2), normalized to unit mass.
/// Exact for polynomials of degree <= 2 count - 1; nodes are symmetric about zero.
std::vector<MomentumNode> gauss_quadrature_nodes(double sigma0, int count);

}  // namespace nmjc
