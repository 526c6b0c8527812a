#include "nmjc/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "nmjc/errors.hpp"

namespace nmjc {

std::vector<MomentumNode> gauss_quadrature_nodes(double sigma0, int count) {
  if (count <= 0) throw ValidationError("quadrature node count must be positive");
  if (!(sigma0 > 0.0)) throw ValidationError("sigma0 must be positive");

  // Golub-Welsch for the physicists' Hermite weight exp(-x^2): symmetric tridiagonal Jacobi matrix
  // with off-diagonals sqrt(k/2); nodes are its eigenvalues, normalized weights the squared first
  // eigenvector components.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double b = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const Eigen::VectorXd x = eig.eigenvalues();
  Eigen::VectorXd w(count);
  for (int i = 0; i < count; ++i) w[i] = eig.eigenvectors()(0, i) * eig.eigenvectors()(0, i);

  // Enforce exact mirror symmetry (the solver leaves ~1 ulp asymmetry).
  std::vector<MomentumNode> nodes(count);
  const double scale = sigma0 / std::sqrt(2.0);  // p = sigma0 x / sqrt(2) maps exp(-x^2) to exp(-2p^2/sigma0^2)
  for (int i = 0; i < count; ++i) {
    const int j = count - 1 - i;
    const double xs = 0.5 * (x[i] - x[j]);
    const double ws = 0.5 * (w[i] + w[j]);
    nodes[i] = {i == j ? 0.0 : xs * scale, ws};
  }
  double total = 0.0;
  for (const auto& n : nodes) total += n.weight;
  for (auto& n : nodes) n.weight /= total;
  return nodes;
}

}  // namespace nmjc
