#pragma once

#include <Eigen/Core>

#include "nmjc/engine.hpp"

namespace nmjc {

struct SeriesResult {
  Eigen::MatrixXcd rho;
  int terms_used = 0;  // total over the three nested sums
  double peak_term_norm = 0.0;
};

/// Literal reconstruction of rho(tau) by explicit matrix products:
///   exp(-iH t) exp(-g H^2 t) exp(-g e H^4 t) rho0 exp(-g e H^4 t) exp(-g H^2 t) exp(iH t)
/// followed by the three truncated power sums (innermost first). Each sum stops at the first term
/// with Frobenius norm below term_tol once the remaining terms are provably shrinking by half.
/// Throws SeriesError on non-convergence within max_terms or on catastrophic cancellation.
SeriesResult evolve_series_literal(const Eigen::MatrixXcd& rho0, const Eigen::MatrixXcd& hamiltonian,
                                   double gamma, double eta, double tau, const SeriesControls& controls,
                                   SeriesVariant variant, int max_dimension = 64);

}  // namespace nmjc
