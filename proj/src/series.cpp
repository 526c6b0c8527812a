#include "nmjc/series.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nmjc/errors.hpp"

namespace nmjc {

namespace {

using Eigen::MatrixXcd;

// Induced 1-norm; bounds the spectral norm of a Hermitian matrix.
double one_norm(const MatrixXcd& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

MatrixXcd integer_power(const MatrixXcd& h, int k) {
  MatrixXcd r = MatrixXcd::Identity(h.rows(), h.cols());
  for (int j = 0; j < k; ++j) r = r * h;
  return r;
}

struct SumStats {
  int terms = 0;
  double peak = 0.0;
};

// sum_k x^k / k! H^{left k} rho H^{right k}
MatrixXcd power_sum(const MatrixXcd& rho, const MatrixXcd& h, int left, int right, double x,
                    const SeriesControls& controls, SumStats& stats, const char* label) {
  stats.terms = 1;
  stats.peak = rho.norm();
  if (x == 0.0) return rho;

  const MatrixXcd h_left = integer_power(h, left);
  const MatrixXcd h_right = integer_power(h, right);
  const double growth = std::abs(x) * std::pow(one_norm(h), left + right);

  MatrixXcd acc = rho;
  MatrixXcd term = rho;
  for (int k = 1;; ++k) {
    if (k >= controls.max_terms) {
      std::ostringstream os;
      os << label << " sum did not converge within " << controls.max_terms << " terms (|x| ||H||^" << left + right
         << " = " << growth << ")";
      throw SeriesError(os.str());
    }
    term = (x / k) * (h_left * term * h_right);
    acc += term;
    ++stats.terms;
    const double tn = term.norm();
    stats.peak = std::max(stats.peak, tn);
    if (!std::isfinite(tn)) throw SeriesError(std::string(label) + " sum overflowed");
    // Stop only once every later term is at most half the previous one.
    if (tn < controls.term_tol && growth / (k + 1) <= 0.5) break;
  }
  const double rounding = std::numeric_limits<double>::epsilon() * stats.peak * stats.terms;
  if (rounding > controls.max_rounding) {
    std::ostringstream os;
    os << label << " sum lost its significance to cancellation (peak term " << stats.peak << ")";
    throw SeriesError(os.str());
  }
  return acc;
}

}  // namespace

SeriesResult evolve_series_literal(const MatrixXcd& rho0, const MatrixXcd& hamiltonian, double gamma, double eta,
                                   double tau, const SeriesControls& controls, SeriesVariant variant,
                                   int max_dimension) {
  if (hamiltonian.rows() != hamiltonian.cols() || rho0.rows() != hamiltonian.rows() || rho0.cols() != rho0.rows())
    throw std::invalid_argument("evolve_series_literal: shape mismatch");
  if (hamiltonian.rows() > max_dimension)
    throw std::invalid_argument("evolve_series_literal: dimension exceeds the dense bound");
  if (controls.max_terms < 1 || !(controls.term_tol > 0.0))
    throw std::invalid_argument("evolve_series_literal: invalid series controls");

  const std::complex<double> i(0.0, 1.0);
  const double ge = gamma * eta;
  const MatrixXcd h2 = hamiltonian * hamiltonian;
  const MatrixXcd h4 = h2 * h2;

  // exp(S t) exp(T1 t) exp(T2 t) rho0
  const MatrixXcd quartic = (-ge * tau * h4).exp();
  const MatrixXcd quadratic = (-gamma * tau * h2).exp();
  const MatrixXcd left_unitary = (-i * tau * hamiltonian).exp();
  const MatrixXcd right_unitary = (i * tau * hamiltonian).exp();
  MatrixXcd rho = left_unitary * quadratic * quartic * rho0 * quartic * quadratic * right_unitary;

  SeriesResult out;
  SumStats s;

  rho = power_sum(rho, hamiltonian, 1, 2, -ge * tau, controls, s, "cubic cross");
  out.terms_used += s.terms;
  out.peak_term_norm = std::max(out.peak_term_norm, s.peak);

  if (variant == SeriesVariant::definitions)
    rho = power_sum(rho, hamiltonian, 2, 2, -3.0 * ge * tau, controls, s, "quartic cross");
  else
    rho = power_sum(rho, hamiltonian, 2, 1, -3.0 * ge * tau, controls, s, "quartic cross");
  out.terms_used += s.terms;
  out.peak_term_norm = std::max(out.peak_term_norm, s.peak);

  rho = power_sum(rho, hamiltonian, 1, 1, 2.0 * gamma * tau, controls, s, "quadratic cross");
  out.terms_used += s.terms;
  out.peak_term_norm = std::max(out.peak_term_norm, s.peak);

  out.rho = std::move(rho);
  return out;
}

}  // namespace nmjc
