#pragma once

#include <complex>
#include <vector>

namespace nmjc {

/// Fock amplitudes w_n(0), n = 0..N, of a Glauber coherent state.
struct CoherentWeights {
  std::vector<std::complex<double>> w;

  std::size_t size() const { return w.size(); }
  double probability(std::size_t n) const { return std::norm(w[n]); }
  double norm_squared() const;
};

/// w_n = exp(-|alpha|^2 / 2) alpha^n / sqrt(n!), evaluated in the log domain.
CoherentWeights coherent_weights(std::complex<double> alpha, int cutoff);

/// Poisson mass sum_{n > cutoff} |w_n|^2, summed directly rather than as 1 - head.
double coherent_tail(std::complex<double> alpha, int cutoff);

}  // namespace nmjc
