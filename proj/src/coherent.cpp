#include "nmjc/coherent.hpp"

#include <cmath>

#include "nmjc/errors.hpp"

namespace nmjc {

double CoherentWeights::norm_squared() const {
  double s = 0.0;
  for (const auto& a : w) s += std::norm(a);
  return s;
}

namespace {

// log |w_n|^2 = -|alpha|^2 + 2 n log|alpha| - log n!
double log_poisson(double mean, int n) {
  if (n == 0) return -mean;
  return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

}  // namespace

CoherentWeights coherent_weights(std::complex<double> alpha, int cutoff) {
  if (cutoff < 1) throw ValidationError("fock cutoff must be at least 1");
  CoherentWeights out;
  out.w.assign(static_cast<std::size_t>(cutoff) + 1, {0.0, 0.0});
  const double r = std::abs(alpha);
  if (r == 0.0) {
    out.w[0] = 1.0;
    return out;
  }
  const double mean = r * r;
  const double phase = std::arg(alpha);
  for (int n = 0; n <= cutoff; ++n) {
    const double mag = std::exp(0.5 * log_poisson(mean, n));
    out.w[n] = std::polar(mag, n * phase);
  }
  return out;
}

double coherent_tail(std::complex<double> alpha, int cutoff) {
  const double mean = std::norm(alpha);
  if (mean == 0.0) return 0.0;
  double tail = 0.0;
  // Past the mode the terms fall off at least geometrically; stop once they no longer register.
  for (int n = cutoff + 1;; ++n) {
    const double term = std::exp(log_poisson(mean, n));
    tail += term;
    if (n > mean && term < 1e-18 * tail) break;
    if (n > cutoff + 100000) break;
  }
  return tail;
}

}  // namespace nmjc
