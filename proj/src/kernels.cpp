#include "nmjc/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nmjc/errors.hpp"

namespace nmjc {

std::string_view to_string(SeriesVariant v) {
  return v == SeriesVariant::definitions ? "definitions" : "reconstruction";
}

SeriesVariant parse_series_variant(std::string_view text) {
  if (text == "definitions") return SeriesVariant::definitions;
  if (text == "reconstruction") return SeriesVariant::reconstruction;
  throw std::invalid_argument("unknown series variant '" + std::string(text) + "'");
}

std::complex<double> KernelExponents::value() const {
  return std::polar(std::exp(decay), phase);
}

KernelExponents exact_exponents(double e_a, double e_b, double gamma, double eta_q, double tau) {
  const double d = e_a - e_b;
  const double d2 = d * d;
  return {-d * tau, -gamma * d2 * tau - eta_q * d2 * d2 * tau};
}

KernelExponents paper_exponents(double e_a, double e_b, double gamma, double eta, double tau,
                                SeriesVariant variant) {
  const double a2 = e_a * e_a;
  const double b2 = e_b * e_b;
  const double ge = gamma * eta;
  // Term by term, in the order the factors are composed: T2, T1, (S is the phase), R3, R2, R1.
  double decay = -ge * (a2 * a2 + b2 * b2) * tau;
  decay += -gamma * (a2 + b2) * tau;
  decay += -ge * (e_a * b2) * tau;
  if (variant == SeriesVariant::definitions)
    decay += -3.0 * ge * (a2 * b2) * tau;
  else
    decay += -3.0 * ge * (a2 * e_b) * tau;
  decay += 2.0 * gamma * (e_a * e_b) * tau;
  return {-(e_a - e_b) * tau, decay};
}

std::complex<double> kernel_exact(double e_a, double e_b, double gamma, double eta_q, double tau) {
  return exact_exponents(e_a, e_b, gamma, eta_q, tau).value();
}

std::complex<double> kernel_paper(double e_a, double e_b, double gamma, double eta, double tau,
                                  SeriesVariant variant, double exponent_clamp) {
  const auto k = paper_exponents(e_a, e_b, gamma, eta, tau, variant);
  if (k.decay > exponent_clamp) {
    std::ostringstream os;
    os << "paper-literal kernel exponent " << k.decay << " exceeds clamp " << exponent_clamp << " (E_a=" << e_a
       << ", E_b=" << e_b << ", tau=" << tau << ")";
    throw DivergenceError(os.str());
  }
  return k.value();
}

}  // namespace nmjc
