#pragma once

#include <complex>
#include <string_view>

namespace nmjc {

/// Two readings of the quartic cross terms of the closed-form solution: the defining sums
/// (H^{2l} rho H^{2l}, then H^m rho H^{2m}) and their later re-statement (H^i rho H^{2i},
/// then H^{2j} rho H^j). They disagree; both are kept.
enum class SeriesVariant { definitions, reconstruction };

std::string_view to_string(SeriesVariant v);
SeriesVariant parse_series_variant(std::string_view text);

/// Multiplier of the eigenbasis element (a, b) written as exp(decay + i phase).
struct KernelExponents {
  double phase = 0.0;
  double decay = 0.0;

  std::complex<double> value() const;
};

/// Exact solution of d rho/d tau = -i[H,rho] - gamma [H,[H,rho]] - eta_q [H,[H,[H,[H,rho]]]].
KernelExponents exact_exponents(double e_a, double e_b, double gamma, double eta_q, double tau);

/// Composition exp(R1) exp(R2) exp(R3) exp(S) exp(T1) exp(T2) as literally defined, in the eigenbasis.
/// Uses the rate gamma * eta in every quartic factor.
KernelExponents paper_exponents(double e_a, double e_b, double gamma, double eta, double tau,
                                SeriesVariant variant);

std::complex<double> kernel_exact(double e_a, double e_b, double gamma, double eta_q, double tau);

/// Throws DivergenceError when the real exponent exceeds `exponent_clamp`.
std::complex<double> kernel_paper(double e_a, double e_b, double gamma, double eta, double tau,
                                  SeriesVariant variant, double exponent_clamp = 50.0);

}  // namespace nmjc
