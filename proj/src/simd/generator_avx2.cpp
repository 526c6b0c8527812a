// Compiled with -mavx2 (no -mfma): every product and sum rounds separately, as in the scalar path.

#include <immintrin.h>

#include "nmjc/simd/kernels.hpp"

namespace nmjc::simd {

namespace {

struct Quad {
  __m256d x00, x01, x10, x11;
};

inline Quad commutator(const Quad& x, __m256d two_d, __m256d c) {
  return {_mm256_mul_pd(c, _mm256_sub_pd(x.x10, x.x01)),
          _mm256_add_pd(_mm256_mul_pd(two_d, x.x01), _mm256_mul_pd(c, _mm256_sub_pd(x.x11, x.x00))),
          _mm256_sub_pd(_mm256_mul_pd(c, _mm256_sub_pd(x.x00, x.x11)), _mm256_mul_pd(two_d, x.x10)),
          _mm256_mul_pd(c, _mm256_sub_pd(x.x01, x.x10))};
}

inline __m256d combine(__m256d first, __m256d gamma, __m256d second, __m256d eta, __m256d fourth) {
  return _mm256_sub_pd(_mm256_sub_pd(first, _mm256_mul_pd(gamma, second)), _mm256_mul_pd(eta, fourth));
}

void generator(ConstLanes rho, const double* coupling, GeneratorCoeffs k, Lanes out, std::size_t count) {
  const __m256d two_d = _mm256_set1_pd(2.0 * k.quarter_delta);
  const __m256d gamma = _mm256_set1_pd(k.gamma);
  const __m256d eta = _mm256_set1_pd(k.eta_quartic);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d c = _mm256_loadu_pd(coupling + j);
    const Quad re0{_mm256_loadu_pd(rho.c[0] + j), _mm256_loadu_pd(rho.c[1] + j), _mm256_loadu_pd(rho.c[2] + j),
                   _mm256_loadu_pd(rho.c[3] + j)};
    const Quad im0{_mm256_loadu_pd(rho.c[4] + j), _mm256_loadu_pd(rho.c[5] + j), _mm256_loadu_pd(rho.c[6] + j),
                   _mm256_loadu_pd(rho.c[7] + j)};
    const Quad re1 = commutator(re0, two_d, c), im1 = commutator(im0, two_d, c);
    const Quad re2 = commutator(re1, two_d, c), im2 = commutator(im1, two_d, c);
    const Quad re3 = commutator(re2, two_d, c), im3 = commutator(im2, two_d, c);
    const Quad re4 = commutator(re3, two_d, c), im4 = commutator(im3, two_d, c);

    _mm256_storeu_pd(out.c[0] + j, combine(im1.x00, gamma, re2.x00, eta, re4.x00));
    _mm256_storeu_pd(out.c[1] + j, combine(im1.x01, gamma, re2.x01, eta, re4.x01));
    _mm256_storeu_pd(out.c[2] + j, combine(im1.x10, gamma, re2.x10, eta, re4.x10));
    _mm256_storeu_pd(out.c[3] + j, combine(im1.x11, gamma, re2.x11, eta, re4.x11));
    _mm256_storeu_pd(out.c[4] + j, combine(_mm256_xor_pd(re1.x00, sign), gamma, im2.x00, eta, im4.x00));
    _mm256_storeu_pd(out.c[5] + j, combine(_mm256_xor_pd(re1.x01, sign), gamma, im2.x01, eta, im4.x01));
    _mm256_storeu_pd(out.c[6] + j, combine(_mm256_xor_pd(re1.x10, sign), gamma, im2.x10, eta, im4.x10));
    _mm256_storeu_pd(out.c[7] + j, combine(_mm256_xor_pd(re1.x11, sign), gamma, im2.x11, eta, im4.x11));
  }
  if (j < count) {
    ConstLanes rest_in;
    Lanes rest_out;
    for (int c = 0; c < kComponents; ++c) {
      rest_in.c[c] = rho.c[c] + j;
      rest_out.c[c] = out.c[c] + j;
    }
    scalar_kernels().generator(rest_in, coupling + j, k, rest_out, count - j);
  }
}

void axpy(ConstLanes y, double a, ConstLanes x, Lanes out, std::size_t count) {
  const __m256d av = _mm256_set1_pd(a);
  for (int c = 0; c < kComponents; ++c) {
    std::size_t j = 0;
    for (; j + 4 <= count; j += 4)
      _mm256_storeu_pd(out.c[c] + j, _mm256_add_pd(_mm256_loadu_pd(y.c[c] + j),
                                                   _mm256_mul_pd(av, _mm256_loadu_pd(x.c[c] + j))));
    for (; j < count; ++j) out.c[c][j] = y.c[c][j] + a * x.c[c][j];
  }
}

void rk4_combine(Lanes y, double h6, ConstLanes k1, ConstLanes k2, ConstLanes k3, ConstLanes k4, std::size_t count) {
  const __m256d hv = _mm256_set1_pd(h6);
  const __m256d two = _mm256_set1_pd(2.0);
  for (int c = 0; c < kComponents; ++c) {
    std::size_t j = 0;
    for (; j + 4 <= count; j += 4) {
      __m256d s = _mm256_add_pd(_mm256_loadu_pd(k1.c[c] + j), _mm256_mul_pd(two, _mm256_loadu_pd(k2.c[c] + j)));
      s = _mm256_add_pd(s, _mm256_mul_pd(two, _mm256_loadu_pd(k3.c[c] + j)));
      s = _mm256_add_pd(s, _mm256_loadu_pd(k4.c[c] + j));
      _mm256_storeu_pd(y.c[c] + j, _mm256_add_pd(_mm256_loadu_pd(y.c[c] + j), _mm256_mul_pd(hv, s)));
    }
    for (; j < count; ++j)
      y.c[c][j] = y.c[c][j] + h6 * (((k1.c[c][j] + 2.0 * k2.c[c][j]) + 2.0 * k3.c[c][j]) + k4.c[c][j]);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", &generator, &axpy, &rk4_combine};
  return table;
}

}  // namespace nmjc::simd
