#include "nmjc/simd/kernels.hpp"

namespace nmjc::simd {

namespace {

struct Quad {
  double x00, x01, x10, x11;
};

// [H2, x] for H2 = [[d, c], [c, -d]]; acts on real and imaginary parts independently.
inline Quad commutator(const Quad& x, double two_d, double c) {
  return {c * (x.x10 - x.x01), two_d * x.x01 + c * (x.x11 - x.x00), c * (x.x00 - x.x11) - two_d * x.x10,
          c * (x.x01 - x.x10)};
}

void generator(ConstLanes rho, const double* coupling, GeneratorCoeffs k, Lanes out, std::size_t count) {
  const double two_d = 2.0 * k.quarter_delta;
  for (std::size_t j = 0; j < count; ++j) {
    const double c = coupling[j];
    const Quad re0{rho.c[0][j], rho.c[1][j], rho.c[2][j], rho.c[3][j]};
    const Quad im0{rho.c[4][j], rho.c[5][j], rho.c[6][j], rho.c[7][j]};
    const Quad re1 = commutator(re0, two_d, c), im1 = commutator(im0, two_d, c);
    const Quad re2 = commutator(re1, two_d, c), im2 = commutator(im1, two_d, c);
    const Quad re3 = commutator(re2, two_d, c), im3 = commutator(im2, two_d, c);
    const Quad re4 = commutator(re3, two_d, c), im4 = commutator(im3, two_d, c);

    out.c[0][j] = (im1.x00 - k.gamma * re2.x00) - k.eta_quartic * re4.x00;
    out.c[1][j] = (im1.x01 - k.gamma * re2.x01) - k.eta_quartic * re4.x01;
    out.c[2][j] = (im1.x10 - k.gamma * re2.x10) - k.eta_quartic * re4.x10;
    out.c[3][j] = (im1.x11 - k.gamma * re2.x11) - k.eta_quartic * re4.x11;
    out.c[4][j] = (-re1.x00 - k.gamma * im2.x00) - k.eta_quartic * im4.x00;
    out.c[5][j] = (-re1.x01 - k.gamma * im2.x01) - k.eta_quartic * im4.x01;
    out.c[6][j] = (-re1.x10 - k.gamma * im2.x10) - k.eta_quartic * im4.x10;
    out.c[7][j] = (-re1.x11 - k.gamma * im2.x11) - k.eta_quartic * im4.x11;
  }
}

void axpy(ConstLanes y, double a, ConstLanes x, Lanes out, std::size_t count) {
  for (int c = 0; c < kComponents; ++c)
    for (std::size_t j = 0; j < count; ++j) out.c[c][j] = y.c[c][j] + a * x.c[c][j];
}

void rk4_combine(Lanes y, double h6, ConstLanes k1, ConstLanes k2, ConstLanes k3, ConstLanes k4, std::size_t count) {
  for (int c = 0; c < kComponents; ++c)
    for (std::size_t j = 0; j < count; ++j)
      y.c[c][j] = y.c[c][j] + h6 * (((k1.c[c][j] + 2.0 * k2.c[c][j]) + 2.0 * k3.c[c][j]) + k4.c[c][j]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &generator, &axpy, &rk4_combine};
  return table;
}

}  // namespace nmjc::simd
