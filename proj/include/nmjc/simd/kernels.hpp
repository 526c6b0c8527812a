#pragma once

// Blockwise arithmetic for the direct integrator, in structure-of-arrays form. Each of the eight
// arrays holds one component (re/im of elements 00, 01, 10, 11) for `count` blocks. Every backend
// performs the same operations in the same order without fused multiply-add, so results are
// bit-identical across backends.

#include <cstddef>
#include <string_view>

namespace nmjc::simd {

inline constexpr int kComponents = 8;  // re00 re01 re10 re11 im00 im01 im10 im11

struct Lanes {
  double* c[kComponents];
};
struct ConstLanes {
  const double* c[kComponents];
  ConstLanes() = default;
  ConstLanes(const Lanes& l) {
    for (int i = 0; i < kComponents; ++i) c[i] = l.c[i];
  }
};

struct GeneratorCoeffs {
  double quarter_delta = 0.0;  // diagonal of the interaction block
  double gamma = 0.0;
  double eta_quartic = 0.0;
};

/// out = -i C(rho) - gamma C^2(rho) - eta_q C^4(rho), C(x) = [H2, x], H2 = [[d, c_k], [c_k, -d]].
using GeneratorFn = void (*)(ConstLanes rho, const double* coupling, GeneratorCoeffs coeffs, Lanes out,
                             std::size_t count);
/// out = y + a x
using AxpyFn = void (*)(ConstLanes y, double a, ConstLanes x, Lanes out, std::size_t count);
/// y += h6 * (((k1 + 2 k2) + 2 k3) + k4)
using Rk4CombineFn = void (*)(Lanes y, double h6, ConstLanes k1, ConstLanes k2, ConstLanes k3, ConstLanes k4,
                              std::size_t count);

struct KernelTable {
  std::string_view name;
  GeneratorFn generator;
  AxpyFn axpy;
  Rk4CombineFn rk4_combine;
};

const KernelTable& scalar_kernels();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();
/// AVX2 when available unless NMJC_SIMD=scalar is set in the environment.
const KernelTable& active_kernels();

}  // namespace nmjc::simd
