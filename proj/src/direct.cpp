#include "nmjc/direct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nmjc/errors.hpp"
#include "nmjc/simd/kernels.hpp"

namespace nmjc {

namespace {

using simd::ConstLanes;
using simd::kComponents;
using simd::Lanes;

class SoABuffer {
 public:
  explicit SoABuffer(std::size_t count) : count_(count), data_(kComponents * count, 0.0) {}

  Lanes lanes() {
    Lanes l;
    for (int c = 0; c < kComponents; ++c) l.c[c] = data_.data() + c * count_;
    return l;
  }

  void load(const BlockedDensity& rho) {
    auto l = lanes();
    for (std::size_t j = 0; j < count_; ++j) {
      const auto& b = rho.blocks[j];
      for (int e = 0; e < 4; ++e) {
        l.c[e][j] = b(e / 2, e % 2).real();
        l.c[4 + e][j] = b(e / 2, e % 2).imag();
      }
    }
  }

  void store(BlockedDensity& rho) {
    auto l = lanes();
    for (std::size_t j = 0; j < count_; ++j)
      for (int e = 0; e < 4; ++e) rho.blocks[j](e / 2, e % 2) = {l.c[e][j], l.c[4 + e][j]};
  }

 private:
  std::size_t count_;
  std::vector<double> data_;
};

std::vector<BlockedDensity> integrate(const BlockedDensity& rho0, const ScaledParams& sp, double p,
                                      std::span<const double> grid, double dt_target, long& steps) {
  const auto& kernels = simd::active_kernels();
  const std::size_t count = rho0.blocks.size();
  std::vector<double> coupling(count);
  for (std::size_t j = 0; j < count; ++j) coupling[j] = std::sqrt(static_cast<double>(j) + 1.0);

  SoABuffer y(count), k1(count), k2(count), k3(count), k4(count), tmp(count);
  y.load(rho0);

  const double gamma = sp.gamma_s;
  const double eta_q = sp.eta_quartic();
  auto coeffs = [&](double t) {
    return simd::GeneratorCoeffs{0.25 * doppler_detuning(sp, p, t), gamma, eta_q};
  };

  std::vector<BlockedDensity> out;
  out.reserve(grid.size());
  out.push_back(rho0);
  BlockedDensity snapshot = rho0;  // ground population never changes under commutator generators

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double spacing = grid[i + 1] - grid[i];
    const long m = std::max(1L, static_cast<long>(std::ceil(spacing / dt_target - 1e-9)));
    const double h = spacing / static_cast<double>(m);
    for (long s = 0; s < m; ++s) {
      const double t = grid[i] + static_cast<double>(s) * h;
      kernels.generator(y.lanes(), coupling.data(), coeffs(t), k1.lanes(), count);
      kernels.axpy(y.lanes(), 0.5 * h, k1.lanes(), tmp.lanes(), count);
      kernels.generator(tmp.lanes(), coupling.data(), coeffs(t + 0.5 * h), k2.lanes(), count);
      kernels.axpy(y.lanes(), 0.5 * h, k2.lanes(), tmp.lanes(), count);
      kernels.generator(tmp.lanes(), coupling.data(), coeffs(t + 0.5 * h), k3.lanes(), count);
      kernels.axpy(y.lanes(), h, k3.lanes(), tmp.lanes(), count);
      kernels.generator(tmp.lanes(), coupling.data(), coeffs(t + h), k4.lanes(), count);
      kernels.rk4_combine(y.lanes(), h / 6.0, k1.lanes(), k2.lanes(), k3.lanes(), k4.lanes(), count);
      ++steps;
    }
    y.store(snapshot);
    out.push_back(snapshot);
  }
  return out;
}

double max_deviation(const std::vector<BlockedDensity>& a, const std::vector<BlockedDensity>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t n = 0; n < a[i].blocks.size(); ++n)
      d = std::max(d, (a[i].blocks[n] - b[i].blocks[n]).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

DirectResult evolve_direct(const BlockedDensity& rho0, const ScaledParams& sp, double p,
                           std::span<const double> tau_grid, const DirectControls& controls) {
  if (!(controls.dt > 0.0)) throw ValidationError("integrator dt must be positive");
  if (tau_grid.empty()) throw ValidationError("integrator needs a non-empty time grid");
  for (std::size_t i = 0; i + 1 < tau_grid.size(); ++i) {
    const double spacing = tau_grid[i + 1] - tau_grid[i];
    if (!(spacing > 0.0)) throw ValidationError("time grid must be strictly increasing");
    if (controls.dt > spacing * (1.0 + 1e-12)) throw ValidationError("integrator dt exceeds the grid spacing");
  }

  DirectResult res;
  res.trajectory = integrate(rho0, sp, p, tau_grid, controls.dt, res.steps);
  if (controls.audit) {
    long extra = 0;
    const auto fine = integrate(rho0, sp, p, tau_grid, 0.5 * controls.dt, extra);
    res.audit_deviation = max_deviation(res.trajectory, fine);
    if (res.audit_deviation > controls.audit_tolerance) {
      std::ostringstream os;
      os << "step-halving audit failed: outputs moved by " << res.audit_deviation << " > "
         << controls.audit_tolerance << " at dt = " << controls.dt;
      throw StepSizeError(os.str());
    }
  }
  return res;
}

}  // namespace nmjc
