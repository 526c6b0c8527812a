#pragma once

#include <span>
#include <vector>

#include "nmjc/density.hpp"
#include "nmjc/params.hpp"

namespace nmjc {

struct DirectControls {
  double dt = 1e-3;
  /// Repeat the run at dt / 2 and require the grid outputs to agree within audit_tolerance.
  bool audit = false;
  double audit_tolerance = 1e-8;
};

struct DirectResult {
  std::vector<BlockedDensity> trajectory;  // one entry per grid time
  double audit_deviation = 0.0;            // max elementwise change under dt -> dt / 2
  long steps = 0;
};

/// Classical RK4 on d rho/d tau = -i[H,rho] - gamma [H,[H,rho]] - eta_q [H,[H,[H,[H,rho]]]]
/// blockwise, with delta(p, tau) re-evaluated at every stage. Each grid interval is split into
/// ceil(spacing / dt) equal steps.
DirectResult evolve_direct(const BlockedDensity& rho0, const ScaledParams& sp, double p,
                           std::span<const double> tau_grid, const DirectControls& controls = {});

}  // namespace nmjc
