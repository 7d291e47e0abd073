#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddtcl/model.hpp"

namespace ddtcl {

/// Raised when integration cannot continue; carries the time of failure.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// One fixed RK4 step [t0, t1] lying inside inter-pulse window `window`.
struct Step {
  double t0 = 0.0;
  double t1 = 0.0;
  std::int64_t window = 0;
};

/// Step grid: substeps equal steps per pulse interval, never straddling a pulse
/// instant (a trailing partial window gets equal shorter steps). Without pulses,
/// numerics.steps equal steps, or by default h = min(0.005, t_final / 2000).
std::vector<Step> time_grid(const SimConfig& config);

/// Nominal step length of the grid (the full-window step when pulses are on).
double nominal_step(const SimConfig& config);

using KernelSource = std::function<KernelValues(double t, std::int64_t window)>;

/// Kernel source selected by config.numerics.kernel_method.
KernelSource make_kernel_source(const SimConfig& config);

struct PropagateOptions {
  /// Reuse the kernels at a step's end as the next step's start.
  bool memoize = true;
  /// Overrides the configured kernel method when set.
  KernelSource kernels;
};

/// Integrate the TCL2 equations
///   d rho11 / dt = -gamma11(t) rho11 + eta11(t),   d rho10 / dt = -gamma10(t) rho10
/// with classic RK4 on time_grid(config). The toggling-frame state is
/// continuous across pulses; pulses enter only through the kernels, which are
/// evaluated at every stage with the step's window index.
Trajectory propagate(const SimConfig& config, const PropagateOptions& options = {});

/// Thermal upper-state population 1 / (exp(1 / kT) + 1); 0 at kT = 0.
double steady_state_thermal(double kT);

}  // namespace ddtcl
