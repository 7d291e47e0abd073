#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ddtcl/model.hpp"

// Independent checks on the TCL2 kernels and trajectories.
namespace ddtcl {

struct MarkovRates {
  double gamma11_inf = 0.0;
  double eta11_inf = 0.0;
};

/// Golden-rule limits 2 pi I(omega0) (2 n_B + 1) and 2 pi I(omega0) n_B of the
/// unpulsed kernels. Rejects configurations with pulses.
MarkovRates markov_rates(const SimConfig& config);

enum class KernelFlavor { g11, g10, e11 };

struct BruteForceKernels {
  double gamma11 = 0.0;
  Complex gamma10{};
  double eta11 = 0.0;

  Complex get(KernelFlavor flavor) const;
};

struct BruteForceOptions {
  /// Stop doubling when successive extrapolated estimates agree to this.
  double rel_tol = 1e-8;
  int max_levels = 7;
  /// Phase advance per grid interval on the coarsest level, radians.
  double initial_phase_step = 0.5;
};

/// Thrown when grid doubling stalls; reports the last two extrapolated estimates.
class OracleConvergenceError : public std::runtime_error {
 public:
  OracleConvergenceError(const std::string& what, BruteForceKernels fine, BruteForceKernels coarse)
      : std::runtime_error(what), fine_(fine), coarse_(coarse) {}
  const BruteForceKernels& fine() const { return fine_; }
  const BruteForceKernels& coarse() const { return coarse_; }

 private:
  BruteForceKernels fine_;
  BruteForceKernels coarse_;
};

/// Kernels by plain 2D integration: composite Simpson over w on [0, omega_max],
/// composite Simpson over t1 on each inter-pulse window with the coupling sign
/// s(t) s(t1) taken from sign_function. Both grids double until successive
/// Richardson-extrapolated estimates agree.
BruteForceKernels brute_force_kernels(const SimConfig& config, double t,
                                      const BruteForceOptions& options = {});
Complex brute_force_kernel(const SimConfig& config, double t, KernelFlavor flavor,
                           const BruteForceOptions& options = {});

/// Bath of discrete modes with real couplings g_k^2 = I(w_k) dw on a uniform
/// midpoint grid over [0, omega_max].
struct DiscretizedBath {
  std::vector<double> omega;
  std::vector<double> coupling;

  static DiscretizedBath uniform(const SpectralDensity& sd, double omega_max, int modes);

  std::size_t size() const { return omega.size(); }
  double total_weight() const;
};

inline constexpr int kDefaultOracleModes = 400;
// omega_max / omega_c for the oracle bath. The uniform grid recurs after
// 2 pi / dw; at 400 modes over 10 omega_c that is t = 50, clear of five cycles.
inline constexpr double kDefaultOracleSpan = 10.0;

/// Exact zero-temperature dynamics in the single-excitation sector of the
/// rotating-wave coupling, with pulses applied as sign flips of the coupling.
/// Samples follow time_grid(config) so they align with propagate().
/// rho11 = rho11(0) |c0|^2 and rho10 = rho10(0) c0, where c0 is the
/// interaction-picture amplitude of |excited, vacuum>. Kernel fields are zero.
/// diagnostics.max_norm_error records the worst deviation of the sector norm from 1.
Trajectory single_excitation_simulate(const SimConfig& config, const DiscretizedBath& bath);

}  // namespace ddtcl
