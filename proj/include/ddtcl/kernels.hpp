#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ddtcl/model.hpp"
#include "ddtcl/segments.hpp"

// TCL2 coefficients gamma11, gamma10 and eta11 evaluated in the frequency
// representation: an adaptive quadrature over w of the bath weight times the
// alternating-sign time integral at detuning w - omega0.
namespace ddtcl {

/// Frequency-quadrature settings for one kernel evaluation.
struct QuadratureSpec {
  double omega_max = 150.0;
  double rel_tol = 1e-8;
  int max_panels = 100000;
  int min_nodes_per_oscillation = 30;

  static QuadratureSpec from(const SimConfig& config);

  /// Widest initial panel at observation time t: a 15-node panel must keep at
  /// least min_nodes_per_oscillation nodes per period 2 pi / t of the integrand.
  double max_panel_width(double t, double smooth_scale) const;
};

/// Raised when the frequency quadrature fails to converge within max_panels.
/// Carries the best estimate and its error bound.
class KernelConvergenceError : public std::runtime_error {
 public:
  KernelConvergenceError(const std::string& what, double t, Complex estimate, double error_bound)
      : std::runtime_error(what), t_(t), estimate_(estimate), error_bound_(error_bound) {}

  double t() const { return t_; }
  Complex estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double t_;
  Complex estimate_;
  double error_bound_;
};

double kernel_gamma11(const SimConfig& config, double t);
double kernel_gamma11(const SimConfig& config, double t, std::int64_t window);

Complex kernel_gamma10(const SimConfig& config, double t);
Complex kernel_gamma10(const SimConfig& config, double t, std::int64_t window);

double kernel_eta11(const SimConfig& config, double t);
double kernel_eta11(const SimConfig& config, double t, std::int64_t window);

/// All three kernels from one shared quadrature (gamma11 = 2 Re gamma10 exactly).
KernelValues spectral_kernels(const SimConfig& config, double t, std::int64_t window);
inline KernelValues spectral_kernels(const SimConfig& config, double t) {
  return spectral_kernels(config, t, pulse_count(config.schedule(), t));
}

}  // namespace ddtcl
