#pragma once

#include <cstdint>
#include <vector>

#include "ddtcl/model.hpp"

// Time-domain route to the TCL2 kernels for the Ohmic-exponential bath.
//
// With F(tau) = int_0^inf W(w) exp(i (w - omega0) tau) dw and G its running
// integral, each kernel is a signed sum of G differences over the
// pulse-segmented domain. F has a closed form through the trigamma function,
// so kernels at late times cost O(pulse count) instead of a quadrature whose
// node count grows with t.
namespace ddtcl {

/// Trigamma function psi'(w) for complex w with Re w > 0.
Complex trigamma(Complex w);

/// Closed-form bath correlation functions.
struct BathCorrelation {
  SpectralDensity sd;
  BathParams bath;

  /// int_0^inf I(w) (2 n_B(w) + 1) exp(i (w - 1) tau) dw
  Complex symmetric(double tau) const;
  /// int_0^inf I(w) n_B(w) exp(i (w - 1) tau) dw
  Complex thermal(double tau) const;
};

/// Kernel evaluator backed by a lazily grown table of G on a uniform grid.
/// Lookups at grid points are exact table reads; off-grid times integrate the
/// remainder with Gauss-Legendre. Not thread-safe: use one instance per run.
class CorrelationKernels {
 public:
  CorrelationKernels(const SimConfig& config, double grid_spacing);

  KernelValues evaluate(double t, std::int64_t window);
  KernelValues evaluate(double t) { return evaluate(t, pulse_count(schedule_, t)); }

  /// Running integrals (G_sym, G_thermal) at tau >= 0.
  std::pair<Complex, Complex> cumulative(double tau);

  double grid_spacing() const { return spacing_; }

 private:
  void extend_to(std::size_t index);
  std::pair<Complex, Complex> integrate_cell(double from, double to) const;

  BathCorrelation correlation_;
  PulseSchedule schedule_;
  double spacing_;
  double sub_width_;
  std::vector<Complex> g_sym_;
  std::vector<Complex> g_thermal_;
};

}  // namespace ddtcl
