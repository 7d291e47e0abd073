#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Units: hbar = 1 and omega0 = 1. Frequencies are in units of omega0, times in
// units of 1/omega0, temperatures in units of hbar*omega0.
namespace ddtcl {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Convert a time in units of 1/omega0 to qubit cycles 2*pi/omega0.
inline constexpr double to_cycles(double t) { return t / kTwoPi; }
inline constexpr double from_cycles(double cycles) { return cycles * kTwoPi; }

/// Thrown for invalid inputs (bad configuration, violated preconditions).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Periodic train of instantaneous pi pulses about the z axis.
///
/// Pulses fire at t = m * interval for m = 1, 2, ...  The m-th inter-pulse
/// window is [m * interval, (m + 1) * interval), left-closed.
class PulseSchedule {
 public:
  PulseSchedule() = default;

  static PulseSchedule disabled() { return PulseSchedule{}; }
  static PulseSchedule periodic(double interval);

  bool enabled() const { return enabled_; }
  double interval() const { return interval_; }

  /// Instant of the m-th pulse. Window boundaries everywhere are computed
  /// through this function so that membership tests agree bit for bit.
  double pulse_time(std::int64_t m) const { return static_cast<double>(m) * interval_; }

 private:
  bool enabled_ = false;
  double interval_ = 0.0;
};

/// Number of pulses applied in [0, t]; 0 when the schedule is disabled.
std::int64_t pulse_count(const PulseSchedule& schedule, double t);

/// (-1)^pulse_count: sign of the qubit-bath coupling in the toggling frame.
int sign_function(const PulseSchedule& schedule, double tau);

/// Ohmic spectral density with exponential cutoff, I(w) = alpha * w * exp(-w / omega_c).
struct SpectralDensity {
  double omega_c = 5.0;
  double alpha = 1.0;

  double operator()(double omega) const;
};

double spectral_value(const SpectralDensity& sd, double omega);

/// Thermal bosonic bath. kT == 0 means zero temperature.
struct BathParams {
  double kT = 0.1;
};

/// Bose-Einstein occupation 1 / (exp(omega / kT) - 1). Requires omega > 0.
double bose_occupation(const BathParams& bath, double omega);

/// I(w) * n_B(w), continuous at w = 0 where it tends to alpha * kT.
double thermal_weight(const SpectralDensity& sd, const BathParams& bath, double omega);

/// I(w) * (2 n_B(w) + 1), continuous at w = 0 where it tends to 2 * alpha * kT.
double symmetric_weight(const SpectralDensity& sd, const BathParams& bath, double omega);

enum class KernelMethod { spectral, correlation };

std::string to_string(KernelMethod method);
KernelMethod parse_kernel_method(const std::string& text);

struct Numerics {
  double rel_tol = 1e-8;
  double omega_max_factor = 30.0;  ///< omega_max = factor * omega_c
  int max_panels = 100000;         ///< adaptive bisections allowed past the initial partition
  int min_nodes_per_oscillation = 30;
  int substeps = 20;               ///< RK4 steps per pulse interval
  std::int64_t steps = 0;          ///< RK4 steps without pulses; 0 picks the default
  int sample_stride = 1;
  KernelMethod kernel_method = KernelMethod::spectral;
};

/// Full parameterization of one simulation run. Defaults are the
/// omega_c = 5, kT = 0.1 parameter set with pulses off and a one-cycle horizon.
struct SimConfig {
  double omega0 = 1.0;
  double omega_c = 5.0;
  double kT = 0.1;
  double alpha = 1.0;
  std::optional<double> pulse_interval;
  double t_final = kTwoPi;
  double initial_rho11 = 0.5;
  Complex initial_rho10{0.5, 0.0};
  Numerics numerics;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  PulseSchedule schedule() const;
  SpectralDensity spectral() const { return {omega_c, alpha}; }
  BathParams bath() const { return {kT}; }
  double omega_max() const { return numerics.omega_max_factor * omega_c; }
};

/// Reduced qubit state in the toggling frame; rho00 is implicit.
struct QubitState {
  double rho11 = 0.0;
  Complex rho10{};

  double rho00() const { return 1.0 - rho11; }
  Complex rho01() const { return std::conj(rho10); }

  /// rho11 in [-eps, 1 + eps] and |rho10|^2 <= rho11 (1 - rho11) + eps.
  bool is_physical(double eps = 1e-6) const;
};

/// TCL2 coefficients at one time. pulse_count selects the inter-pulse window;
/// at a pulse instant it distinguishes the left and right limits.
struct KernelValues {
  double t = 0.0;
  std::int64_t pulse_count = 0;
  double gamma11 = 0.0;
  Complex gamma10{};
  double eta11 = 0.0;
};

struct Sample {
  double t = 0.0;
  std::int64_t pulse_count = 0;
  QubitState state;
  KernelValues kernels;
};

struct Diagnostics {
  std::int64_t positivity_violations = 0;
  std::optional<double> first_violation_time;
  double max_norm_error = 0.0;  ///< set by norm-conserving simulators
};

struct Trajectory {
  std::vector<Sample> samples;
  Diagnostics diagnostics;

  const Sample& final() const { return samples.back(); }

  /// State at time t: exact on a sample, linearly interpolated otherwise.
  QubitState state_at(double t) const;
};

}  // namespace ddtcl
