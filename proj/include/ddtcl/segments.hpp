#pragma once

#include <cstdint>

#include "ddtcl/model.hpp"

// Inner time integrals of the TCL2 kernels. Omega is the detuning w - omega0.
namespace ddtcl {

enum class Flavor { cos, exp };

/// Below this |Omega| * (b - a) the segment integrals switch to their Taylor series.
inline constexpr double kSeriesSwitch = 1e-4;

/// int_a^b 2 cos(Omega (t - t1)) dt1. Requires a <= b <= t.
double segment_cos(double omega_detuning, double t, double a, double b);

/// int_a^b exp(i Omega (t - t1)) dt1. Requires a <= b <= t.
Complex segment_exp(double omega_detuning, double t, double a, double b);

/// Alternating-sign time integral over the pulse-segmented domain: the current
/// window [Np dt, t] with sign +1 and each earlier window
/// [(Np - 1 - j) dt, (Np - j) dt] with sign -(-1)^j. With pulses disabled this is
/// the single segment [0, t]. The cos flavor returns a real value.
///
/// `window` is Np. The overload without it uses pulse_count(schedule, t); pass it
/// explicitly to take the left limit at a pulse instant.
Complex pulsed_time_integral(const PulseSchedule& schedule, double omega_detuning, double t,
                             Flavor flavor);
Complex pulsed_time_integral(const PulseSchedule& schedule, double omega_detuning, double t,
                             std::int64_t window, Flavor flavor);

/// Same quantity assembled term by term from segment_cos / segment_exp.
/// O(Np); kept as the reference for the closed-form path above.
Complex pulsed_time_integral_direct(const PulseSchedule& schedule, double omega_detuning,
                                    double t, std::int64_t window, Flavor flavor);

}  // namespace ddtcl
