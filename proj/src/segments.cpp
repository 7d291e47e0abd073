#include "ddtcl/segments.hpp"

#include <cmath>
#include <stdexcept>

namespace ddtcl {

namespace {

void check_order(double t, double a, double b) {
  if (!(a <= b && b <= t)) throw std::domain_error("segment integral requires a <= b <= t");
}

// (exp(i x) - 1) / (i x) = sin(x)/x + i (1 - cos x)/x, written without cancellation.
Complex phi(double x) {
  if (std::abs(x) < kSeriesSwitch) {
    const double x2 = x * x;
    return {1.0 - x2 / 6.0, x / 2.0 - x * x2 / 24.0};
  }
  const double s = std::sin(0.5 * x);
  return {std::sin(x) / x, 2.0 * s * s / x};
}

// sum_{j=0}^{n-1} z^j with z = -exp(i theta).
Complex alternating_geometric_sum(double theta, std::int64_t n) {
  if (n <= 0) return {0.0, 0.0};
  const Complex z = -std::polar(1.0, theta);
  const Complex one_minus_z = 1.0 - z;
  if (std::abs(one_minus_z) > 0.25) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const Complex zn = sign * std::polar(1.0, theta * static_cast<double>(n));
    return (1.0 - zn) / one_minus_z;
  }
  // Near z = 1 the closed form cancels; sum directly.
  Complex sum{0.0, 0.0};
  Complex term{1.0, 0.0};
  for (std::int64_t j = 0; j < n; ++j) {
    sum += term;
    term *= z;
  }
  return sum;
}

}  // namespace

double segment_cos(double omega_detuning, double t, double a, double b) {
  check_order(t, a, b);
  const double len = b - a;
  if (std::abs(omega_detuning) * len < kSeriesSwitch) {
    // 2 int cos = 2 L cos(Omega (t - m)) to O((Omega L)^2), m the midpoint.
    const double mid = t - 0.5 * (a + b);
    const double x = omega_detuning * len;
    return 2.0 * len * std::cos(omega_detuning * mid) * (1.0 - x * x / 24.0);
  }
  return 2.0 / omega_detuning *
         (std::sin(omega_detuning * (t - a)) - std::sin(omega_detuning * (t - b)));
}

Complex segment_exp(double omega_detuning, double t, double a, double b) {
  check_order(t, a, b);
  const double len = b - a;
  return len * std::polar(1.0, omega_detuning * (t - b)) * phi(omega_detuning * len);
}

Complex pulsed_time_integral(const PulseSchedule& schedule, double omega_detuning, double t,
                             Flavor flavor) {
  return pulsed_time_integral(schedule, omega_detuning, t, pulse_count(schedule, t), flavor);
}

Complex pulsed_time_integral(const PulseSchedule& schedule, double omega_detuning, double t,
                             std::int64_t window, Flavor flavor) {
  if (t < 0.0) throw std::domain_error("pulsed_time_integral requires t >= 0");
  Complex value;
  if (!schedule.enabled() || window == 0) {
    value = t * phi(omega_detuning * t);
  } else {
    const double dt = schedule.interval();
    const double u = t - schedule.pulse_time(window);
    if (u < 0.0) throw std::domain_error("pulsed_time_integral: t precedes its window");
    // Every earlier window has length dt and contributes
    // -(-1)^j dt phi(Omega dt) exp(i Omega (u + j dt)).
    const Complex past = dt * phi(omega_detuning * dt) * std::polar(1.0, omega_detuning * u) *
                         alternating_geometric_sum(omega_detuning * dt, window);
    value = u * phi(omega_detuning * u) - past;
  }
  if (flavor == Flavor::cos) return {2.0 * value.real(), 0.0};
  return value;
}

Complex pulsed_time_integral_direct(const PulseSchedule& schedule, double omega_detuning,
                                    double t, std::int64_t window, Flavor flavor) {
  auto segment = [&](double a, double b) -> Complex {
    if (flavor == Flavor::cos) return {segment_cos(omega_detuning, t, a, b), 0.0};
    return segment_exp(omega_detuning, t, a, b);
  };
  if (!schedule.enabled()) return segment(0.0, t);
  Complex sum = segment(schedule.pulse_time(window), t);
  for (std::int64_t j = 0; j < window; ++j) {
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;
    sum += sign * segment(schedule.pulse_time(window - 1 - j), schedule.pulse_time(window - j));
  }
  return sum;
}

}  // namespace ddtcl
