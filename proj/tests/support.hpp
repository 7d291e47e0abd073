#pragma once

// Reference helpers shared by the unit and acceptance tests. Nothing here calls
// into the segment primitives; the oracles integrate the raw integrands.

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "ddtcl/model.hpp"

namespace ddtcl::testing {

/// n-point Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// int_a^b f by 20-point Gauss-Legendre on `panels` equal sub-panels.
inline Complex composite_gl(const std::function<Complex(double)>& f, double a, double b,
                            int panels) {
  static const auto rule = gauss_legendre(20);
  Complex sum{0.0, 0.0};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (std::size_t i = 0; i < rule.first.size(); ++i) {
      sum += rule.second[i] * f(lo + 0.5 * h * (rule.first[i] + 1.0));
    }
  }
  return sum * (0.5 * h);
}

/// int_0^t s(t_ref) s(t1) exp(i Omega (t - t1)) dt1 with s evaluated from
/// sign_function at every node. t_ref selects the window for s(t) (pass a time
/// inside the intended window to pick a one-sided limit at a pulse instant).
inline Complex explicit_sign_integral(const PulseSchedule& schedule, double omega, double t,
                                      double t_ref) {
  const int s_t = sign_function(schedule, t_ref);
  auto f = [&](double t1) {
    return static_cast<double>(s_t * sign_function(schedule, t1)) *
           std::polar(1.0, omega * (t - t1));
  };
  // Split where the sign may change so no GL panel straddles a pulse.
  std::vector<double> cuts{0.0};
  if (schedule.enabled()) {
    for (std::int64_t m = 1; schedule.pulse_time(m) < t; ++m) cuts.push_back(schedule.pulse_time(m));
  }
  cuts.push_back(t);
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len <= 0.0) continue;
    const int panels = 1 + static_cast<int>(std::abs(omega) * len);
    sum += composite_gl(f, cuts[i], cuts[i + 1], panels);
  }
  return sum;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}
inline double rel_diff(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace ddtcl::testing
