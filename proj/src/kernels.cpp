#include "ddtcl/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "ddtcl/quadrature.hpp"

namespace ddtcl {

QuadratureSpec QuadratureSpec::from(const SimConfig& config) {
  QuadratureSpec spec;
  spec.omega_max = config.omega_max();
  spec.rel_tol = config.numerics.rel_tol;
  spec.max_panels = config.numerics.max_panels;
  spec.min_nodes_per_oscillation = config.numerics.min_nodes_per_oscillation;
  return spec;
}

double QuadratureSpec::max_panel_width(double t, double smooth_scale) const {
  double width = smooth_scale;
  if (t > 0.0) {
    width = std::min(width, 15.0 * kTwoPi / (min_nodes_per_oscillation * t));
  }
  return width;
}

namespace {

quad::AdaptiveOptions options_for(const SimConfig& config, double t) {
  const auto spec = QuadratureSpec::from(config);
  quad::AdaptiveOptions opts;
  opts.rel_tol = spec.rel_tol;
  opts.max_panel_width = spec.max_panel_width(t, config.omega_c);
  opts.max_subdivisions = static_cast<std::size_t>(spec.max_panels);
  return opts;
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error("kernel time must be >= 0");
}

template <typename T>
void throw_if_unconverged(const quad::Result<T>& r, const char* name, double t) {
  if (r.converged) return;
  Complex estimate;
  if constexpr (std::is_same_v<T, double>) {
    estimate = {r.value, 0.0};
  } else if constexpr (std::is_same_v<T, Complex>) {
    estimate = r.value;
  } else {
    estimate = {r.value(0), r.value(1)};
  }
  throw KernelConvergenceError(std::string(name) + ": frequency quadrature did not converge at t = " +
                                   std::to_string(t),
                               t, estimate, r.error);
}

// Real kernel int_0^wmax weight(w) * P_cos(w - 1, t) dw.
template <typename Weight>
double cos_kernel(const SimConfig& config, double t, std::int64_t window, Weight weight,
                  const char* name) {
  check_time(t);
  const auto schedule = config.schedule();
  auto integrand = [&](double omega) {
    const double w = weight(omega);
    if (w == 0.0) return 0.0;
    return w * pulsed_time_integral(schedule, omega - config.omega0, t, window, Flavor::cos).real();
  };
  auto r = quad::integrate<double>(integrand, 0.0, config.omega_max(), options_for(config, t));
  throw_if_unconverged(r, name, t);
  return r.value;
}

}  // namespace

double kernel_gamma11(const SimConfig& config, double t) {
  return kernel_gamma11(config, t, pulse_count(config.schedule(), t));
}

double kernel_gamma11(const SimConfig& config, double t, std::int64_t window) {
  const auto sd = config.spectral();
  const auto bath = config.bath();
  return cos_kernel(
      config, t, window, [&](double w) { return symmetric_weight(sd, bath, w); }, "gamma11");
}

Complex kernel_gamma10(const SimConfig& config, double t) {
  return kernel_gamma10(config, t, pulse_count(config.schedule(), t));
}

Complex kernel_gamma10(const SimConfig& config, double t, std::int64_t window) {
  check_time(t);
  const auto sd = config.spectral();
  const auto bath = config.bath();
  const auto schedule = config.schedule();
  auto integrand = [&](double omega) -> Complex {
    const double w = symmetric_weight(sd, bath, omega);
    if (w == 0.0) return {0.0, 0.0};
    return w * pulsed_time_integral(schedule, omega - config.omega0, t, window, Flavor::exp);
  };
  auto r = quad::integrate<Complex>(integrand, 0.0, config.omega_max(), options_for(config, t));
  throw_if_unconverged(r, "gamma10", t);
  return r.value;
}

double kernel_eta11(const SimConfig& config, double t) {
  return kernel_eta11(config, t, pulse_count(config.schedule(), t));
}

double kernel_eta11(const SimConfig& config, double t, std::int64_t window) {
  if (config.kT <= 0.0) {
    check_time(t);
    return 0.0;
  }
  const auto sd = config.spectral();
  const auto bath = config.bath();
  return cos_kernel(
      config, t, window, [&](double w) { return thermal_weight(sd, bath, w); }, "eta11");
}

KernelValues spectral_kernels(const SimConfig& config, double t, std::int64_t window) {
  check_time(t);
  using Vec3 = Eigen::Array3d;
  const auto sd = config.spectral();
  const auto bath = config.bath();
  const auto schedule = config.schedule();
  auto integrand = [&](double omega) -> Vec3 {
    const double thermal = thermal_weight(sd, bath, omega);
    const double symmetric = sd(omega) + 2.0 * thermal;
    const Complex p = pulsed_time_integral(schedule, omega - config.omega0, t, window, Flavor::exp);
    return Vec3(symmetric * p.real(), symmetric * p.imag(), 2.0 * thermal * p.real());
  };
  auto r = quad::integrate<Vec3>(integrand, 0.0, config.omega_max(), options_for(config, t));
  throw_if_unconverged(r, "kernels", t);

  KernelValues k;
  k.t = t;
  k.pulse_count = window;
  k.gamma10 = {r.value(0), r.value(1)};
  k.gamma11 = 2.0 * r.value(0);
  k.eta11 = r.value(2);
  return k;
}

}  // namespace ddtcl
