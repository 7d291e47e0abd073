#include "ddtcl/model.hpp"

#include <algorithm>
#include <cmath>

namespace ddtcl {

PulseSchedule PulseSchedule::periodic(double interval) {
  if (!(interval > 0.0) || !std::isfinite(interval)) {
    throw ConfigError("pulse interval must be positive and finite");
  }
  PulseSchedule s;
  s.enabled_ = true;
  s.interval_ = interval;
  return s;
}

std::int64_t pulse_count(const PulseSchedule& schedule, double t) {
  if (!schedule.enabled() || t <= 0.0) return 0;
  auto m = static_cast<std::int64_t>(std::floor(t / schedule.interval()));
  // The quotient may round across an integer; settle against the pulse instants.
  while (m > 0 && schedule.pulse_time(m) > t) --m;
  while (schedule.pulse_time(m + 1) <= t) ++m;
  return m;
}

int sign_function(const PulseSchedule& schedule, double tau) {
  return (pulse_count(schedule, tau) % 2 == 0) ? 1 : -1;
}

double SpectralDensity::operator()(double omega) const {
  if (omega < 0.0) throw std::domain_error("spectral density requires omega >= 0");
  return alpha * omega * std::exp(-omega / omega_c);
}

double spectral_value(const SpectralDensity& sd, double omega) { return sd(omega); }

double bose_occupation(const BathParams& bath, double omega) {
  if (!(omega > 0.0)) throw std::domain_error("bose_occupation requires omega > 0");
  if (bath.kT <= 0.0) return 0.0;
  const double x = omega / bath.kT;
  if (x > 30.0) {
    const double e = std::exp(-x);
    return e / (1.0 - e);
  }
  return 1.0 / std::expm1(x);
}

namespace {

// x / (e^x - 1), with the limit 1 at x = 0.
double bose_ratio(double x) {
  if (x == 0.0) return 1.0;
  if (x > 700.0) return x * std::exp(-x);
  return x / std::expm1(x);
}

}  // namespace

double thermal_weight(const SpectralDensity& sd, const BathParams& bath, double omega) {
  if (bath.kT <= 0.0) return 0.0;
  return sd.alpha * bath.kT * std::exp(-omega / sd.omega_c) * bose_ratio(omega / bath.kT);
}

double symmetric_weight(const SpectralDensity& sd, const BathParams& bath, double omega) {
  return sd(omega) + 2.0 * thermal_weight(sd, bath, omega);
}

std::string to_string(KernelMethod method) {
  return method == KernelMethod::spectral ? "spectral" : "correlation";
}

KernelMethod parse_kernel_method(const std::string& text) {
  if (text == "spectral") return KernelMethod::spectral;
  if (text == "correlation") return KernelMethod::correlation;
  throw ConfigError("unknown kernel_method '" + text + "' (expected spectral or correlation)");
}

void SimConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(omega0 == 1.0, "omega0 is the unit of frequency and must equal 1");
  require(std::isfinite(omega_c) && omega_c > 0.0, "omega_c must be > 0");
  require(std::isfinite(kT) && kT >= 0.0, "kT must be >= 0");
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  require(std::isfinite(t_final) && t_final > 0.0, "t_final must be > 0");
  if (pulse_interval) {
    require(std::isfinite(*pulse_interval) && *pulse_interval > 0.0 && *pulse_interval < t_final,
            "pulse_interval must satisfy 0 < pulse_interval < t_final");
  }
  require(initial_rho11 >= 0.0 && initial_rho11 <= 1.0, "initial_rho11 must lie in [0, 1]");
  require(std::norm(initial_rho10) <= initial_rho11 * (1.0 - initial_rho11) * (1.0 + 1e-12) + 1e-15,
          "initial_rho10 violates |rho10|^2 <= rho11 (1 - rho11)");
  require(numerics.rel_tol > 0.0, "rel_tol must be > 0");
  require(omega_max() > omega0, "omega_max_factor * omega_c must exceed omega0");
  require(numerics.max_panels >= 0, "max_panels must be >= 0");
  require(numerics.min_nodes_per_oscillation >= 2, "min_nodes_per_oscillation must be >= 2");
  require(numerics.substeps >= 1, "substeps must be >= 1");
  require(numerics.steps >= 0, "steps must be >= 0");
  require(numerics.sample_stride >= 1, "sample_stride must be >= 1");
}

PulseSchedule SimConfig::schedule() const {
  return pulse_interval ? PulseSchedule::periodic(*pulse_interval) : PulseSchedule::disabled();
}

bool QubitState::is_physical(double eps) const {
  if (!std::isfinite(rho11) || !std::isfinite(rho10.real()) || !std::isfinite(rho10.imag())) {
    return false;
  }
  if (rho11 < -eps || rho11 > 1.0 + eps) return false;
  return std::norm(rho10) <= rho11 * (1.0 - rho11) + eps;
}

QubitState Trajectory::state_at(double t) const {
  if (samples.empty()) throw std::out_of_range("empty trajectory");
  if (t <= samples.front().t) return samples.front().state;
  if (t >= samples.back().t) return samples.back().state;
  auto it = std::lower_bound(samples.begin(), samples.end(), t,
                             [](const Sample& s, double v) { return s.t < v; });
  const Sample& hi = *it;
  const double scale = std::max(1.0, std::abs(t));
  if (std::abs(hi.t - t) <= 1e-12 * scale) return hi.state;
  const Sample& lo = *(it - 1);
  if (std::abs(lo.t - t) <= 1e-12 * scale) return lo.state;
  const double w = (t - lo.t) / (hi.t - lo.t);
  return {(1.0 - w) * lo.state.rho11 + w * hi.state.rho11,
          (1.0 - w) * lo.state.rho10 + w * hi.state.rho10};
}

}  // namespace ddtcl
