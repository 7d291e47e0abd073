#include "ddtcl/propagator.hpp"

#include <cmath>
#include <memory>
#include <optional>

#include "ddtcl/correlation.hpp"
#include "ddtcl/kernels.hpp"

namespace ddtcl {

namespace {

constexpr double kMaxUnpulsedStep = 0.005;
constexpr std::int64_t kMinUnpulsedSteps = 2000;
constexpr double kPositivityEps = 1e-6;

std::int64_t unpulsed_steps(const SimConfig& config) {
  if (config.numerics.steps > 0) return config.numerics.steps;
  const double h = std::min(kMaxUnpulsedStep, config.t_final / kMinUnpulsedSteps);
  return static_cast<std::int64_t>(std::ceil(config.t_final / h - 1e-9));
}

}  // namespace

double nominal_step(const SimConfig& config) {
  if (config.pulse_interval) return *config.pulse_interval / config.numerics.substeps;
  return config.t_final / static_cast<double>(unpulsed_steps(config));
}

std::vector<Step> time_grid(const SimConfig& config) {
  config.validate();
  std::vector<Step> steps;
  if (!config.pulse_interval) {
    const std::int64_t n = unpulsed_steps(config);
    steps.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
      const double t0 = config.t_final * static_cast<double>(k) / static_cast<double>(n);
      const double t1 =
          (k + 1 == n) ? config.t_final
                       : config.t_final * static_cast<double>(k + 1) / static_cast<double>(n);
      steps.push_back({t0, t1, 0});
    }
    return steps;
  }

  const auto schedule = config.schedule();
  const int substeps = config.numerics.substeps;
  const double h = schedule.interval() / substeps;
  for (std::int64_t m = 0;; ++m) {
    const double start = schedule.pulse_time(m);
    if (start >= config.t_final) break;
    const double end = schedule.pulse_time(m + 1);
    if (end <= config.t_final) {
      for (int j = 0; j < substeps; ++j) {
        const double t0 = start + j * h;
        const double t1 = (j + 1 == substeps) ? end : start + (j + 1) * h;
        steps.push_back({t0, t1, m});
      }
      if (end == config.t_final) break;
    } else {
      const double span = config.t_final - start;
      const auto n = static_cast<int>(std::max(1.0, std::ceil(span / h - 1e-9)));
      const double hp = span / n;
      for (int j = 0; j < n; ++j) {
        const double t0 = start + j * hp;
        const double t1 = (j + 1 == n) ? config.t_final : start + (j + 1) * hp;
        steps.push_back({t0, t1, m});
      }
      break;
    }
  }
  return steps;
}

KernelSource make_kernel_source(const SimConfig& config) {
  if (config.numerics.kernel_method == KernelMethod::correlation) {
    auto table = std::make_shared<CorrelationKernels>(config, 0.5 * nominal_step(config));
    return [table](double t, std::int64_t window) { return table->evaluate(t, window); };
  }
  return [config](double t, std::int64_t window) { return spectral_kernels(config, t, window); };
}

namespace {

struct Derivative {
  double rho11;
  Complex rho10;
};

Derivative rhs(const KernelValues& k, double rho11, Complex rho10) {
  return {-k.gamma11 * rho11 + k.eta11, -k.gamma10 * rho10};
}

// Remembers the last two evaluations; consecutive steps share an endpoint.
class KernelCache {
 public:
  KernelCache(KernelSource source, bool enabled) : source_(std::move(source)), enabled_(enabled) {}

  const KernelValues& get(double t, std::int64_t window) {
    if (enabled_) {
      for (const auto& slot : slots_) {
        if (slot && slot->t == t && slot->pulse_count == window) return *slot;
      }
    }
    KernelValues k;
    try {
      k = source_(t, window);
    } catch (const NumericalFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericalFailure(std::string("kernel evaluation failed: ") + e.what(), t);
    }
    if (!std::isfinite(k.gamma11) || !std::isfinite(k.eta11) || !std::isfinite(k.gamma10.real()) ||
        !std::isfinite(k.gamma10.imag())) {
      throw NumericalFailure("non-finite kernel value", t);
    }
    next_ = 1 - next_;
    slots_[next_] = k;
    return *slots_[next_];
  }

 private:
  KernelSource source_;
  bool enabled_;
  std::optional<KernelValues> slots_[2];
  int next_ = 0;
};

}  // namespace

Trajectory propagate(const SimConfig& config, const PropagateOptions& options) {
  const auto steps = time_grid(config);
  const auto schedule = config.schedule();
  KernelCache cache(options.kernels ? options.kernels : make_kernel_source(config),
                    options.memoize);

  Trajectory traj;
  double rho11 = config.initial_rho11;
  Complex rho10 = config.initial_rho10;

  auto record = [&](double t) {
    const std::int64_t np = pulse_count(schedule, t);
    Sample s;
    s.t = t;
    s.pulse_count = np;
    s.state = {rho11, rho10};
    s.kernels = cache.get(t, np);
    traj.samples.push_back(s);
  };
  record(0.0);

  const int stride = config.numerics.sample_stride;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& step = steps[i];
    const double h = step.t1 - step.t0;
    const double mid = step.t0 + 0.5 * h;

    const KernelValues k0 = cache.get(step.t0, step.window);
    const KernelValues km = cache.get(mid, step.window);
    const KernelValues k1 = cache.get(step.t1, step.window);

    const Derivative d1 = rhs(k0, rho11, rho10);
    const Derivative d2 = rhs(km, rho11 + 0.5 * h * d1.rho11, rho10 + 0.5 * h * d1.rho10);
    const Derivative d3 = rhs(km, rho11 + 0.5 * h * d2.rho11, rho10 + 0.5 * h * d2.rho10);
    const Derivative d4 = rhs(k1, rho11 + h * d3.rho11, rho10 + h * d3.rho10);
    rho11 += h / 6.0 * (d1.rho11 + 2.0 * d2.rho11 + 2.0 * d3.rho11 + d4.rho11);
    rho10 += h / 6.0 * (d1.rho10 + 2.0 * d2.rho10 + 2.0 * d3.rho10 + d4.rho10);

    if (!std::isfinite(rho11) || !std::isfinite(rho10.real()) || !std::isfinite(rho10.imag())) {
      throw NumericalFailure("state became non-finite", step.t1);
    }
    if (!QubitState{rho11, rho10}.is_physical(kPositivityEps)) {
      if (!traj.diagnostics.first_violation_time) traj.diagnostics.first_violation_time = step.t1;
      ++traj.diagnostics.positivity_violations;
    }

    const bool last = (i + 1 == steps.size());
    if (last || (i + 1) % static_cast<std::size_t>(stride) == 0) record(step.t1);
  }
  return traj;
}

double steady_state_thermal(double kT) {
  if (kT <= 0.0) return 0.0;
  const double e = std::exp(-1.0 / kT);
  return e / (1.0 + e);
}

}  // namespace ddtcl
