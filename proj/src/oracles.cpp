#include "ddtcl/oracles.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ddtcl/propagator.hpp"

namespace ddtcl {

MarkovRates markov_rates(const SimConfig& config) {
  if (config.pulse_interval) throw ConfigError("markov_rates applies to unpulsed configurations");
  const double rate = kTwoPi * config.spectral()(config.omega0);
  const double n = bose_occupation(config.bath(), config.omega0);
  return {rate * (2.0 * n + 1.0), rate * n};
}

Complex BruteForceKernels::get(KernelFlavor flavor) const {
  switch (flavor) {
    case KernelFlavor::g11:
      return {gamma11, 0.0};
    case KernelFlavor::g10:
      return gamma10;
    case KernelFlavor::e11:
      return {eta11, 0.0};
  }
  return {};
}

namespace {

struct Window {
  double a;
  double b;
  double sign;  // s(t) s(t1) on (a, b)
};

// Simpson weights 1 4 2 4 ... 4 1 (times h / 3) on n (even) intervals.
double simpson_weight(int j, int n) {
  if (j == 0 || j == n) return 1.0;
  return (j % 2 == 1) ? 4.0 : 2.0;
}

int even_intervals(double length, double max_step) {
  int n = static_cast<int>(std::ceil(length / max_step));
  n = std::max(n, 2);
  return n + (n % 2);
}

// int_a^b exp(i Omega (t - t1)) dt1 by composite Simpson with n intervals.
Complex simpson_exp(double detuning, double t, double a, double b, int n) {
  const double h = (b - a) / n;
  const Complex rotor = std::polar(1.0, -detuning * h);
  Complex phase = std::polar(1.0, detuning * (t - a));
  Complex sum{0.0, 0.0};
  for (int j = 0; j <= n; ++j) {
    if (j % 64 == 0) phase = std::polar(1.0, detuning * (t - (a + j * h)));
    sum += simpson_weight(j, n) * phase;
    phase *= rotor;
  }
  return sum * (h / 3.0);
}

// One Simpson level. The w range splits at `w_split` so the thermal features
// near w = 0 get their own, finer spacing.
BruteForceKernels simpson_level(const SimConfig& config, double t,
                                const std::vector<Window>& windows, double t_step,
                                double w_step_low, double w_split, double w_step_high) {
  const auto sd = config.spectral();
  const auto bath = config.bath();

  std::vector<int> inner(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    inner[i] = even_intervals(windows[i].b - windows[i].a, t_step);
  }

  Complex g10{0.0, 0.0};
  double g11 = 0.0;
  double e11 = 0.0;
  auto accumulate = [&](double lo, double hi, double max_step) {
    if (!(hi > lo)) return;
    const int nw = even_intervals(hi - lo, max_step);
    const double hw = (hi - lo) / nw;
    for (int k = 0; k <= nw; ++k) {
      const double omega = lo + k * hw;
      const double thermal = thermal_weight(sd, bath, omega);
      const double symmetric = sd(omega) + 2.0 * thermal;
      if (symmetric == 0.0) continue;
      Complex inner_value{0.0, 0.0};
      for (std::size_t i = 0; i < windows.size(); ++i) {
        const auto& w = windows[i];
        if (w.b > w.a) {
          inner_value += w.sign * simpson_exp(omega - config.omega0, t, w.a, w.b, inner[i]);
        }
      }
      const double weight = simpson_weight(k, nw) * hw / 3.0;
      g10 += weight * symmetric * inner_value;
      g11 += weight * symmetric * 2.0 * inner_value.real();
      e11 += weight * thermal * 2.0 * inner_value.real();
    }
  };
  accumulate(0.0, w_split, w_step_low);
  accumulate(w_split, config.omega_max(), w_step_high);
  return {g11, g10, e11};
}

BruteForceKernels richardson(const BruteForceKernels& fine, const BruteForceKernels& coarse) {
  return {fine.gamma11 + (fine.gamma11 - coarse.gamma11) / 15.0,
          fine.gamma10 + (fine.gamma10 - coarse.gamma10) / 15.0,
          fine.eta11 + (fine.eta11 - coarse.eta11) / 15.0};
}

bool agrees(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(a); }
bool agrees(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::abs(a); }

}  // namespace

BruteForceKernels brute_force_kernels(const SimConfig& config, double t,
                                      const BruteForceOptions& options) {
  if (!(t >= 0.0)) throw std::domain_error("brute_force_kernels requires t >= 0");
  if (t == 0.0) return {};

  // Partition [0, t] where the coupling sign changes; the sign on each piece
  // comes from sign_function at its midpoint.
  const auto schedule = config.schedule();
  std::vector<Window> windows;
  const int sign_now = sign_function(schedule, t);
  double a = 0.0;
  for (std::int64_t m = 1; schedule.enabled() && schedule.pulse_time(m) < t; ++m) {
    const double b = schedule.pulse_time(m);
    windows.push_back({a, b, static_cast<double>(sign_now * sign_function(schedule, 0.5 * (a + b)))});
    a = b;
  }
  windows.push_back({a, t, static_cast<double>(sign_now * sign_function(schedule, 0.5 * (a + t)))});

  const double max_detuning = std::max(config.omega_max() - config.omega0, config.omega0);
  const double w_split = config.kT > 0.0 ? std::min(config.omega_max(), 40.0 * config.kT) : 0.0;
  // Grid scales: oscillation in t1 at |Omega|, in w at t, bath weight features at
  // kT (below w_split) and omega_c. Every limit shrinks with the level.
  double phase = options.initial_phase_step;
  auto level_at = [&](double ph) {
    const double high = std::min(ph / t, 0.2 * ph * config.omega_c);
    const double low = std::min(high, ph * config.kT);
    return simpson_level(config, t, windows, ph / max_detuning, low, w_split, high);
  };

  BruteForceKernels coarse = level_at(phase);
  phase *= 0.5;
  BruteForceKernels fine = level_at(phase);
  BruteForceKernels previous = richardson(fine, coarse);

  BruteForceKernels before = previous;
  for (int level = 2; level < options.max_levels; ++level) {
    coarse = fine;
    phase *= 0.5;
    fine = level_at(phase);
    const BruteForceKernels current = richardson(fine, coarse);
    if (agrees(current.gamma11, previous.gamma11, options.rel_tol) &&
        agrees(current.gamma10, previous.gamma10, options.rel_tol) &&
        agrees(current.eta11, previous.eta11, options.rel_tol)) {
      return current;
    }
    before = previous;
    previous = current;
  }
  throw OracleConvergenceError("brute-force kernel grid doubling did not converge", previous, before);
}

Complex brute_force_kernel(const SimConfig& config, double t, KernelFlavor flavor,
                           const BruteForceOptions& options) {
  return brute_force_kernels(config, t, options).get(flavor);
}

DiscretizedBath DiscretizedBath::uniform(const SpectralDensity& sd, double omega_max, int modes) {
  if (modes < 1 || !(omega_max > 0.0)) throw ConfigError("bath discretization needs modes >= 1");
  DiscretizedBath bath;
  const double dw = omega_max / modes;
  bath.omega.reserve(static_cast<std::size_t>(modes));
  bath.coupling.reserve(static_cast<std::size_t>(modes));
  for (int k = 0; k < modes; ++k) {
    const double w = (k + 0.5) * dw;
    bath.omega.push_back(w);
    bath.coupling.push_back(std::sqrt(sd(w) * dw));
  }
  return bath;
}

double DiscretizedBath::total_weight() const {
  double sum = 0.0;
  for (double g : coupling) sum += g * g;
  return sum;
}

Trajectory single_excitation_simulate(const SimConfig& config, const DiscretizedBath& bath) {
  config.validate();
  if (config.kT > 0.0) {
    throw ConfigError("single-excitation oracle requires kT = 0 (bath in the vacuum)");
  }
  const auto k_modes = static_cast<Eigen::Index>(bath.size());
  const Eigen::Index dim = k_modes + 1;

  // Amplitudes x = (c0, d_1..d_K) with d_k = exp(-i (w_k - omega0) t) c_k obey
  // i dx/dt = H_s x, H_s = [[0, s g^T], [s g, diag(w - omega0)]]. H_- = P H_+ P with
  // P = diag(-1, 1, ..., 1), so one eigendecomposition serves both signs.
  Eigen::MatrixXd hamiltonian = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < k_modes; ++k) {
    const double g = bath.coupling[static_cast<std::size_t>(k)];
    hamiltonian(0, k + 1) = g;
    hamiltonian(k + 1, 0) = g;
    hamiltonian(k + 1, k + 1) = bath.omega[static_cast<std::size_t>(k)] - config.omega0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Eigen::MatrixXd& basis = solver.eigenvectors();
  const Eigen::VectorXd& energies = solver.eigenvalues();
  const Eigen::MatrixXcd basis_c = basis.cast<Complex>();

  // x = P^{(1-s)/2} V y
  auto to_sector = [&](const Eigen::VectorXcd& y, int sign) {
    Eigen::VectorXcd x = basis_c * y;
    if (sign < 0) x(0) = -x(0);
    return x;
  };
  auto to_eigen = [&](Eigen::VectorXcd x, int sign) {
    if (sign < 0) x(0) = -x(0);
    return Eigen::VectorXcd(basis_c.adjoint() * x);
  };
  const auto schedule = config.schedule();
  const auto steps = time_grid(config);

  Eigen::VectorXcd x0 = Eigen::VectorXcd::Zero(dim);
  x0(0) = 1.0;
  int sign = 1;
  Eigen::VectorXcd y = to_eigen(x0, sign);

  // c0 is the first sector component; the eigenbasis is orthonormal, so the
  // sector norm is the norm of the eigen amplitudes.
  const Eigen::RowVectorXcd first_row = basis_c.row(0);
  Trajectory traj;
  auto record = [&](double t, const Eigen::VectorXcd& eigen_amplitudes) {
    Complex c0 = first_row * eigen_amplitudes;
    if (sign < 0) c0 = -c0;
    Sample s;
    s.t = t;
    s.pulse_count = pulse_count(schedule, t);
    s.state = {config.initial_rho11 * std::norm(c0), config.initial_rho10 * c0};
    s.kernels.t = t;
    s.kernels.pulse_count = s.pulse_count;
    traj.samples.push_back(s);
    traj.diagnostics.max_norm_error =
        std::max(traj.diagnostics.max_norm_error, std::abs(eigen_amplitudes.squaredNorm() - 1.0));
  };
  record(0.0, y);

  const int stride = config.numerics.sample_stride;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& step = steps[i];
    const int step_sign = (step.window % 2 == 0) ? 1 : -1;
    if (step_sign != sign) {
      const Eigen::VectorXcd x = to_sector(y, sign);
      traj.diagnostics.max_norm_error =
          std::max(traj.diagnostics.max_norm_error, std::abs(x.squaredNorm() - 1.0));
      y = to_eigen(x, step_sign);
      sign = step_sign;
    }
    const double h = step.t1 - step.t0;
    for (Eigen::Index k = 0; k < dim; ++k) y(k) *= std::polar(1.0, -energies(k) * h);
    const bool last = (i + 1 == steps.size());
    if (last || (i + 1) % static_cast<std::size_t>(stride) == 0) record(step.t1, y);
  }
  return traj;
}

}  // namespace ddtcl
