#include "ddtcl/correlation.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace ddtcl {

Complex trigamma(Complex w) {
  if (!(w.real() > 0.0)) throw std::domain_error("trigamma requires Re w > 0");
  // Recurrence psi'(w) = psi'(w + 1) + 1 / w^2 until the asymptotic series is accurate.
  Complex shift{0.0, 0.0};
  while (std::abs(w) < 12.0) {
    shift += 1.0 / (w * w);
    w += 1.0;
  }
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  // 1/w + 1/(2 w^2) + sum_k B_2k / w^(2k+1)
  static constexpr std::array<double, 8> kBernoulli = {
      1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
      -3617.0 / 510.0};
  Complex series{0.0, 0.0};
  for (auto it = kBernoulli.rbegin(); it != kBernoulli.rend(); ++it) series = series * inv2 + *it;
  series *= inv * inv2;
  return shift + inv + 0.5 * inv2 + series;
}

Complex BathCorrelation::symmetric(double tau) const {
  const Complex z{1.0 / sd.omega_c, -tau};
  Complex value = 1.0 / (z * z);
  if (bath.kT > 0.0) value += 2.0 * bath.kT * bath.kT * trigamma(1.0 + bath.kT * z);
  return sd.alpha * std::polar(1.0, -tau) * value;
}

Complex BathCorrelation::thermal(double tau) const {
  if (bath.kT <= 0.0) return {0.0, 0.0};
  const Complex z{1.0 / sd.omega_c, -tau};
  return sd.alpha * std::polar(1.0, -tau) * bath.kT * bath.kT * trigamma(1.0 + bath.kT * z);
}

namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGlX = {0.183434642495649804939476142360184,
                                        0.525532409916328985817739049189254,
                                        0.796666477413626739591553936475830,
                                        0.960289856497536231683560868569473};
constexpr std::array<double, 4> kGlW = {0.362683783378361982965150449277196,
                                        0.313706645877887287337962201986601,
                                        0.222381034453374470544355994426241,
                                        0.101228536290376259152531354309962};

}  // namespace

CorrelationKernels::CorrelationKernels(const SimConfig& config, double grid_spacing)
    : correlation_{config.spectral(), config.bath()},
      schedule_(config.schedule()),
      spacing_(grid_spacing) {
  if (!(grid_spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  // F varies on the scales 1 / omega_c, 1 / omega0 and 1 / kT.
  const double fastest = std::max({config.omega_c, 1.0, config.kT});
  sub_width_ = 0.25 / fastest;
  g_sym_.push_back({0.0, 0.0});
  g_thermal_.push_back({0.0, 0.0});
}

std::pair<Complex, Complex> CorrelationKernels::integrate_cell(double from, double to) const {
  const double length = to - from;
  const auto pieces = static_cast<int>(std::ceil(std::abs(length) / sub_width_));
  Complex sym{0.0, 0.0};
  Complex th{0.0, 0.0};
  if (pieces == 0) return {sym, th};
  const double width = length / pieces;
  const bool thermal = correlation_.bath.kT > 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double center = from + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < kGlX.size(); ++i) {
      for (double side : {-1.0, 1.0}) {
        const double tau = center + side * half * kGlX[i];
        sym += kGlW[i] * half * correlation_.symmetric(tau);
        if (thermal) th += kGlW[i] * half * correlation_.thermal(tau);
      }
    }
  }
  return {sym, th};
}

void CorrelationKernels::extend_to(std::size_t index) {
  while (g_sym_.size() <= index) {
    const std::size_t k = g_sym_.size() - 1;
    const auto [ds, dt] = integrate_cell(static_cast<double>(k) * spacing_,
                                         static_cast<double>(k + 1) * spacing_);
    g_sym_.push_back(g_sym_.back() + ds);
    g_thermal_.push_back(g_thermal_.back() + dt);
  }
}

std::pair<Complex, Complex> CorrelationKernels::cumulative(double tau) {
  if (!(tau >= 0.0)) throw std::domain_error("cumulative correlation requires tau >= 0");
  const auto k = static_cast<std::size_t>(std::llround(tau / spacing_));
  extend_to(k);
  const double node = static_cast<double>(k) * spacing_;
  const double d = tau - node;
  if (d == 0.0) return {g_sym_[k], g_thermal_[k]};
  if (std::abs(d) < 1e-6 * spacing_) {
    const double mid = node + 0.5 * d;
    return {g_sym_[k] + d * correlation_.symmetric(mid), g_thermal_[k] + d * correlation_.thermal(mid)};
  }
  const auto [ds, dt] = integrate_cell(node, tau);
  return {g_sym_[k] + ds, g_thermal_[k] + dt};
}

KernelValues CorrelationKernels::evaluate(double t, std::int64_t window) {
  if (!(t >= 0.0)) throw std::domain_error("kernel time must be >= 0");
  Complex sym{0.0, 0.0};
  Complex th{0.0, 0.0};
  if (!schedule_.enabled() || window == 0) {
    std::tie(sym, th) = cumulative(t);
  } else {
    const double u = t - schedule_.pulse_time(window);
    if (u < 0.0) throw std::domain_error("kernel time precedes its window");
    std::tie(sym, th) = cumulative(u);
    // Window [(N-1-j) dt, (N-j) dt] enters with sign -(-1)^j.
    auto [prev_sym, prev_th] = std::pair{sym, th};
    for (std::int64_t j = 0; j < window; ++j) {
      const auto [next_sym, next_th] = cumulative(t - schedule_.pulse_time(window - 1 - j));
      const double sign = (j % 2 == 0) ? -1.0 : 1.0;
      sym += sign * (next_sym - prev_sym);
      th += sign * (next_th - prev_th);
      prev_sym = next_sym;
      prev_th = next_th;
    }
  }
  KernelValues k;
  k.t = t;
  k.pulse_count = window;
  k.gamma10 = sym;
  k.gamma11 = 2.0 * sym.real();
  k.eta11 = 2.0 * th.real();
  return k;
}

}  // namespace ddtcl
