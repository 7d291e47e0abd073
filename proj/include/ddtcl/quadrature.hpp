#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

// Adaptive Gauss-Kronrod (7/15) quadrature for integrands valued in double,
// std::complex<double> or fixed-size Eigen arrays.
namespace ddtcl::quad {

namespace detail {

// Componentwise magnitudes: scalars map to double, arrays to arrays of double,
// so each component meets the tolerance on its own scale.
template <typename T>
struct Traits {
  using Err = double;
  static T zero() { return T(0); }
  static Err abs(const T& v) { return std::abs(v); }
  static bool all_within(Err e, Err tol) { return e <= tol; }
  static double max(Err e) { return e; }
  static double ratio(Err e, Err scale) { return e / scale; }
};
template <typename Scalar, int Rows>
struct Traits<Eigen::Array<Scalar, Rows, 1>> {
  using T = Eigen::Array<Scalar, Rows, 1>;
  using Err = Eigen::Array<double, Rows, 1>;
  static T zero() { return T::Zero(); }
  static Err abs(const T& v) { return v.abs().template cast<double>(); }
  static bool all_within(const Err& e, const Err& tol) { return (e <= tol).all(); }
  static double max(const Err& e) { return e.maxCoeff(); }
  static double ratio(const Err& e, const Err& scale) { return (e / scale).maxCoeff(); }
};

// Kronrod abscissae (positive half, descending) and weights; Gauss 7-point
// weights sit on the odd Kronrod nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
  using Err = typename Traits<T>::Err;
  double a = 0.0;
  double b = 0.0;
  T value{};
  Err error{};
  Err abs_integral{};
  double priority = 0.0;

  bool operator<(const Panel& other) const { return priority < other.priority; }
};

template <typename T, typename F>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  using Tr = Traits<T>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  typename Tr::Err abs_sum = Tr::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    const T pair = f1 + f2;
    kronrod += pair * kWgk[j];
    abs_sum += (Tr::abs(f1) + Tr::abs(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += pair * kWg[j / 2];
  }
  Panel<T> p;
  p.a = a;
  p.b = b;
  p.value = kronrod * half;
  p.error = Tr::abs(T((kronrod - gauss) * half));
  p.abs_integral = abs_sum * std::abs(half);
  return p;
}

}  // namespace detail

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  /// Initial panels are no wider than this.
  double max_panel_width = std::numeric_limits<double>::infinity();
  /// Bisections allowed beyond the initial partition.
  std::size_t max_subdivisions = 100000;
};

template <typename T>
struct Result {
  T value;
  double error = 0.0;  ///< largest componentwise error estimate
  std::size_t panels = 0;
  bool converged = false;
};

/// Integrate f over [a, b]. Starts from a uniform partition respecting
/// max_panel_width and bisects the panel with the largest error estimate until
/// every component meets max(abs_tol, rel_tol |I_i|, 50 eps int |f_i|) or the
/// bisection budget runs out (converged == false, best estimate returned).
template <typename T, typename F>
Result<T> integrate(F&& f, double a, double b, const AdaptiveOptions& options) {
  using Tr = detail::Traits<T>;
  using Err = typename Tr::Err;
  Result<T> result{Tr::zero(), 0.0, 0, true};
  if (!(b > a)) return result;

  const double width = b - a;
  std::size_t initial = 1;
  if (std::isfinite(options.max_panel_width) && options.max_panel_width > 0.0) {
    initial = static_cast<std::size_t>(std::ceil(width / options.max_panel_width));
    initial = std::max<std::size_t>(initial, 1);
  }

  std::vector<detail::Panel<T>> panels;
  panels.reserve(initial);
  T total = Tr::zero();
  Err error = Tr::abs(Tr::zero());
  Err abs_total = error;
  const double step = width / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = a + step * static_cast<double>(i);
    const double hi = (i + 1 == initial) ? b : a + step * static_cast<double>(i + 1);
    auto p = detail::gauss_kronrod_15<T>(f, lo, hi);
    total += p.value;
    error += p.error;
    abs_total += p.abs_integral;
    panels.push_back(std::move(p));
  }

  auto tolerance = [&]() -> Err {
    const Err roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_total;
    const Err relative = options.rel_tol * Tr::abs(total);
    Err tol = relative;
    if constexpr (std::is_same_v<Err, double>) {
      tol = std::max({options.abs_tol, relative, roundoff});
    } else {
      tol = relative.max(roundoff).max(options.abs_tol);
    }
    return tol;
  };

  // Panels are ranked by error relative to the tolerance of the first pass, so a
  // component with a small magnitude still gets refined.
  Err scale = tolerance();
  if constexpr (std::is_same_v<Err, double>) {
    scale = std::max(scale, std::numeric_limits<double>::min());
  } else {
    scale = scale.max(std::numeric_limits<double>::min());
  }
  std::priority_queue<detail::Panel<T>> heap;
  for (auto& p : panels) {
    p.priority = Tr::ratio(p.error, scale);
    heap.push(std::move(p));
  }
  panels.clear();

  std::size_t bisections = 0;
  while (!Tr::all_within(error, tolerance())) {
    if (bisections >= options.max_subdivisions) {
      result.converged = false;
      break;
    }
    detail::Panel<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
    left.priority = Tr::ratio(left.error, scale);
    right.priority = Tr::ratio(right.error, scale);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_total += left.abs_integral + right.abs_integral - worst.abs_integral;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++bisections;
  }

  // Re-sum from the panels to shed the drift of incremental updates.
  T sum = Tr::zero();
  Err err_sum = Tr::abs(Tr::zero());
  result.panels = heap.size();
  while (!heap.empty()) {
    sum += heap.top().value;
    err_sum += heap.top().error;
    heap.pop();
  }
  result.value = sum;
  result.error = Tr::max(err_sum);
  return result;
}

}  // namespace ddtcl::quad
