#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ddtcl/model.hpp"

using namespace ddtcl;

TEST_CASE("pulse_count uses left-closed windows") {
  const auto s = PulseSchedule::periodic(0.5);
  CHECK(pulse_count(s, 0.49) == 0);
  CHECK(pulse_count(s, 0.5) == 1);
  CHECK(pulse_count(s, 0.0) == 0);
  CHECK(pulse_count(PulseSchedule::disabled(), 7.3) == 0);
}

TEST_CASE("pulse_count agrees with pulse_time at every boundary") {
  for (double dt : {0.1, 0.016 * kTwoPi, 0.032 * kTwoPi, 1.0 / 3.0}) {
    const auto s = PulseSchedule::periodic(dt);
    for (std::int64_t m = 1; m < 3000; ++m) {
      const double tm = s.pulse_time(m);
      REQUIRE(pulse_count(s, tm) == m);
      REQUIRE(pulse_count(s, std::nextafter(tm, 0.0)) == m - 1);
    }
  }
}

TEST_CASE("pulse_count is non-decreasing with unit increments") {
  const auto s = PulseSchedule::periodic(0.37);
  std::int64_t prev = 0;
  for (int i = 0; i <= 20000; ++i) {
    const std::int64_t n = pulse_count(s, i * 1e-3);
    REQUIRE(n >= prev);
    REQUIRE(n - prev <= 1);
    prev = n;
  }
  CHECK(prev == pulse_count(s, 20.0));
}

TEST_CASE("sign_function") {
  const auto s = PulseSchedule::periodic(1.0);
  CHECK(sign_function(s, 0.3) == 1);
  CHECK(sign_function(s, 1.2) == -1);
  CHECK(sign_function(s, 2.0) == 1);
  for (double tau : {0.0, 0.5, 3.0, 1e6}) CHECK(sign_function(PulseSchedule::disabled(), tau) == 1);
}

TEST_CASE("schedule rejects non-positive intervals") {
  CHECK_THROWS_AS(PulseSchedule::periodic(0.0), ConfigError);
  CHECK_THROWS_AS(PulseSchedule::periodic(-1.0), ConfigError);
}

TEST_CASE("bose_occupation") {
  CHECK(bose_occupation({0.1}, 1.0) == doctest::Approx(1.0 / std::expm1(10.0)).epsilon(1e-14));
  CHECK(bose_occupation({0.1}, 1.0) == doctest::Approx(4.539993e-5).epsilon(1e-6));
  CHECK(bose_occupation({0.0}, 1.0) == 0.0);
  CHECK(bose_occupation({0.1}, 0.1) == doctest::Approx(0.581977).epsilon(1e-6));
  CHECK(std::isfinite(bose_occupation({1e-3}, 50.0)));
  CHECK(bose_occupation({1e-3}, 50.0) == 0.0);
  CHECK_THROWS_AS(bose_occupation({0.1}, 0.0), std::domain_error);
  CHECK_THROWS_AS(bose_occupation({0.1}, -1.0), std::domain_error);
}

TEST_CASE("detailed balance n + 1 = exp(w / kT) n") {
  for (double kT : {0.05, 0.1, 0.5, 2.0}) {
    for (double w : {0.01, 0.3, 1.0, 2.5, 7.0}) {
      const double n = bose_occupation({kT}, w);
      const double lhs = n + 1.0;
      const double rhs = std::exp(w / kT) * n;
      CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
    }
  }
}

TEST_CASE("spectral density") {
  CHECK(spectral_value({5.0, 1.0}, 0.0) == 0.0);
  CHECK(spectral_value({5.0, 1.0}, 5.0) == doctest::Approx(5.0 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(spectral_value({5.0, 1.0}, 5.0) == doctest::Approx(1.839397).epsilon(1e-6));
  CHECK(spectral_value({5.0, 2.0}, 1.0) == doctest::Approx(1.637462).epsilon(1e-6));
  CHECK_THROWS_AS(spectral_value({5.0, 1.0}, -0.1), std::domain_error);
}

TEST_CASE("spectral density peaks at omega_c") {
  for (double wc : {1.0, 5.0, 10.0}) {
    const SpectralDensity sd{wc, 1.0};
    const double peak = sd(wc);
    for (int i = 0; i <= 4000; ++i) {
      const double w = i * 1e-3 * 10.0 * wc / 4.0;
      REQUIRE(sd(w) <= peak);
    }
  }
}

TEST_CASE("bath weights are continuous at w = 0") {
  const SpectralDensity sd{5.0, 1.5};
  const BathParams bath{0.1};
  CHECK(thermal_weight(sd, bath, 0.0) == doctest::Approx(1.5 * 0.1).epsilon(1e-15));
  CHECK(symmetric_weight(sd, bath, 0.0) == doctest::Approx(2.0 * 1.5 * 0.1).epsilon(1e-15));
  CHECK(thermal_weight(sd, bath, 1e-9) == doctest::Approx(0.15).epsilon(1e-7));
  for (double w : {0.05, 1.0, 3.0}) {
    const double n = bose_occupation(bath, w);
    CHECK(thermal_weight(sd, bath, w) == doctest::Approx(sd(w) * n).epsilon(1e-13));
    CHECK(symmetric_weight(sd, bath, w) == doctest::Approx(sd(w) * (2 * n + 1)).epsilon(1e-13));
  }
  CHECK(thermal_weight(sd, {0.0}, 0.0) == 0.0);
}

TEST_CASE("SimConfig validation") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());

  auto rejects = [](auto mutate) {
    SimConfig bad;
    mutate(bad);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  };
  rejects([](SimConfig& s) { s.omega_c = 0.0; });
  rejects([](SimConfig& s) { s.kT = -0.1; });
  rejects([](SimConfig& s) { s.alpha = -1.0; });
  rejects([](SimConfig& s) { s.t_final = 0.0; });
  rejects([](SimConfig& s) { s.pulse_interval = s.t_final; });
  rejects([](SimConfig& s) { s.pulse_interval = 0.0; });
  rejects([](SimConfig& s) { s.initial_rho11 = 1.1; });
  rejects([](SimConfig& s) { s.initial_rho10 = {0.6, 0.0}; });
  rejects([](SimConfig& s) { s.omega0 = 2.0; });
  rejects([](SimConfig& s) { s.numerics.substeps = 0; });

  SimConfig pure;
  pure.initial_rho11 = 0.5;
  pure.initial_rho10 = std::polar(0.5, 0.7);
  CHECK_NOTHROW(pure.validate());
}

TEST_CASE("QubitState physicality") {
  CHECK(QubitState{0.5, {0.5, 0.0}}.is_physical());
  CHECK(QubitState{1.0, {0.0, 0.0}}.is_physical());
  CHECK_FALSE(QubitState{-1e-3, {0.0, 0.0}}.is_physical());
  CHECK_FALSE(QubitState{0.5, {0.51, 0.0}}.is_physical());
  const QubitState s{0.3, {0.1, -0.2}};
  CHECK(s.rho00() == doctest::Approx(0.7));
  CHECK(s.rho01() == Complex(0.1, 0.2));
}

TEST_CASE("Trajectory::state_at") {
  Trajectory tr;
  tr.samples.push_back({0.0, 0, {1.0, {0.0, 0.0}}, {}});
  tr.samples.push_back({1.0, 0, {0.5, {0.2, 0.0}}, {}});
  CHECK(tr.state_at(1.0).rho11 == 0.5);
  CHECK(tr.state_at(0.25).rho11 == doctest::Approx(0.875));
  CHECK(tr.state_at(0.25).rho10.real() == doctest::Approx(0.05));
  CHECK(tr.state_at(5.0).rho11 == 0.5);
}

TEST_CASE("cycle conversion") {
  CHECK(to_cycles(kTwoPi) == doctest::Approx(1.0));
  CHECK(from_cycles(0.016) == doctest::Approx(0.016 * 2.0 * std::numbers::pi));
}
