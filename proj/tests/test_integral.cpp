// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "revert/clock.hpp"
#include "revert/integral.hpp"
#include "revert/laws.hpp"
#include "revert/numeric.hpp"
#include "revert/random.hpp"
#include "revert/verify.hpp"

namespace {

using namespace revert;

TEST_SUITE("integral") {

TEST_CASE("frozen variance values") {
  const auto [q2, var2] = martingale_variance_exact(2);
  CHECK(var2 == Rational(0));
  const auto [q3, var3] = martingale_variance_exact(3);
  CHECK(q3 == Rational(1, 48));
  CHECK(var3 == Rational(1, 36));
}

TEST_CASE("variance approaches its limit") {
  const MartingaleVariance variance = martingale_variance(100000);
  const double limit = 2.0 - std::numbers::pi * std::numbers::pi / 6.0;
  CHECK(variance.limit == doctest::Approx(limit).epsilon(1e-12));
  CHECK(std::abs(variance.variance - limit) < 5e-4);
  CHECK(variance.variance == doctest::Approx((100001.0 / 100000.0) * variance.q_n));
}

TEST_CASE("float variance matches the exact recursion") {
  for (std::int64_t n = 1; n <= 25; ++n) {
    const auto exact = martingale_variance_exact(n);
    CHECK(martingale_variance(n).variance ==
          doctest::Approx(to_double(exact.second)).epsilon(1e-12));
  }
}

TEST_CASE("enumerated law of M_3") {
  const verify::IntegratedEnumeration oracle = verify::enumerate_integrated(3);
  CHECK(oracle.e_m == Rational(0));
  CHECK(oracle.var_m == Rational(1, 36));
  REQUIRE(oracle.m_law.size() == 2);
  CHECK(oracle.m_law.at(Rational(-1, 6)) == Rational(1, 2));
  CHECK(oracle.m_law.at(Rational(1, 6)) == Rational(1, 2));
}

TEST_CASE("integrated sum variance recursion") {
  // Var S_n = Var T_n + ((n+1)/(n-1)) Var S_{n-1}
  for (std::int64_t n = 3; n <= 7; ++n) {
    const Rational var_s = verify::enumerate_integrated(n).s_marginal.variance();
    const Rational var_prev = verify::enumerate_integrated(n - 1).s_marginal.variance();
    const Rational var_t = clock_pmf_exact(n).variance();
    CHECK(var_s == var_t + Rational(n + 1, n - 1) * var_prev);
  }
}

TEST_CASE("clock covariance is lag-free") {
  CHECK(clock_covariance_exact(3, 1) == Rational(1, 12));
  CHECK(clock_covariance_exact(3, 5) == Rational(1, 12));
  CHECK(verify::enumerate_clock_covariance(3, 1) == Rational(1, 12));
  CHECK(verify::enumerate_clock_covariance(3, 2) == Rational(1, 12));
  for (std::int64_t n = 2; n <= 6; ++n) {
    CHECK(clock_covariance_exact(n, 1) == verify::enumerate_clock_covariance(n, 1));
  }
}

TEST_CASE("trace bookkeeping") {
  RandomStream rng(301, 0);
  const ClockTrajectory trajectory = simulate_clock_recursive(120, rng);
  const std::vector<MartingaleTrace> trace = integrated_trace(trajectory);
  REQUIRE(trace.size() == 120);
  CHECK(trace.front().m == 0.0);
  std::int64_t running = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    running += trajectory.T(static_cast<std::int64_t>(i + 1));
    CHECK(trace[i].s == running);
    const auto k = static_cast<double>(i + 1);
    CHECK(trace[i].m ==
          doctest::Approx((static_cast<double>(running) - trace[i].expected_s) / k));
  }
}

TEST_CASE("increments respect the structural bound") {
  RandomStream rng(302, 0);
  double max_step = 0.0;
  for (int repeat = 0; repeat < 200; ++repeat) {
    const auto trace = integrated_trace(simulate_clock_recursive(200, rng));
    max_step = std::max(max_step, hoeffding_check(trace));
  }
  CHECK(max_step <= 1.5);
  CHECK(max_step > 0.0);
}

TEST_CASE("azuma bound shape") {
  CHECK(azuma_tail_bound(1, 1.0) == 0.0);
  CHECK_THROWS_AS(azuma_tail_bound(5, 0.0), std::invalid_argument);
  CHECK(azuma_tail_bound(5, 5.0) == doctest::Approx(2.0 * std::exp(-25.0 / 18.0)));
  double previous = azuma_tail_bound(10, 0.25);
  for (double x = 0.5; x <= 6.0; x += 0.5) {
    const double bound = azuma_tail_bound(10, x);
    CHECK(bound <= previous);
    CHECK(bound >= 0.0);
    CHECK(bound <= 1.0);
    previous = bound;
  }
}

TEST_CASE("increment regression flags biased increments") {
  RandomStream rng(303, 0);
  std::vector<std::pair<double, double>> centered;
  std::vector<std::pair<double, double>> biased;
  for (int i = 0; i < 20000; ++i) {
    const double level = rng.uniform01();
    const double noise = rng.uniform01() - 0.5;
    centered.emplace_back(level, level + noise);
    biased.emplace_back(level, level + noise + 0.2);
  }
  CHECK(verify::martingale_increment_test(centered, 10).max_abs_z < 4.0);
  CHECK(verify::martingale_increment_test(biased, 10).max_abs_z > 10.0);
}

}  // TEST_SUITE

}  // namespace
