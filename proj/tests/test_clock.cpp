// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "revert/clock.hpp"
#include "revert/laws.hpp"
#include "revert/numeric.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"

namespace {

using namespace revert;

TEST_SUITE("clock") {

TEST_CASE("small clocks are degenerate") {
  CHECK(clock_pmf_exact(1).at(0) == Rational(1));
  CHECK(clock_pmf_exact(1).size() == 1);
  CHECK(clock_pmf_exact(2).at(1) == Rational(1));
  CHECK(clock_pmf_exact(2).size() == 1);
}

TEST_CASE("clock pmf at n = 4") {
  const RationalPmf pmf = clock_pmf_exact(4);
  CHECK(pmf.size() == 3);
  CHECK(pmf.at(1) == Rational(1, 3));
  CHECK(pmf.at(2) == Rational(1, 2));
  CHECK(pmf.at(3) == Rational(1, 6));
}

TEST_CASE("clock moments at n = 4") {
  const auto [mean, variance] = clock_moments_exact(4);
  CHECK(mean == Rational(11, 6));
  CHECK(variance == Rational(17, 36));
  const ClockMoments moments = clock_moments(4);
  CHECK(moments.mean == doctest::Approx(11.0 / 6.0));
  CHECK(moments.variance == doctest::Approx(17.0 / 36.0));
}

TEST_CASE("mean and variance are harmonic partial sums") {
  for (std::int64_t n = 2; n <= 12; ++n) {
    const ClockMoments moments = clock_moments(n);
    CHECK(moments.mean == doctest::Approx(harmonic(n - 1)));
    CHECK(moments.variance == doctest::Approx(harmonic(n - 1) - harmonic_squares(n - 1)));
  }
}

TEST_CASE("pmf satisfies the averaging recurrence") {
  // P(T_{n+1} = x) = n^{-1} sum_{k=1}^{n} P(T_k = x - 1)
  for (std::int64_t n = 1; n <= 9; ++n) {
    const RationalPmf next = clock_pmf_exact(n + 1);
    for (const auto& [x, p] : next.entries()) {
      Rational total(0);
      for (std::int64_t k = 1; k <= n; ++k) total += clock_pmf_exact(k).at(x - 1);
      CHECK(p == total / n);
    }
  }
}

TEST_CASE("pmf is the Bernoulli product law") {
  // T_n is a sum of independent Bernoulli(1/k), k = 1..n-1.
  for (std::int64_t n = 1; n <= 10; ++n) {
    RationalPmf product = RationalPmf::point_mass(0);
    for (std::int64_t k = 1; k < n; ++k) product.multiply_bernoulli(Rational(1, k));
    CHECK(product == clock_pmf_exact(n));
  }
}

TEST_CASE("pmf matches the first-kind Stirling triangle") {
  const int n = 7;
  const RationalPmf pmf = clock_pmf_exact(n + 1);
  const Rational scale = Rational(1) / Rational(factorial(n));
  for (int k = 1; k <= n; ++k) {
    CHECK(pmf.at(k) == Rational(stirling_first(n, k)) * scale);
  }
  CHECK(stirling_first(4, 2) == 11);
  CHECK(stirling_first(0, 0) == 1);
  CHECK_THROWS_AS(stirling_first(kStirlingLimit + 1, 0), std::length_error);
}

TEST_CASE("float pmf matches the exact law at the mode boundary") {
  const Pmf direct = clock_pmf(kExactPmfLimit, 1e-18);
  const Pmf exact = pmf_to_double(clock_pmf_exact(kExactPmfLimit));
  for (const auto& [v, p] : exact.entries()) {
    CHECK(direct.at(v) == doctest::Approx(p).epsilon(1e-13));
  }
}

TEST_CASE("exact mode refuses large n") {
  CHECK_THROWS_AS(clock_pmf_exact(kExactPmfLimit + 1), std::length_error);
  CHECK_THROWS_AS(clock_pmf(kExactPmfLimit + 1, 0.0), std::length_error);
  CHECK_NOTHROW(clock_pmf(kExactPmfLimit + 1, 1e-15));
}

TEST_CASE("large-n pmf keeps its mass accounting") {
  const Pmf pmf = clock_pmf(200, 1e-12);
  CHECK(pmf.mass() + pmf.truncated_mass() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pmf.mean() == doctest::Approx(harmonic(199)).epsilon(1e-8));
}

TEST_CASE("trajectories follow their recorded reversions") {
  RandomStream rng(101, 0);
  const ClockTrajectory trajectory = simulate_clock_trajectory(40, ReversionLaw::uniform(), rng);
  REQUIRE(trajectory.n() == 40);
  CHECK(trajectory.T(1) == 0);
  for (std::int64_t k = 1; k < 40; ++k) {
    const std::int64_t target = trajectory.reversions.at(static_cast<std::size_t>(k - 1));
    CHECK(target >= 1);
    CHECK(target <= k);
    CHECK(trajectory.T(k + 1) == 1 + trajectory.T(target));
  }
}

TEST_CASE("backward reversion times decrease to 1") {
  RandomStream rng(102, 0);
  for (int repeat = 0; repeat < 200; ++repeat) {
    const std::vector<std::int64_t> times = backward_reversion_times(12, rng);
    REQUIRE_FALSE(times.empty());
    CHECK(times.back() == 1);
    CHECK(times.front() <= 12);
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] < times[i - 1]);
  }
  const std::vector<std::int64_t> trivial = backward_reversion_times(1, rng);
  CHECK(trivial == std::vector<std::int64_t>{1});
}

TEST_CASE("clt diagnostic at n = 100") {
  const CltDiagnostic diagnostic = clock_clt_diagnostic(100);
  CHECK(diagnostic.ks == doctest::Approx(0.07991036260121537).epsilon(1e-9));
  CHECK(diagnostic.mean == doctest::Approx(harmonic(99)));
  CHECK_FALSE(diagnostic.convention.empty());
  CHECK(diagnostic.truncated_mass < 1e-12);
}

}  // TEST_SUITE

}  // namespace
