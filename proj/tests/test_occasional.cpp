// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "revert/clock.hpp"
#include "revert/laws.hpp"
#include "revert/occasional.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"

namespace {

using namespace revert;

TEST_SUITE("occasional") {

TEST_CASE("pmf at n = 3, q = 1/2") {
  const RationalPmf pmf = occasional_pmf_exact(3, 0.5);
  CHECK(pmf.size() == 2);
  CHECK(pmf.at(1) == Rational(1, 4));
  CHECK(pmf.at(2) == Rational(3, 4));
}

TEST_CASE("moments at n = 3, q = 1/2") {
  const auto [mean, second] = occasional_moments_exact(3, 0.5);
  CHECK(mean == Rational(7, 4));
  CHECK(second == Rational(13, 4));
  const OccasionalMoments moments = occasional_moments(3, 0.5);
  CHECK(moments.mean == doctest::Approx(1.75));
  CHECK(moments.second_moment == doctest::Approx(3.25));
  CHECK(moments.variance == doctest::Approx(3.25 - 1.75 * 1.75));
  CHECK(moments.ratio == doctest::Approx(3.25 / (1.75 * 1.75)));
}

TEST_CASE("float moments match the exact recursion") {
  for (const double q : {0.25, 0.5, 0.75}) {
    for (std::int64_t n = 1; n <= kExactPmfLimit; ++n) {
      const auto [mean, second] = occasional_moments_exact(n, q);
      const OccasionalMoments moments = occasional_moments(n, q);
      CHECK(moments.mean == doctest::Approx(to_double(mean)).epsilon(1e-12));
      CHECK(moments.second_moment == doctest::Approx(to_double(second)).epsilon(1e-12));
    }
  }
}

TEST_CASE("q = 1 reduces to the uniform clock") {
  for (std::int64_t n = 1; n <= 8; ++n) {
    CHECK(occasional_pmf_exact(n, 1.0) == clock_pmf_exact(n));
  }
  CHECK(backward_chain_distribution(6, 1.0) == clock_pmf_exact(7));
}

TEST_CASE("backward chain matches the stage-ahead pmf") {
  CHECK(backward_chain_distribution(2, 0.5) == occasional_pmf_exact(3, 0.5));
  for (const double q : {0.25, 0.75}) {
    for (std::int64_t n = 2; n <= 6; ++n) {
      CHECK(backward_chain_distribution(n, q) == occasional_pmf_exact(n + 1, q));
    }
  }
}

TEST_CASE("large-n pmf keeps its mass accounting") {
  const Pmf pmf = occasional_pmf(200, 0.5, 1e-12);
  CHECK(pmf.mass() + pmf.truncated_mass() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pmf.mean() == doctest::Approx(occasional_moments(200, 0.5).mean).epsilon(1e-8));
}

TEST_CASE("bivariate generating function reductions") {
  // s = 1 collapses to the geometric series in z.
  for (const double z : {0.1, 0.5, 0.9}) {
    CHECK(occasional_bivariate_gf(1.0, z, 0.3) == doctest::Approx(1.0 / (1.0 - z)));
  }
  // q = 1 collapses to (1 - z)^{-s}.
  for (const double s : {0.2, 0.7}) {
    for (const double z : {0.2, 0.6}) {
      CHECK(occasional_bivariate_gf(s, z, 1.0) ==
            doctest::Approx(std::pow(1.0 - z, -s)).epsilon(1e-13));
    }
  }
}

TEST_CASE("dobrushin diagnostic at n = 3, q = 1/2") {
  const DobrushinDiagnostic diagnostic = dobrushin_diagnostic(3, 0.5);
  CHECK(diagnostic.alpha == doctest::Approx(0.75));
  CHECK(diagnostic.var_sum >= diagnostic.var_sum_lower_bound);
  CHECK(diagnostic.condition_value ==
        doctest::Approx(std::pow(diagnostic.alpha, 3.0) * diagnostic.var_sum));
}

TEST_CASE("dobrushin alpha never falls below q") {
  for (const double q : {0.25, 0.5, 0.75}) {
    for (std::int64_t n = 2; n <= 50; ++n) {
      CHECK(dobrushin_diagnostic(n, q).alpha >= q);
    }
  }
}

TEST_CASE("trace bookkeeping") {
  RandomStream rng(401, 0);
  for (int repeat = 0; repeat < 100; ++repeat) {
    const OccasionalTrace trace = simulate_occasional(30, 0.35, rng);
    REQUIRE(trace.n() == 30);
    CHECK(trace.T(1) == 0);
    std::int64_t reversions = 0;
    for (std::int64_t k = 1; k < 30; ++k) {
      const auto index = static_cast<std::size_t>(k - 1);
      const std::int64_t target = trace.targets.at(index);
      CHECK(trace.T(k + 1) == 1 + trace.T(target));
      if (trace.gates.at(index) != 0) {
        ++reversions;
      } else {
        CHECK(target == k);
      }
      CHECK(trace.reversion_count(k) == reversions);
    }
    const auto times = trace.reversion_times();
    const auto intervals = trace.intervals();
    REQUIRE(times.size() == intervals.size());
    std::int64_t stage = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      stage += intervals[i];
      CHECK(times[i] == stage);
    }
  }
}

TEST_CASE("martingale trace stays bookkept and bounded") {
  RandomStream rng(402, 0);
  const auto trace = occasional_martingale_trace(25, 0.5, rng, 1e-10);
  REQUIRE(trace.size() == 25);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& entry = trace[i];
    CHECK(entry.epoch == static_cast<std::int64_t>(i + 1));
    // The bound accumulates one series tail per epoch.
    CHECK(entry.truncation_error <= 1e-10 * static_cast<double>(entry.epoch));
    CHECK(std::isfinite(entry.m));
    if (i > 0) {
      CHECK(entry.stage > trace[i - 1].stage);
      CHECK(entry.truncation_error >= trace[i - 1].truncation_error);
    }
  }
}

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS(occasional_pmf_exact(kExactPmfLimit + 1, 0.5), std::length_error);
  CHECK_THROWS_AS(occasional_moments(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(occasional_moments(3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(dobrushin_diagnostic(1, 0.5), std::invalid_argument);
}

}  // TEST_SUITE

}  // namespace
