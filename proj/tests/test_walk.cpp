// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "doctest.h"

#include "revert/clock.hpp"
#include "revert/laws.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"
#include "revert/verify.hpp"
#include "revert/walk.hpp"

namespace {

using namespace revert;

TEST_SUITE("walk") {

TEST_CASE("simple walk pmf at n = 3") {
  const RationalPmf pmf = walk_pmf_simple_exact(3, 0.5);
  CHECK(pmf.at(-2) == Rational(1, 8));
  CHECK(pmf.at(-1) == Rational(1, 4));
  CHECK(pmf.at(0) == Rational(1, 4));
  CHECK(pmf.at(1) == Rational(1, 4));
  CHECK(pmf.at(2) == Rational(1, 8));
  CHECK(pmf.mass() == Rational(1));
}

TEST_CASE("simple walk pmf at n = 4") {
  const RationalPmf pmf = walk_pmf_simple_exact(4, 0.5);
  CHECK(pmf.at(0) == Rational(1, 4));
  CHECK(pmf.at(1) == Rational(11, 48));
  CHECK(pmf.at(-1) == Rational(11, 48));
  CHECK(pmf.at(2) == Rational(1, 8));
  CHECK(pmf.at(-2) == Rational(1, 8));
  CHECK(pmf.at(3) == Rational(1, 48));
  CHECK(pmf.at(-3) == Rational(1, 48));
}

TEST_CASE("simple walk pmf rejects out-of-range n") {
  CHECK_THROWS_AS(walk_pmf_simple_exact(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(walk_pmf_simple_exact(kExactPmfLimit + 1, 0.5), std::length_error);
}

TEST_CASE("walk moments by the subordination identities") {
  const auto [mean4, var4] = walk_moments(4, StepLaw::rademacher(0.5));
  CHECK(mean4 == doctest::Approx(0.0));
  CHECK(var4 == doctest::Approx(11.0 / 6.0));
  const auto [mean3, var3] = walk_moments(3, StepLaw::rademacher(1.0));
  CHECK(mean3 == doctest::Approx(1.5));
  CHECK(var3 == doctest::Approx(0.25));
}

TEST_CASE("moments agree with the exact pmf") {
  for (std::int64_t n = 2; n <= 8; ++n) {
    const Pmf pmf = walk_pmf_simple(n, 0.3);
    const auto [mean, variance] = walk_moments(n, StepLaw::rademacher(0.3));
    CHECK(pmf.mean() == doctest::Approx(mean).epsilon(1e-12));
    CHECK(pmf.variance() == doctest::Approx(variance).epsilon(1e-12));
  }
}

TEST_CASE("symmetric steps give a symmetric law") {
  const RationalPmf pmf = walk_pmf_simple_exact(9, 0.5);
  for (const auto& [v, p] : pmf.entries()) CHECK(p == pmf.at(-v));
}

TEST_CASE("mixture route matches the exact law") {
  const Pmf mixture = walk_pmf_mixture(10, 0.3, 1e-16);
  const Pmf exact = pmf_to_double(walk_pmf_simple_exact(10, 0.3));
  CHECK(verify::tv_distance(mixture, exact) < 1e-12);
}

TEST_CASE("characteristic function is the stagewise product") {
  const auto cf = rademacher_cf(0.3);
  CHECK(std::abs(walk_char_function(6, 0.0, cf) - std::complex<double>(1.0, 0.0)) < 1e-14);
  const double theta = 1.1;
  std::complex<double> product(1.0, 0.0);
  for (std::int64_t k = 1; k < 6; ++k) {
    const auto kd = static_cast<double>(k);
    product *= (kd - 1.0) / kd + cf(theta) / kd;
  }
  CHECK(std::abs(walk_char_function(6, theta, cf) - product) < 1e-14);
}

TEST_CASE("characteristic function requires a normalised step cf") {
  const auto broken = [](double) { return std::complex<double>(0.5, 0.0); };
  CHECK_THROWS_AS(walk_char_function(4, 1.0, broken), std::invalid_argument);
}

TEST_CASE("coupled trajectories replay") {
  RandomStream rng(201, 0);
  for (int repeat = 0; repeat < 50; ++repeat) {
    const WalkTrajectory trajectory =
        simulate_walk_recursive(60, StepLaw::rademacher(0.4), ReversionLaw::uniform(), rng);
    CHECK(walk_coupling_replay(trajectory));
  }
}

TEST_CASE("general step laws carry their moments") {
  const StepLaw law = StepLaw::finite_discrete({{-2, 0.2}, {0, 0.5}, {3, 0.3}});
  const double mean = -2 * 0.2 + 3 * 0.3;
  const auto [walk_mean, walk_var] = walk_moments(5, law);
  const ClockMoments clock = clock_moments(5);
  CHECK(walk_mean == doctest::Approx(clock.mean * mean));
}

}  // TEST_SUITE

}  // namespace
