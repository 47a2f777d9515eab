// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "doctest.h"

#include "revert/numeric.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"
#include "revert/rational.hpp"

namespace {

using namespace revert;

TEST_SUITE("numeric") {

TEST_CASE("rational_from_double is exact on dyadic inputs") {
  CHECK(rational_from_double(0.375) == Rational(3, 8));
  CHECK(rational_from_double(-2.5) == Rational(-5, 2));
  CHECK(rational_from_double(1.0) == Rational(1));
  CHECK(rational_from_double(0.0) == Rational(0));
  CHECK(to_double(rational_from_double(0.1)) == 0.1);
  CHECK_THROWS_AS(rational_from_double(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(rational_from_double(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(12) == 479001600);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(7, 7) == 1);
}

TEST_CASE("harmonic sums") {
  CHECK(harmonic(1) == doctest::Approx(1.0));
  CHECK(harmonic(4) == doctest::Approx(25.0 / 12.0));
  CHECK(harmonic_squares(2) == doctest::Approx(1.25));
  CHECK(harmonic_squares(3) == doctest::Approx(49.0 / 36.0));
}

TEST_CASE("compensated summation survives catastrophic cancellation") {
  CompensatedSum sum;
  sum.add(1e16);
  sum.add(1.0);
  sum.add(-1e16);
  CHECK(sum.value() == doctest::Approx(1.0));
}

TEST_CASE("normal cdf midpoint and symmetry") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429));
  CHECK(normal_cdf(3.0) + normal_cdf(-3.0) == doctest::Approx(1.0));
}

TEST_CASE("random streams replay exactly and differ across streams") {
  RandomStream a(42, 1);
  RandomStream b(42, 1);
  RandomStream c(42, 2);
  bool replay = true;
  bool distinct = false;
  for (int i = 0; i < 64; ++i) {
    const double ua = a.uniform01();
    replay = replay && ua == b.uniform01();
    distinct = distinct || ua != c.uniform01();
  }
  CHECK(replay);
  CHECK(distinct);
  CHECK(a.seed() == 42);
  CHECK(c.stream() == 2);
}

TEST_CASE("uniform_index is one-based and covers its range") {
  RandomStream rng(7, 0);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 500; ++i) {
    const std::int64_t v = rng.uniform_index(5);
    CHECK(v >= 1);
    CHECK(v <= 5);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
  CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("bernoulli honours degenerate probabilities") {
  RandomStream rng(11, 0);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
  CHECK_THROWS_AS(rng.bernoulli(1.5), std::invalid_argument);
}

TEST_CASE("pmf convolution, moments, and pruning") {
  RationalPmf step;
  step.add(-1, Rational(1, 2));
  step.add(1, Rational(1, 2));
  const RationalPmf two = step.convolve(step);
  CHECK(two.at(-2) == Rational(1, 4));
  CHECK(two.at(0) == Rational(1, 2));
  CHECK(two.at(2) == Rational(1, 4));
  CHECK(two.mass() == Rational(1));
  CHECK(two.mean() == Rational(0));
  CHECK(two.variance() == Rational(2));

  Pmf lossy = pmf_to_double(two);
  const double dropped = lossy.prune_below(0.3);
  CHECK(dropped == doctest::Approx(0.5));
  CHECK(lossy.truncated_mass() == doctest::Approx(0.5));
  CHECK(lossy.size() == 1);
}

TEST_CASE("multiply_bernoulli appends an independent indicator") {
  RationalPmf pmf = RationalPmf::point_mass(0);
  pmf.multiply_bernoulli(Rational(1, 3));
  pmf.multiply_bernoulli(Rational(1, 2));
  CHECK(pmf.at(0) == Rational(1, 3));
  CHECK(pmf.at(1) == Rational(1, 2));
  CHECK(pmf.at(2) == Rational(1, 6));
}

TEST_CASE("validate_pmf rejects bad mass") {
  Pmf bad;
  bad.add(0, 0.5);
  CHECK_THROWS_AS(validate_pmf(bad), std::invalid_argument);
  Pmf good;
  good.add(0, 0.5);
  good.add(1, 0.5);
  CHECK_NOTHROW(validate_pmf(good));
}

}  // TEST_SUITE

}  // namespace
