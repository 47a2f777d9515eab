// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"

#include "revert/clock.hpp"
#include "revert/laws.hpp"
#include "revert/numeric.hpp"
#include "revert/occasional.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"
#include "revert/suites.hpp"
#include "revert/verify.hpp"
#include "revert/walk.hpp"

namespace {

using namespace revert;

TEST_SUITE("verify") {

TEST_CASE("clock enumeration matches the closed forms") {
  CHECK(verify::enumerate_clock(5, ReversionLaw::uniform()) == clock_pmf_exact(5));
  CHECK(verify::enumerate_clock(5, ReversionLaw::occasional(0.5)) ==
        occasional_pmf_exact(5, 0.5));
  CHECK_THROWS_AS(verify::enumerate_clock(verify::kEnumerateClockLimit + 1,
                                          ReversionLaw::uniform()),
                  std::length_error);
}

TEST_CASE("walk enumeration marginals") {
  const verify::WalkEnumeration oracle =
      verify::enumerate_walk(4, StepLaw::rademacher(0.5), ReversionLaw::uniform());
  CHECK(oracle.clock_marginal() == clock_pmf_exact(4));
  CHECK(oracle.walk_marginal() == walk_pmf_simple_exact(4, 0.5));

  RationalPmf step;
  step.add(-1, Rational(1, 2));
  step.add(1, Rational(1, 2));
  CHECK(oracle.conditional_walk(2) == step.convolve(step));
}

TEST_CASE("ks statistic handles degenerate inputs") {
  const Pmf point = Pmf::point_mass(0);
  CHECK(verify::ks_statistic(point, 0.0, 1.0) == doctest::Approx(0.5));
  // sigma = 0 compares against a unit step carrying half its mass at the mean.
  CHECK(verify::ks_statistic(point, 0.0, 0.0) == doctest::Approx(0.5));
  CHECK(verify::ks_statistic(point, 5.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("tv distance extremes") {
  const Pmf a = Pmf::point_mass(0);
  const Pmf b = Pmf::point_mass(1);
  CHECK(verify::tv_distance(a, a) == doctest::Approx(0.0));
  CHECK(verify::tv_distance(a, b) == doctest::Approx(1.0));
  RationalPmf half;
  half.add(0, Rational(1, 2));
  half.add(1, Rational(1, 2));
  CHECK(verify::tv_distance(half, RationalPmf::point_mass(0)) == Rational(1, 2));
}

TEST_CASE("chi square pools sparse cells") {
  Pmf expected;
  expected.add(0, 0.495);
  expected.add(1, 0.5);
  expected.add(2, 0.003);
  expected.add(3, 0.002);
  std::map<std::int64_t, std::int64_t> counts{{0, 495}, {1, 500}, {2, 3}, {3, 2}};
  const verify::ChiSquareResult result = verify::chi_square(counts, expected);
  // The two rare cells merge, leaving three cells and two degrees of freedom.
  CHECK(result.dof == 2);
  CHECK(result.statistic < 1.0);
  CHECK_THROWS_AS(verify::chi_square({{0, 100}}, Pmf::point_mass(0)), std::invalid_argument);
}

TEST_CASE("chi square critical values") {
  CHECK(verify::chi_square_critical(1, 0.95) == doctest::Approx(3.8415).epsilon(1e-4));
  CHECK(verify::chi_square_critical(10, 0.99) == doctest::Approx(23.2093).epsilon(1e-4));
}

TEST_CASE("law moments of a rational two-point law") {
  const std::map<Rational, Rational> law{{Rational(-1, 6), Rational(1, 2)},
                                         {Rational(1, 6), Rational(1, 2)}};
  const auto [mean, variance] = verify::law_moments(law);
  CHECK(mean == Rational(0));
  CHECK(variance == Rational(1, 36));
}

TEST_CASE("suite registry") {
  CHECK(verify::suite_names().size() == 5);
  CHECK_THROWS_AS(verify::run_suite("bogus"), std::invalid_argument);
}

}  // TEST_SUITE

}  // namespace
