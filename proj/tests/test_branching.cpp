// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "revert/branching.hpp"
#include "revert/random.hpp"
#include "revert/rational.hpp"

namespace {

using namespace revert;

OffspringLaw critical_law() { return OffspringLaw::from_atoms({{0, 0.5}, {2, 0.5}}); }
OffspringLaw affine_law() { return OffspringLaw::from_atoms({{0, 0.75}, {1, 0.25}}); }

TEST_SUITE("branching") {

TEST_CASE("offspring iteration fixed points") {
  const OffspringLaw law = critical_law();
  CHECK(law.mean() == doctest::Approx(1.0));
  CHECK(law.max_count() == 2);
  CHECK(gw_iterate(law, 1, 0.0) == doctest::Approx(0.5));
  CHECK(gw_iterate(law, 2, 0.0) == doctest::Approx(0.625));
  CHECK(gw_iterate_exact(law, 2, Rational(0)) == Rational(5, 8));
  CHECK(gw_iterate(law, 3, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("frozen extinction values") {
  CHECK(extinction_probability_exact(3, critical_law()) == Rational(9, 16));
  CHECK(extinction_probability(3, critical_law()) == doctest::Approx(9.0 / 16.0));
  CHECK(extinction_probability_exact(4, affine_law()) == Rational(113, 128));
}

TEST_CASE("pgf is a proper mixture") {
  for (const auto& law : {critical_law(), affine_law()}) {
    for (std::int64_t n = 1; n <= 10; ++n) {
      CHECK(reverting_gw_pgf(n, law, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(reverting_gw_pgf_exact(n, law, Rational(1)) == Rational(1));
    }
    double previous = reverting_gw_pgf(2, law, 0.0);
    for (std::int64_t n = 3; n <= 12; ++n) {
      const double extinct = reverting_gw_pgf(n, law, 0.0);
      CHECK(extinct >= previous);
      previous = extinct;
    }
  }
}

TEST_CASE("averaging recursion holds") {
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
  for (const auto& law : {critical_law(), affine_law()}) {
    for (std::int64_t n = 1; n <= 8; ++n) {
      CHECK(verify_H_recursion(n, law, grid) < 1e-10);
    }
  }
  CHECK_THROWS_AS(verify_H_recursion(kRecursionCheckLimit + 1, critical_law(), grid),
                  std::length_error);
}

TEST_CASE("polynomial iterates match point evaluation") {
  const OffspringLaw law = critical_law();
  for (std::int64_t t = 0; t <= 5; ++t) {
    const GwPolynomial poly = gw_iterate_poly(law, t, 16);
    for (const double s : {0.0, 0.3, 0.8}) {
      const double gap = std::abs(poly.evaluate(s) - gw_iterate(law, t, s));
      CHECK(gap <= poly.truncation_error + 1e-12);
    }
  }
  CHECK_THROWS_AS(gw_iterate_poly(critical_law(), 3, kDegreeCap + 1), std::length_error);
}

TEST_CASE("offspring laws validate their atoms") {
  CHECK_THROWS_AS(OffspringLaw::from_atoms({}), std::invalid_argument);
  CHECK_THROWS_AS(OffspringLaw::from_atoms({{0, 0.5}, {1, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(OffspringLaw::from_atoms({{-1, 0.5}, {1, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(OffspringLaw::from_atoms({{1, 0.5}, {1, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(OffspringLaw::from_atoms({{0, -0.25}, {1, 1.25}}), std::invalid_argument);
}

TEST_CASE("deterministic offspring laws are degenerate") {
  RandomStream rng(501, 0);
  const OffspringLaw stay = OffspringLaw::deterministic(1);
  const GwTrajectory fixed = simulate_reverting_gw(25, stay, rng);
  for (std::int64_t k = 1; k <= 25; ++k) CHECK(fixed.X(k) == 1);
  CHECK_FALSE(fixed.capped);
  CHECK(extinction_probability(6, stay) == doctest::Approx(0.0));

  const OffspringLaw die = OffspringLaw::deterministic(0);
  CHECK(extinction_probability(6, die) == doctest::Approx(1.0));
  const GwTrajectory dead = simulate_reverting_gw(6, die, rng);
  CHECK(dead.X(2) == 0);
  CHECK(dead.X(6) == 0);
}

TEST_CASE("population cap interrupts growth") {
  RandomStream rng(502, 0);
  const GwTrajectory trajectory = simulate_reverting_gw(10, OffspringLaw::deterministic(2), rng, 1);
  CHECK(trajectory.capped);
  CHECK(trajectory.values.back() > 1);
}

TEST_CASE("simulation stays consistent with its trajectory record") {
  RandomStream rng(503, 0);
  for (int repeat = 0; repeat < 100; ++repeat) {
    const GwTrajectory trajectory = simulate_reverting_gw(15, critical_law(), rng);
    REQUIRE(trajectory.n() == 15);
    CHECK(trajectory.X(1) == 1);
    for (std::size_t i = 0; i < trajectory.reversions.size(); ++i) {
      const std::int64_t target = trajectory.reversions[i];
      CHECK(target >= 1);
      CHECK(target <= static_cast<std::int64_t>(i + 1));
      // An empty parent generation can only produce an empty child one.
      if (trajectory.values[static_cast<std::size_t>(target - 1)] == 0) {
        CHECK(trajectory.values[i + 1] == 0);
      }
    }
  }
}

}  // TEST_SUITE

}  // namespace
