// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "revert/clock.hpp"
#include "revert/integral.hpp"
#include "revert/laws.hpp"
#include "revert/nonuniform.hpp"
#include "revert/pmf.hpp"

namespace {

using namespace revert;

TEST_SUITE("nonuniform") {

TEST_CASE("reversion probabilities are prefix-normalised weights") {
  const auto uniform = reversion_probabilities_exact(ReversionLaw::uniform(), 4);
  REQUIRE(uniform.size() == 4);
  CHECK(uniform[0] == Rational(1));
  CHECK(uniform[1] == Rational(1, 2));
  CHECK(uniform[2] == Rational(1, 3));
  CHECK(uniform[3] == Rational(1, 4));

  const auto ramp = reversion_probabilities_exact(ReversionLaw::explicit_weights({1, 2, 3}), 3);
  REQUIRE(ramp.size() == 3);
  CHECK(ramp[0] == Rational(1));
  CHECK(ramp[1] == Rational(2, 3));
  CHECK(ramp[2] == Rational(1, 2));
}

TEST_CASE("ramp weights at n = 4") {
  const ReversionLaw law = ReversionLaw::explicit_weights({1, 2, 3});
  const RationalPmf pmf = weighted_clock_pmf_exact(law, 4);
  CHECK(pmf.at(1) == Rational(1, 6));
  CHECK(pmf.at(2) == Rational(1, 2));
  CHECK(pmf.at(3) == Rational(1, 3));
  const auto [mean, variance] = weighted_clock_moments_exact(law, 4);
  CHECK(mean == Rational(13, 6));
  CHECK(variance == Rational(17, 36));
  CHECK(weighted_martingale_variance_exact(law, 3) == Rational(1, 18));
}

TEST_CASE("uniform weights reduce to the plain clock") {
  const ReversionLaw uniform = ReversionLaw::uniform();
  for (std::int64_t n = 1; n <= 8; ++n) {
    CHECK(weighted_clock_pmf_exact(uniform, n) == clock_pmf_exact(n));
  }
  for (std::int64_t n = 2; n <= 12; ++n) {
    CHECK(weighted_martingale_variance_exact(uniform, n) ==
          martingale_variance_exact(n).second);
  }
}

TEST_CASE("power-law pmf is a Bernoulli product") {
  const ReversionLaw law = ReversionLaw::power_law(-1.0);
  const auto probabilities = reversion_probabilities_exact(law, 6);
  RationalPmf product = RationalPmf::point_mass(0);
  for (std::size_t k = 0; k + 1 < probabilities.size(); ++k) {
    product.multiply_bernoulli(probabilities[k]);
  }
  CHECK(product == weighted_clock_pmf_exact(law, 6));
}

TEST_CASE("martingale variance routes agree") {
  for (const auto& law : {ReversionLaw::uniform(), ReversionLaw::power_law(-1.0)}) {
    const double direct = weighted_martingale_variance(law, 30);
    const double via_j = weighted_martingale_variance_via_j(law, 30);
    const double exact = to_double(weighted_martingale_variance_exact(law, 30));
    CHECK(direct == doctest::Approx(exact).epsilon(1e-12));
    CHECK(via_j == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("martingale variance is monotone and bounded") {
  double previous = 0.0;
  for (std::int64_t n = 2; n <= 500; n += 7) {
    const double variance = weighted_martingale_variance(ReversionLaw::uniform(), n);
    CHECK(variance >= previous);
    CHECK(variance < 0.3551);
    previous = variance;
  }
}

TEST_CASE("condition sum grows slowly and stays summable") {
  const ReversionLaw uniform = ReversionLaw::uniform();
  const double at_100 = martingale_condition_sum(uniform, 100);
  const double at_10000 = martingale_condition_sum(uniform, 10000);
  CHECK(at_100 > 0.0);
  CHECK(at_10000 > at_100);
  CHECK(at_10000 < 2.0);
}

TEST_CASE("lyapunov ratio decays for fast-growing weights") {
  for (const double beta : {0.0, 1.0}) {
    const ReversionLaw law = beta == 0.0 ? ReversionLaw::uniform()
                                         : ReversionLaw::power_law(beta);
    const LyapunovDiagnostic small = lyapunov_diagnostic(law, 100);
    const LyapunovDiagnostic large = lyapunov_diagnostic(law, 1000);
    CHECK(small.rho > 0.0);
    CHECK(large.ratio < small.ratio);
  }
}

TEST_CASE("slowly growing weights keep the clock mean almost flat") {
  const ReversionLaw law = ReversionLaw::power_law(-1.0);
  const double gap = weighted_clock_moments(law, 10000).mean -
                     weighted_clock_moments(law, 1000).mean;
  CHECK(gap > 0.0);
  CHECK(gap < 1.0);
}

TEST_CASE("exact mode rejects non-rational weights") {
  CHECK_THROWS_AS(weighted_clock_pmf_exact(ReversionLaw::power_law(0.5), 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_clock_pmf_exact(ReversionLaw::occasional(0.5), 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_clock_pmf_exact(ReversionLaw::uniform(), kExactPmfLimit + 1),
                  std::length_error);
}

TEST_CASE("weight laws validate their parameters") {
  CHECK_THROWS_AS(ReversionLaw::explicit_weights({}), std::invalid_argument);
  CHECK_THROWS_AS(ReversionLaw::explicit_weights({1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(ReversionLaw::occasional(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ReversionLaw::occasional(1.5), std::invalid_argument);
  // Explicit weights must cover the requested horizon.
  CHECK_THROWS_AS(weighted_clock_pmf_exact(ReversionLaw::explicit_weights({1, 2}), 5),
                  std::out_of_range);
}

}  // TEST_SUITE

}  // namespace
