// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "revert/branching.hpp"
#include "revert/clock.hpp"
#include "revert/integral.hpp"
#include "revert/laws.hpp"
#include "revert/nonuniform.hpp"
#include "revert/numeric.hpp"
#include "revert/occasional.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"
#include "revert/verify.hpp"
#include "revert/walk.hpp"

namespace revert::verify {
namespace {

// Fixed seed: the suites are Monte Carlo in places but fully reproducible.
constexpr std::uint64_t kSuiteSeed = 20260825;

// Statistical gates use the 1 - 1e-5 quantile: loose enough that a correct
// build passes deterministically, tight enough to catch real bias.
constexpr double kChiQuantile = 0.99999;

std::string num(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", x);
  return buffer;
}

// Runs one check; an escaping exception is a failure, not a crash.
void run_check(std::vector<CheckResult>& out, std::string name,
               const std::function<std::string()>& body) {
  CheckResult result;
  result.name = std::move(name);
  try {
    result.detail = body();
    result.passed = result.detail.empty();
  } catch (const std::exception& error) {
    result.passed = false;
    result.detail = std::string("exception: ") + error.what();
  }
  out.push_back(std::move(result));
}

std::string chi_gate(const std::map<std::int64_t, std::int64_t>& counts, const Pmf& expected,
                     const std::string& label) {
  const ChiSquareResult r = chi_square(counts, expected);
  if (r.dof < 1) return "";
  const double critical = chi_square_critical(r.dof, kChiQuantile);
  if (r.statistic < critical) return "";
  return label + ": chi-square " + num(r.statistic) + " > " + num(critical) + " at dof " +
         std::to_string(r.dof);
}

std::string expect_equal(const RationalPmf& got, const RationalPmf& want,
                         const std::string& label) {
  if (got == want) return "";
  return label + ": exact pmfs differ (tv " + num(to_double(tv_distance(got, want))) + ")";
}

RationalPmf rademacher_pmf_exact(double p) {
  const Rational rp = rational_from_double(p);
  RationalPmf out;
  if (rp != 1) out.add(-1, Rational(1) - rp);
  if (rp != 0) out.add(1, rp);
  return out;
}

// ---------------------------------------------------------------------------
// clock suite (uniform clock plus the weighted generalisation)

void clock_suite(std::vector<CheckResult>& out) {
  run_check(out, "clock.pmf_matches_enumeration", []() -> std::string {
    for (std::int64_t n = 1; n <= kEnumerateClockLimit; ++n) {
      const auto oracle = enumerate_clock(n, ReversionLaw::uniform());
      if (auto err = expect_equal(clock_pmf_exact(n), oracle, "n=" + std::to_string(n));
          !err.empty()) {
        return err;
      }
    }
    return "";
  });

  run_check(out, "clock.pmf_matches_stirling_triangle", []() -> std::string {
    for (int n = 1; n <= 12; ++n) {
      const auto pmf = clock_pmf_exact(n + 1);
      const Rational scale = Rational(1) / Rational(factorial(n));
      for (int k = 1; k <= n; ++k) {
        if (pmf.at(k) != Rational(stirling_first(n, k)) * scale) {
          return "P(T_" + std::to_string(n + 1) + " = " + std::to_string(k) +
                 ") disagrees with the first-kind triangle";
        }
      }
      if (pmf.size() != static_cast<std::size_t>(n)) {
        return "support size mismatch at n=" + std::to_string(n + 1);
      }
    }
    return "";
  });

  run_check(out, "clock.stirling_row_sums", []() -> std::string {
    for (int n = 0; n <= 20; ++n) {
      BigInt row = 0;
      for (int k = 0; k <= n; ++k) row += stirling_first(n, k);
      if (row != factorial(n)) return "row " + std::to_string(n) + " does not sum to n!";
    }
    return "";
  });

  run_check(out, "clock.pmf_recurrence", []() -> std::string {
    // P(T_{n+1} = x) = n^{-1} sum_{k<=n} P(T_k = x - 1), exactly.
    for (std::int64_t n = 1; n <= 9; ++n) {
      const auto lhs = clock_pmf_exact(n + 1);
      RationalPmf rhs;
      for (std::int64_t k = 1; k <= n; ++k) {
        const auto term = clock_pmf_exact(k);
        for (const auto& [v, prob] : term.entries()) {
          rhs.add(v + 1, prob / n);
        }
      }
      if (auto err = expect_equal(lhs, rhs, "n=" + std::to_string(n)); !err.empty()) return err;
    }
    return "";
  });

  run_check(out, "clock.moments_match_pmf", []() -> std::string {
    for (std::int64_t n = 1; n <= kExactPmfLimit; ++n) {
      const auto pmf = clock_pmf_exact(n);
      const auto [mean, variance] = clock_moments_exact(n);
      if (pmf.mean() != mean || pmf.variance() != variance) {
        return "pmf moments disagree with harmonic sums at n=" + std::to_string(n);
      }
    }
    if (clock_moments_exact(4) != std::pair<Rational, Rational>{Rational(11, 6), Rational(17, 36)}) {
      return "clock moments at n=4 are not (11/6, 17/36)";
    }
    return "";
  });

  run_check(out, "clock.float_pmf_matches_exact", []() -> std::string {
    for (std::int64_t n : {std::int64_t{5}, kExactPmfLimit}) {
      const Pmf rounded = pmf_to_double(clock_pmf_exact(n));
      const Pmf computed = clock_pmf(n, 1e-14);
      if (computed.truncated_mass() > 1e-12) return "excess truncated mass";
      if (tv_distance(rounded, computed) > 1e-12) {
        return "float pmf drifts from exact at n=" + std::to_string(n);
      }
    }
    return "";
  });

  run_check(out, "clock.simulation_routes_agree", []() -> std::string {
    constexpr int kSamples = 1'000'000;
    // n = 2 is a point mass, so there is nothing to test statistically.
    RandomStream degenerate_rng(kSuiteSeed, 99);
    for (int i = 0; i < 1000; ++i) {
      if (simulate_clock_recursive(2, degenerate_rng).T(2) != 1 ||
          simulate_clock_bernoulli(2, degenerate_rng) != 1) {
        return "T_2 is not identically 1";
      }
    }
    for (std::int64_t n = 3; n <= kEnumerateClockLimit; ++n) {
      const Pmf expected = pmf_to_double(clock_pmf_exact(n));
      RandomStream recursive_rng(kSuiteSeed, 100 + static_cast<std::uint64_t>(n));
      RandomStream bernoulli_rng(kSuiteSeed, 200 + static_cast<std::uint64_t>(n));
      std::map<std::int64_t, std::int64_t> recursive_counts;
      std::map<std::int64_t, std::int64_t> bernoulli_counts;
      for (int i = 0; i < kSamples; ++i) {
        ++recursive_counts[simulate_clock_recursive(n, recursive_rng).T(n)];
        ++bernoulli_counts[simulate_clock_bernoulli(n, bernoulli_rng)];
      }
      if (auto err = chi_gate(recursive_counts, expected, "recursive route n=" + std::to_string(n));
          !err.empty()) {
        return err;
      }
      if (auto err = chi_gate(bernoulli_counts, expected, "bernoulli route n=" + std::to_string(n));
          !err.empty()) {
        return err;
      }
    }
    return "";
  });

  run_check(out, "clock.backward_route_length", []() -> std::string {
    for (std::int64_t n : {std::int64_t{3}, std::int64_t{8}}) {
      const Pmf expected = pmf_to_double(clock_pmf_exact(n + 1));
      RandomStream rng(kSuiteSeed, 300 + static_cast<std::uint64_t>(n));
      std::map<std::int64_t, std::int64_t> counts;
      for (int i = 0; i < 500'000; ++i) {
        const auto times = backward_reversion_times(n, rng);
        if (times.back() != 1) return "backward sequence does not end at 1";
        if (!std::is_sorted(times.rbegin(), times.rend())) {
          return "backward sequence is not decreasing";
        }
        ++counts[static_cast<std::int64_t>(times.size())];
      }
      if (auto err = chi_gate(counts, expected, "length law n=" + std::to_string(n));
          !err.empty()) {
        return err;
      }
    }
    return "";
  });

  run_check(out, "clock.clt_diagnostic_decay", []() -> std::string {
    double previous = 2.0;
    for (std::int64_t n : {std::int64_t{100}, std::int64_t{1000}, std::int64_t{10000}}) {
      const auto diagnostic = clock_clt_diagnostic(n);
      if (diagnostic.truncated_mass > 1e-9) return "excess truncated mass";
      if (diagnostic.convention.empty()) return "missing convention metadata";
      if (!(diagnostic.ks < previous)) {
        return "KS distance fails to decrease at n=" + std::to_string(n);
      }
      previous = diagnostic.ks;
    }
    return "";
  });

  run_check(out, "clock.lyapunov_ratio_decay", []() -> std::string {
    double previous = 1e300;
    for (std::int64_t n : {std::int64_t{100}, std::int64_t{1000}, std::int64_t{10000}}) {
      const double variance = clock_moments(n).variance;
      const double ratio = clock_lyapunov_rho(n) / std::pow(variance, 1.5);
      if (!(ratio < previous)) return "Lyapunov ratio fails to decrease at n=" + std::to_string(n);
      previous = ratio;
    }
    return "";
  });

  run_check(out, "clock.weighted_pmf_matches_enumeration", []() -> std::string {
    const std::vector<ReversionLaw> laws = {ReversionLaw::power_law(1.0),
                                            ReversionLaw::power_law(-1.0)};
    for (const auto& law : laws) {
      for (std::int64_t n = 1; n <= kEnumerateClockLimit; ++n) {
        if (auto err = expect_equal(weighted_clock_pmf_exact(law, n), enumerate_clock(n, law),
                                    law.describe() + " n=" + std::to_string(n));
            !err.empty()) {
          return err;
        }
      }
    }
    const auto explicit_law = ReversionLaw::explicit_weights({1.0, 2.0, 3.0});
    for (std::int64_t n = 1; n <= 4; ++n) {
      if (auto err = expect_equal(weighted_clock_pmf_exact(explicit_law, n),
                                  enumerate_clock(n, explicit_law),
                                  "explicit n=" + std::to_string(n));
          !err.empty()) {
        return err;
      }
    }
    return "";
  });

  run_check(out, "clock.weighted_prefix_probabilities", []() -> std::string {
    const auto uniform = reversion_probabilities_exact(ReversionLaw::uniform(), 4);
    const std::vector<Rational> expected_uniform = {Rational(1), Rational(1, 2), Rational(1, 3),
                                                    Rational(1, 4)};
    if (uniform != expected_uniform) return "uniform success probabilities are not 1/k";
    const auto explicit_law = ReversionLaw::explicit_weights({1.0, 2.0, 3.0});
    const auto explicit_probs = reversion_probabilities_exact(explicit_law, 3);
    const std::vector<Rational> expected_explicit = {Rational(1), Rational(2, 3), Rational(1, 2)};
    if (explicit_probs != expected_explicit) {
      return "weights (1,2,3) do not give success probabilities (1, 2/3, 1/2)";
    }
    return "";
  });

  run_check(out, "clock.weighted_frozen_examples", []() -> std::string {
    const auto law = ReversionLaw::explicit_weights({1.0, 2.0, 3.0});
    RationalPmf expected;
    expected.add(1, Rational(1, 6));
    expected.add(2, Rational(1, 2));
    expected.add(3, Rational(1, 3));
    if (auto err = expect_equal(weighted_clock_pmf_exact(law, 4), expected, "pmf n=4");
        !err.empty()) {
      return err;
    }
    const auto [mean, variance] = weighted_clock_moments_exact(law, 4);
    if (mean != Rational(13, 6) || variance != Rational(17, 36)) {
      return "weighted moments at n=4 are not (13/6, 17/36)";
    }
    if (weighted_martingale_variance_exact(law, 3) != Rational(1, 18)) {
      return "weighted martingale variance at n=3 is not 1/18";
    }
    return "";
  });

  run_check(out, "clock.weighted_uniform_reduction", []() -> std::string {
    const auto uniform = ReversionLaw::uniform();
    for (std::int64_t n = 1; n <= kExactPmfLimit; ++n) {
      if (weighted_clock_pmf_exact(uniform, n) != clock_pmf_exact(n)) {
        return "uniform weights break the pmf reduction at n=" + std::to_string(n);
      }
    }
    for (std::int64_t n = 1; n <= 20; ++n) {
      if (weighted_clock_moments_exact(uniform, n) != clock_moments_exact(n)) {
        return "uniform weights break the moment reduction at n=" + std::to_string(n);
      }
      if (weighted_martingale_variance_exact(uniform, n) != martingale_variance_exact(n).second) {
        return "uniform weights break the martingale variance reduction at n=" + std::to_string(n);
      }
    }
    return "";
  });

  run_check(out, "clock.weighted_variance_routes", []() -> std::string {
    const std::vector<ReversionLaw> laws = {ReversionLaw::uniform(), ReversionLaw::power_law(1.0),
                                            ReversionLaw::power_law(-1.0)};
    for (const auto& law : laws) {
      const double direct = weighted_martingale_variance(law, 50);
      const double via_j = weighted_martingale_variance_via_j(law, 50);
      const double exact = to_double(weighted_martingale_variance_exact(law, 50));
      if (std::abs(direct - via_j) > 1e-12 || std::abs(direct - exact) > 1e-12) {
        return law.describe() + ": variance routes disagree (" + num(direct) + ", " +
               num(via_j) + ", " + num(exact) + ")";
      }
    }
    return "";
  });

  run_check(out, "clock.weighted_variance_monotone_bounded", []() -> std::string {
    for (const auto& law : {ReversionLaw::uniform(), ReversionLaw::power_law(-1.0)}) {
      double previous = 0.0;
      double supremum = 0.0;
      for (std::int64_t n = 1; n <= 2000; ++n) {
        const double v = weighted_martingale_variance(law, n);
        if (v < previous - 1e-15) {
          return law.describe() + ": variance decreases at n=" + std::to_string(n);
        }
        previous = v;
        supremum = std::max(supremum, v);
      }
      if (supremum > previous + 1e-12) return law.describe() + ": variance is not bounded by its tail";
    }
    return "";
  });

  run_check(out, "clock.weighted_condition_tail", []() -> std::string {
    const auto uniform = ReversionLaw::uniform();
    const double tail =
        martingale_condition_sum(uniform, 10'000'000) - martingale_condition_sum(uniform, 10'000);
    if (!(tail > 0.0) || tail >= 1e-3) {
      return "uniform condition tail beyond 10^4 is " + num(tail) + ", want (0, 1e-3)";
    }
    return "";
  });

  run_check(out, "clock.weighted_slow_reversion_mean_gap", []() -> std::string {
    const auto law = ReversionLaw::power_law(-1.0);
    const double gap =
        weighted_clock_moments(law, 1'000'000).mean - weighted_clock_moments(law, 1'000).mean;
    if (!(gap > 0.0) || gap >= 1.0) {
      return "power(-1) mean gap m(10^6) - m(10^3) is " + num(gap) + ", want (0, 1)";
    }
    return "";
  });
}

// ---------------------------------------------------------------------------
// walk suite

void walk_suite(std::vector<CheckResult>& out) {
  run_check(out, "walk.pmf_matches_enumeration", []() -> std::string {
    for (const double p : {0.5, 0.25}) {
      for (std::int64_t n = 2; n <= kEnumerateWalkLimit; ++n) {
        const auto oracle = enumerate_walk(n, StepLaw::rademacher(p), ReversionLaw::uniform());
        if (auto err = expect_equal(walk_pmf_simple_exact(n, p), oracle.walk_marginal(),
                                    "p=" + num(p) + " n=" + std::to_string(n));
            !err.empty()) {
          return err;
        }
      }
    }
    return "";
  });

  run_check(out, "walk.frozen_pmfs", []() -> std::string {
    RationalPmf expected3;
    expected3.add(-2, Rational(1, 8));
    expected3.add(-1, Rational(1, 4));
    expected3.add(0, Rational(1, 4));
    expected3.add(1, Rational(1, 4));
    expected3.add(2, Rational(1, 8));
    if (auto err = expect_equal(walk_pmf_simple_exact(3, 0.5), expected3, "n=3"); !err.empty()) {
      return err;
    }
    RationalPmf expected4;
    expected4.add(-3, Rational(1, 48));
    expected4.add(-2, Rational(1, 8));
    expected4.add(-1, Rational(11, 48));
    expected4.add(0, Rational(1, 4));
    expected4.add(1, Rational(11, 48));
    expected4.add(2, Rational(1, 8));
    expected4.add(3, Rational(1, 48));
    return expect_equal(walk_pmf_simple_exact(4, 0.5), expected4, "n=4");
  });

  run_check(out, "walk.conditional_law_is_iid_sum", []() -> std::string {
    for (const double p : {0.5, 0.25}) {
      const RationalPmf step = rademacher_pmf_exact(p);
      for (std::int64_t n = 2; n <= 6; ++n) {
        const auto oracle = enumerate_walk(n, StepLaw::rademacher(p), ReversionLaw::uniform());
        const auto clock_marginal = oracle.clock_marginal();
        for (const auto& [t, prob] : clock_marginal.entries()) {
          RationalPmf convolution = RationalPmf::point_mass(0);
          for (std::int64_t i = 0; i < t; ++i) convolution = convolution.convolve(step);
          if (auto err = expect_equal(oracle.conditional_walk(t), convolution,
                                      "n=" + std::to_string(n) + " t=" + std::to_string(t));
              !err.empty()) {
            return err;
          }
        }
      }
    }
    return "";
  });

  run_check(out, "walk.exact_mass_is_one", []() -> std::string {
    for (const double p : {0.5, 0.25, 0.3}) {
      for (std::int64_t n = 2; n <= kExactPmfLimit; ++n) {
        if (walk_pmf_simple_exact(n, p).mass() != 1) {
          return "mass != 1 at p=" + num(p) + " n=" + std::to_string(n);
        }
      }
    }
    return "";
  });

  run_check(out, "walk.symmetry_at_half", []() -> std::string {
    for (std::int64_t n = 2; n <= 12; ++n) {
      const auto pmf = walk_pmf_simple_exact(n, 0.5);
      for (const auto& [v, prob] : pmf.entries()) {
        if (pmf.at(-v) != prob) return "asymmetry at n=" + std::to_string(n);
      }
    }
    return "";
  });

  run_check(out, "walk.moments_match_subordination", []() -> std::string {
    for (const double p : {0.5, 0.3}) {
      const auto steps = StepLaw::rademacher(p);
      for (std::int64_t n = 2; n <= 12; ++n) {
        const auto pmf = pmf_to_double(walk_pmf_simple_exact(n, p));
        const auto [mean, variance] = walk_moments(n, steps);
        if (std::abs(pmf.mean() - mean) > 1e-12 || std::abs(pmf.variance() - variance) > 1e-12) {
          return "pmf moments disagree with the compound formula at p=" + num(p) +
                 " n=" + std::to_string(n);
        }
      }
    }
    const auto wald4 = walk_moments(4, StepLaw::rademacher(0.5));
    if (std::abs(wald4.first) > 1e-15 || std::abs(wald4.second - 11.0 / 6.0) > 1e-15) {
      return "n=4 Rademacher(1/2) moments are not (0, 11/6)";
    }
    const auto wald3 = walk_moments(3, StepLaw::rademacher(1.0));
    if (std::abs(wald3.first - 1.5) > 1e-15 || std::abs(wald3.second - 0.25) > 1e-15) {
      return "n=3 Rademacher(1) moments are not (3/2, 1/4)";
    }
    return "";
  });

  run_check(out, "walk.mixture_matches_exact", []() -> std::string {
    for (const double p : {0.5, 0.3}) {
      for (std::int64_t n = 2; n <= 12; ++n) {
        const Pmf mixture = walk_pmf_mixture(n, p, 1e-15);
        const Pmf exact = pmf_to_double(walk_pmf_simple_exact(n, p));
        if (tv_distance(mixture, exact) > 1e-12) {
          return "mixture pmf drifts from exact at p=" + num(p) + " n=" + std::to_string(n);
        }
      }
    }
    return "";
  });

  run_check(out, "walk.characteristic_function_matches_pmf", []() -> std::string {
    for (const double p : {0.5, 0.3}) {
      for (std::int64_t n : {std::int64_t{2}, std::int64_t{7}, std::int64_t{12}}) {
        const Pmf pmf = pmf_to_double(walk_pmf_simple_exact(n, p));
        for (const double theta : {0.0, 0.3, 1.1, 2.7}) {
          std::complex<double> direct(0.0, 0.0);
          for (const auto& [v, prob] : pmf.entries()) {
            direct += prob * std::polar(1.0, theta * static_cast<double>(v));
          }
          const auto product = walk_char_function(n, theta, rademacher_cf(p));
          if (std::abs(product - direct) > 1e-12) {
            return "characteristic function mismatch at p=" + num(p) + " n=" + std::to_string(n) +
                   " theta=" + num(theta);
          }
        }
      }
    }
    return "";
  });

  run_check(out, "walk.simulation_routes_agree", []() -> std::string {
    constexpr std::int64_t kN = 50;
    constexpr int kSamples = 1'000'000;
    const Pmf expected = walk_pmf_mixture(kN, 0.5, 1e-12);
    const auto steps = StepLaw::rademacher(0.5);
    RandomStream recursive_rng(kSuiteSeed, 400);
    RandomStream subordinated_rng(kSuiteSeed, 401);
    RandomStream inhomogeneous_rng(kSuiteSeed, 402);
    std::map<std::int64_t, std::int64_t> recursive_counts;
    std::map<std::int64_t, std::int64_t> subordinated_counts;
    std::map<std::int64_t, std::int64_t> inhomogeneous_counts;
    for (int i = 0; i < kSamples; ++i) {
      ++recursive_counts[std::llround(
          simulate_walk_recursive(kN, steps, ReversionLaw::uniform(), recursive_rng).R(kN))];
      ++subordinated_counts[std::llround(simulate_walk_subordinated(kN, steps, subordinated_rng))];
    }
    for (int i = 0; i < 300'000; ++i) {
      ++inhomogeneous_counts[std::llround(simulate_walk_inhomogeneous(kN, 0.5, inhomogeneous_rng))];
    }
    if (auto err = chi_gate(recursive_counts, expected, "recursive route"); !err.empty()) {
      return err;
    }
    if (auto err = chi_gate(subordinated_counts, expected, "subordinated route"); !err.empty()) {
      return err;
    }
    return chi_gate(inhomogeneous_counts, expected, "inhomogeneous route");
  });

  run_check(out, "walk.coupling_replay", []() -> std::string {
    const auto real_steps =
        StepLaw::general([](RandomStream& rng) { return rng.uniform01() - 0.3; }, 0.2, 1.0 / 12.0);
    const std::vector<StepLaw> laws = {
        StepLaw::rademacher(0.3),
        StepLaw::finite_discrete({{-2, 0.2}, {0, 0.5}, {3, 0.3}}),
        real_steps,
    };
    RandomStream rng(kSuiteSeed, 500);
    for (const auto& steps : laws) {
      for (int rep = 0; rep < 200; ++rep) {
        const auto trajectory = simulate_walk_recursive(120, steps, ReversionLaw::uniform(), rng);
        if (!walk_coupling_replay(trajectory)) return "replay failed to reconstruct the walk";
      }
    }
    return "";
  });

  run_check(out, "walk.clt_ladder", []() -> std::string {
    double previous = 2.0;
    for (std::int64_t n : {std::int64_t{100}, std::int64_t{1000}, std::int64_t{10000}}) {
      const Pmf pmf = walk_pmf_mixture(n, 0.5, 1e-13);
      const auto [mean, variance] = walk_moments(n, StepLaw::rademacher(0.5));
      const double ks = ks_statistic(pmf, mean, std::sqrt(variance));
      if (!(ks < previous)) return "walk KS distance fails to decrease at n=" + std::to_string(n);
      previous = ks;
    }
    return "";
  });
}

// ---------------------------------------------------------------------------
// integral suite

void integral_suite(std::vector<CheckResult>& out) {
  run_check(out, "integral.variance_matches_enumeration", []() -> std::string {
    for (std::int64_t n = 1; n <= kEnumerateIntegratedLimit; ++n) {
      const auto oracle = enumerate_integrated(n);
      if (oracle.e_m != 0) return "E M_n is not 0 at n=" + std::to_string(n);
      if (oracle.var_m != martingale_variance_exact(n).second) {
        return "Var M_n disagrees with the Q-sum at n=" + std::to_string(n);
      }
    }
    return "";
  });

  run_check(out, "integral.frozen_values", []() -> std::string {
    const auto [q3, var3] = martingale_variance_exact(3);
    if (q3 != Rational(1, 48)) return "Q_3 is not 1/48";
    if (var3 != Rational(1, 36)) return "Var M_3 is not 1/36";
    if (martingale_variance_exact(2).second != 0) return "Var M_2 is not 0";
    const auto oracle = enumerate_integrated(3);
    const std::map<Rational, Rational> expected_law = {{Rational(-1, 6), Rational(1, 2)},
                                                       {Rational(1, 6), Rational(1, 2)}};
    if (oracle.m_law != expected_law) return "M_3 law is not uniform on {-1/6, 1/6}";
    if (clock_covariance_exact(3, 1) != Rational(1, 12)) return "Cov(T_3, T_4) is not 1/12";
    return "";
  });

  run_check(out, "integral.var_s_recursion", []() -> std::string {
    // Var S_n = Var T_n + ((n+1)/(n-1)) Var S_{n-1}, exactly.
    for (std::int64_t n = 3; n <= kEnumerateIntegratedLimit; ++n) {
      const Rational var_s = enumerate_integrated(n).s_marginal.variance();
      const Rational var_prev = enumerate_integrated(n - 1).s_marginal.variance();
      const Rational var_t = clock_moments_exact(n).second;
      if (var_s != var_t + Rational(n + 1, n - 1) * var_prev) {
        return "Var S recursion fails at n=" + std::to_string(n);
      }
    }
    return "";
  });

  run_check(out, "integral.covariance_is_lag_free", []() -> std::string {
    for (std::int64_t n : {std::int64_t{3}, std::int64_t{6}}) {
      const Rational base = clock_covariance_exact(n, 1);
      for (std::int64_t m : {std::int64_t{2}, std::int64_t{5}}) {
        if (clock_covariance_exact(n, m) != base) {
          return "covariance depends on the lag at n=" + std::to_string(n);
        }
      }
    }
    for (std::int64_t n = 2; n <= 6; ++n) {
      for (std::int64_t m = 1; m <= 2; ++m) {
        if (enumerate_clock_covariance(n, m) != clock_covariance_exact(n, m)) {
          return "covariance disagrees with enumeration at n=" + std::to_string(n) +
                 " m=" + std::to_string(m);
        }
      }
    }
    return "";
  });

  run_check(out, "integral.variance_limit", []() -> std::string {
    const auto big = martingale_variance(100'000);
    const double limit = 2.0 - std::numbers::pi * std::numbers::pi / 6.0;
    if (std::abs(big.limit - limit) > 1e-15) return "reported limit is not 2 - pi^2/6";
    const double gap = std::abs(big.variance - limit);
    if (gap >= 5e-4) return "Var M_1e5 sits " + num(gap) + " from the limit, want < 5e-4";
    return "";
  });

  run_check(out, "integral.float_variance_matches_exact", []() -> std::string {
    for (std::int64_t n = 1; n <= 30; ++n) {
      const double exact = to_double(martingale_variance_exact(n).second);
      if (std::abs(martingale_variance(n).variance - exact) > 1e-13) {
        return "float variance drifts from exact at n=" + std::to_string(n);
      }
    }
    return "";
  });

  run_check(out, "integral.trace_bookkeeping", []() -> std::string {
    RandomStream rng(kSuiteSeed, 600);
    for (int rep = 0; rep < 500; ++rep) {
      const auto trajectory = simulate_clock_recursive(300, rng);
      const auto trace = integrated_trace(trajectory);
      if (trace.size() != 300) return "trace length mismatch";
      std::int64_t running = 0;
      for (std::size_t i = 0; i < trace.size(); ++i) {
        running += trajectory.values[i];
        if (trace[i].s != running) return "S_n bookkeeping broken";
        const double recomputed =
            (static_cast<double>(trace[i].s) - trace[i].expected_s) / static_cast<double>(i + 1);
        if (std::abs(trace[i].m - recomputed) > 1e-12) return "M_n bookkeeping broken";
      }
      if (trace.front().m != 0.0) return "M_1 is not 0";
    }
    return "";
  });

  run_check(out, "integral.hoeffding_increments", []() -> std::string {
    RandomStream rng(kSuiteSeed, 601);
    double worst = 0.0;
    for (int rep = 0; rep < 10'000; ++rep) {
      const auto trace = integrated_trace(simulate_clock_recursive(200, rng));
      worst = std::max(worst, hoeffding_check(trace));
    }
    if (worst > 1.5) return "martingale increment " + num(worst) + " exceeds 3/2";
    return "";
  });

  run_check(out, "integral.azuma_bound_shape", []() -> std::string {
    if (azuma_tail_bound(1, 1.0) != 0.0) return "n=1 bound is not 0";
    const double expected = 2.0 * std::exp(-25.0 / 18.0);
    if (std::abs(azuma_tail_bound(5, 5.0) - expected) > 1e-15) {
      return "bound formula mismatch at n=5, x=5";
    }
    double previous = 2.0;
    for (const double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double bound = azuma_tail_bound(50, x);
      if (bound > previous || bound > 1.0 || bound < 0.0) return "bound is not a decreasing probability";
      previous = bound;
    }
    return "";
  });

  run_check(out, "integral.martingale_increments_centered", []() -> std::string {
    for (const std::int64_t n : {std::int64_t{10}, std::int64_t{50}, std::int64_t{200}}) {
      RandomStream rng(kSuiteSeed, 700 + static_cast<std::uint64_t>(n));
      std::vector<std::pair<double, double>> pairs;
      pairs.reserve(100'000);
      for (int rep = 0; rep < 100'000; ++rep) {
        const auto trace = integrated_trace(simulate_clock_recursive(n + 1, rng));
        pairs.emplace_back(trace[static_cast<std::size_t>(n - 1)].m,
                           trace[static_cast<std::size_t>(n)].m);
      }
      const auto result = martingale_increment_test(std::move(pairs), 10);
      if (result.max_abs_z > 4.0) {
        return "binned increment mean at n=" + std::to_string(n) + " sits " +
               num(result.max_abs_z) + " standard errors from 0";
      }
    }
    return "";
  });
}

// ---------------------------------------------------------------------------
// occasional suite

void occasional_suite(std::vector<CheckResult>& out) {
  run_check(out, "occasional.pmf_matches_enumeration", []() -> std::string {
    for (const double q : {0.25, 0.5, 0.75}) {
      for (std::int64_t n = 1; n <= 8; ++n) {
        const auto oracle = enumerate_clock(n, ReversionLaw::occasional(q));
        if (auto err = expect_equal(occasional_pmf_exact(n, q), oracle,
                                    "q=" + num(q) + " n=" + std::to_string(n));
            !err.empty()) {
          return err;
        }
      }
    }
    return "";
  });

  run_check(out, "occasional.backward_chain_matches_pmf", []() -> std::string {
    for (const double q : {0.25, 0.5, 0.75}) {
      for (std::int64_t n = 1; n <= 7; ++n) {
        if (auto err = expect_equal(backward_chain_distribution(n, q),
                                    occasional_pmf_exact(n + 1, q),
                                    "q=" + num(q) + " n=" + std::to_string(n));
            !err.empty()) {
          return err;
        }
      }
    }
    return "";
  });

  run_check(out, "occasional.frozen_examples", []() -> std::string {
    RationalPmf expected;
    expected.add(1, Rational(1, 4));
    expected.add(2, Rational(3, 4));
    if (auto err = expect_equal(occasional_pmf_exact(3, 0.5), expected, "pmf n=3"); !err.empty()) {
      return err;
    }
    const auto [m3, w3] = occasional_moments_exact(3, 0.5);
    if (m3 != Rational(7, 4)) return "m_3 at q=1/2 is not 7/4";
    if (w3 != Rational(13, 4)) return "w_3 at q=1/2 is not 13/4";
    const auto [m2, w2] = occasional_moments_exact(2, 0.5);
    if (m2 != 1 || w2 != 1) return "m_2 = w_2 = 1 fails";
    return "";
  });

  run_check(out, "occasional.moments_match_pmf", []() -> std::string {
    for (const double q : {0.25, 0.5, 0.75}) {
      for (std::int64_t n = 1; n <= kExactPmfLimit; ++n) {
        const auto pmf = occasional_pmf_exact(n, q);
        const auto [mean, second] = occasional_moments_exact(n, q);
        if (pmf.mean() != mean || pmf.second_moment() != second) {
          return "pmf moments disagree with the recursion at q=" + num(q) +
                 " n=" + std::to_string(n);
        }
      }
    }
    return "";
  });

  run_check(out, "occasional.mean_reduces_to_harmonic", []() -> std::string {
    for (std::int64_t n = 1; n <= 40; ++n) {
      if (occasional_moments_exact(n, 1.0).first != clock_moments_exact(n).first) {
        return "q=1 mean is not the harmonic sum at n=" + std::to_string(n);
      }
    }
    return "";
  });

  run_check(out, "occasional.w_closed_form_matches_recursion", []() -> std::string {
    for (const double q : {0.3, 0.5, 0.9}) {
      for (std::int64_t n : {std::int64_t{2}, std::int64_t{17}, std::int64_t{200}}) {
        const double closed = occasional_w_closed_form(n, q);
        const double recursive = occasional_moments(n, q).second_moment;
        if (std::abs(closed - recursive) > 1e-10) {
          return "closed-form w drifts from the recursion at q=" + num(q) +
                 " n=" + std::to_string(n) + " (" + num(closed) + " vs " + num(recursive) + ")";
        }
      }
    }
    return "";
  });

  run_check(out, "occasional.gf_matches_series", []() -> std::string {
    for (const double q : {0.25, 0.5}) {
      std::vector<Pmf> pmfs;
      for (std::int64_t k = 1; k <= 400; ++k) pmfs.push_back(occasional_pmf(k, q));
      for (const double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (const double z : {0.1, 0.3, 0.5, 0.7, 0.9}) {
          const int terms =
              std::min<int>(400, static_cast<int>(std::ceil(std::log(1e-10 * (1.0 - z)) /
                                                            std::log(z))) + 1);
          CompensatedSum series;
          double z_power = 1.0;
          for (int k = 1; k <= terms; ++k) {
            CompensatedSum pgf;
            for (const auto& [v, prob] : pmfs[static_cast<std::size_t>(k - 1)].entries()) {
              pgf.add(prob * std::pow(s, static_cast<double>(v)));
            }
            series.add(z_power * pgf.value());
            z_power *= z;
          }
          const double closed = occasional_bivariate_gf(s, z, q);
          if (std::abs(closed - series.value()) > 1e-8) {
            return "closed form and series differ by " + num(std::abs(closed - series.value())) +
                   " at (q, s, z) = (" + num(q) + ", " + num(s) + ", " + num(z) + ")";
          }
        }
      }
    }
    return "";
  });

  run_check(out, "occasional.gf_reduction_at_q_one", []() -> std::string {
    // q = 1: G(s, z) = (1 - z)^{-s}; the z^{n-1} coefficient c_{n-1}(s) is
    // built exactly via c_j = c_{j-1} (s + j - 1)/j and must match the
    // clock pmf coefficients.
    std::vector<Rational> coefficient{1};
    for (std::int64_t j = 1; j <= 5; ++j) {
      std::vector<Rational> next(coefficient.size() + 1, 0);
      for (std::size_t i = 0; i < coefficient.size(); ++i) {
        next[i] += coefficient[i] * Rational(j - 1, j);
        next[i + 1] += coefficient[i] / j;
      }
      coefficient = std::move(next);
      const auto pmf = clock_pmf_exact(j + 1);
      for (std::size_t i = 0; i < coefficient.size(); ++i) {
        if (coefficient[i] != pmf.at(static_cast<std::int64_t>(i))) {
          return "coefficient of z^" + std::to_string(j) + " disagrees with the clock pmf";
        }
      }
    }
    for (const double s : {0.2, 0.6}) {
      for (const double z : {0.3, 0.8}) {
        if (std::abs(occasional_bivariate_gf(s, z, 1.0) - std::pow(1.0 - z, -s)) > 1e-14) {
          return "q=1 closed form is not (1-z)^{-s}";
        }
      }
    }
    return "";
  });

  run_check(out, "occasional.dobrushin_alpha_floor", []() -> std::string {
    for (const double q : {0.25, 0.5, 0.75}) {
      for (std::int64_t n = 2; n <= 1000; ++n) {
        const auto diagnostic = dobrushin_diagnostic(n, q);
        if (diagnostic.alpha < q) {
          return "alpha_n < q at q=" + num(q) + " n=" + std::to_string(n);
        }
        if (diagnostic.var_sum + 1e-12 < diagnostic.var_sum_lower_bound) {
          return "variance sum undercuts its lower bound at q=" + num(q) +
                 " n=" + std::to_string(n);
        }
      }
    }
    const auto d3 = dobrushin_diagnostic(3, 0.5);
    if (std::abs(d3.alpha - 0.75) > 1e-15) return "alpha_3 at q=1/2 is not 3/4";
    return "";
  });

  run_check(out, "occasional.dobrushin_condition_grows", []() -> std::string {
    double previous = 0.0;
    for (std::int64_t n : {std::int64_t{100}, std::int64_t{1000}, std::int64_t{10000}}) {
      const double value = dobrushin_diagnostic(n, 0.5).condition_value;
      if (!(value > previous)) {
        return "condition value fails to grow at n=" + std::to_string(n);
      }
      previous = value;
    }
    return "";
  });

  run_check(out, "occasional.trace_bookkeeping", []() -> std::string {
    RandomStream rng(kSuiteSeed, 800);
    for (int rep = 0; rep < 2000; ++rep) {
      const auto trace = simulate_occasional(40, 0.35, rng);
      if (trace.values.front() != 0) return "T_1 is not 0";
      std::int64_t reversions = 0;
      for (std::size_t k = 1; k < trace.values.size(); ++k) {
        const bool gate = trace.gates[k - 1] != 0;
        const std::int64_t target = trace.targets[k - 1];
        if (!gate && target != static_cast<std::int64_t>(k)) return "non-reverting stage moved";
        if (gate && (target < 1 || target > static_cast<std::int64_t>(k))) {
          return "reversion target out of range";
        }
        if (trace.values[k] != 1 + trace.values[static_cast<std::size_t>(target - 1)]) {
          return "T increment identity fails";
        }
        if (gate) ++reversions;
        if (trace.reversion_count(static_cast<std::int64_t>(k)) != reversions) {
          return "reversion count bookkeeping fails";
        }
      }
      const auto times = trace.reversion_times();
      const auto gaps = trace.intervals();
      if (times.size() != gaps.size()) return "interval bookkeeping fails";
      std::int64_t position = 0;
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        position += gaps[i];
        if (position != times[i]) return "intervals do not telescope to reversion times";
      }
    }
    return "";
  });

  run_check(out, "occasional.simulation_matches_pmf", []() -> std::string {
    RandomStream rng(kSuiteSeed, 801);
    const Pmf expected = pmf_to_double(occasional_pmf_exact(6, 0.3));
    std::map<std::int64_t, std::int64_t> counts;
    for (int i = 0; i < 400'000; ++i) ++counts[simulate_occasional(6, 0.3, rng).T(6)];
    return chi_gate(counts, expected, "forward simulation n=6 q=0.3");
  });

  run_check(out, "occasional.backward_sampler_matches_pmf", []() -> std::string {
    RandomStream rng(kSuiteSeed, 802);
    const Pmf expected = pmf_to_double(occasional_pmf_exact(7, 0.5));
    std::map<std::int64_t, std::int64_t> counts;
    for (int i = 0; i < 400'000; ++i) ++counts[backward_chain_sample(6, 0.5, rng)];
    return chi_gate(counts, expected, "backward chain n=6 q=1/2");
  });

  run_check(out, "occasional.martingale_increments_centered", []() -> std::string {
    RandomStream rng(kSuiteSeed, 803);
    CompensatedSum sum;
    CompensatedSum sum_squares;
    std::int64_t count = 0;
    for (int rep = 0; rep < 20'000; ++rep) {
      const auto trace = occasional_martingale_trace(20, 0.5, rng, 1e-12);
      for (std::size_t i = 1; i < trace.size(); ++i) {
        const double delta = trace[i].m - trace[i - 1].m;
        sum.add(delta);
        sum_squares.add(delta * delta);
        ++count;
      }
    }
    const double mean = sum.value() / static_cast<double>(count);
    const double variance =
        sum_squares.value() / static_cast<double>(count) - mean * mean;
    const double standard_error = std::sqrt(variance / static_cast<double>(count));
    if (std::abs(mean) > 4.0 * standard_error) {
      return "mean increment " + num(mean) + " is " + num(std::abs(mean) / standard_error) +
             " standard errors from 0";
    }
    return "";
  });
}

// ---------------------------------------------------------------------------
// branching suite

void branching_suite(std::vector<CheckResult>& out) {
  const auto critical = OffspringLaw::from_atoms({{0, 0.5}, {2, 0.5}});
  const auto subcritical = OffspringLaw::from_atoms({{0, 0.75}, {1, 0.25}});

  run_check(out, "branching.pgf_normalised", [&]() -> std::string {
    for (const auto& law : {critical, subcritical}) {
      for (std::int64_t n = 1; n <= 12; ++n) {
        if (reverting_gw_pgf_exact(n, law, Rational(1)) != 1) {
          return "H_n(1) != 1 at n=" + std::to_string(n);
        }
      }
    }
    return "";
  });

  run_check(out, "branching.recursion_residual", [&]() -> std::string {
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(static_cast<double>(i) / 20.0);
    for (const auto& law : {critical, subcritical}) {
      for (std::int64_t n = 1; n <= 8; ++n) {
        const double residual = verify_H_recursion(n, law, grid);
        if (residual >= 1e-10) {
          return "residual " + num(residual) + " at n=" + std::to_string(n);
        }
      }
    }
    return "";
  });

  run_check(out, "branching.frozen_examples", [&]() -> std::string {
    if (std::abs(gw_iterate(critical, 2, 0.0) - 0.625) > 1e-15) return "W(W(0)) is not 5/8";
    if (extinction_probability_exact(3, critical) != Rational(9, 16)) {
      return "P(X_3 = 0) is not 9/16";
    }
    if (extinction_probability_exact(4, subcritical) != Rational(113, 128)) {
      return "subcritical extinction at n=4 is not 113/128";
    }
    return "";
  });

  run_check(out, "branching.polynomial_matches_point", [&]() -> std::string {
    for (std::int64_t t = 0; t <= 5; ++t) {
      const auto poly = gw_iterate_poly(critical, t, 16);
      for (const double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double gap = std::abs(poly.evaluate(s) - gw_iterate(critical, t, s));
        if (gap > poly.truncation_error + 1e-12) {
          return "polynomial error " + num(gap) + " exceeds the tracked truncation " +
                 num(poly.truncation_error) + " at t=" + std::to_string(t);
        }
      }
    }
    return "";
  });

  run_check(out, "branching.extinction_monotone", [&]() -> std::string {
    for (const auto& law : {critical, subcritical}) {
      Rational previous = 0;
      for (std::int64_t n = 2; n <= 12; ++n) {
        const Rational current = extinction_probability_exact(n, law);
        if (current < previous) return "extinction probability decreases at n=" + std::to_string(n);
        previous = current;
      }
    }
    return "";
  });

  run_check(out, "branching.simulation_matches_extinction", [&]() -> std::string {
    RandomStream rng(kSuiteSeed, 900);
    constexpr int kRuns = 200'000;
    for (const auto& law : {critical, subcritical}) {
      std::int64_t extinct = 0;
      for (int i = 0; i < kRuns; ++i) {
        const auto trajectory = simulate_reverting_gw(6, law, rng);
        if (trajectory.capped) return "unexpected population cap";
        if (trajectory.X(6) == 0) ++extinct;
      }
      const double expected = extinction_probability(6, law);
      const double observed = static_cast<double>(extinct) / kRuns;
      const double standard_error = std::sqrt(expected * (1.0 - expected) / kRuns);
      if (std::abs(observed - expected) > 4.0 * standard_error) {
        return "empirical extinction " + num(observed) + " vs " + num(expected) +
               " exceeds 4 standard errors";
      }
    }
    return "";
  });

  run_check(out, "branching.degenerate_laws", []() -> std::string {
    RandomStream rng(kSuiteSeed, 901);
    const auto one = OffspringLaw::deterministic(1);
    const auto trajectory = simulate_reverting_gw(40, one, rng);
    for (const auto value : trajectory.values) {
      if (value != 1) return "unit offspring does not keep the population at 1";
    }
    const auto zero = OffspringLaw::deterministic(0);
    if (extinction_probability_exact(5, zero) != 1) return "zero offspring does not die out";
    const auto two = OffspringLaw::deterministic(2);
    if (extinction_probability_exact(5, two) != 0) return "doubling offspring dies out";
    return "";
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"clock", "walk", "integral", "occasional",
                                                 "branching"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  if (suite == "all") {
    for (const auto& name : suite_names()) {
      auto part = run_suite(name);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return out;
  }
  if (suite == "clock") {
    clock_suite(out);
  } else if (suite == "walk") {
    walk_suite(out);
  } else if (suite == "integral") {
    integral_suite(out);
  } else if (suite == "occasional") {
    occasional_suite(out);
  } else if (suite == "branching") {
    branching_suite(out);
  } else {
    throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
  }
  return out;
}

}  // namespace revert::verify
