// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "revert/numeric.hpp"

namespace revert {
namespace {

void require_positive_n(std::int64_t n, const char* where) {
  if (n < 1) throw std::invalid_argument(std::string(where) + ": n must be >= 1");
}

void require_probability(double p, const char* where) {
  if (!(p >= 0.0) || p > 1.0) {
    throw std::invalid_argument(std::string(where) + ": p must lie in [0, 1]");
  }
}

}  // namespace

WalkTrajectory simulate_walk_recursive(std::int64_t n, const StepLaw& steps,
                                       const ReversionLaw& law, RandomStream& rng) {
  require_positive_n(n, "simulate_walk_recursive");
  WalkTrajectory out;
  out.law = law;
  out.values.reserve(static_cast<std::size_t>(n));
  out.clock.reserve(static_cast<std::size_t>(n));
  out.values.push_back(0.0);
  out.clock.push_back(0);
  ReversionSampler reversion(law);
  for (std::int64_t k = 1; k < n; ++k) {
    const std::int64_t j = reversion(k, rng);
    const double x = step_sample(steps, rng);
    out.reversions.push_back(j);
    out.steps.push_back(x);
    out.values.push_back(out.values[static_cast<std::size_t>(j - 1)] + x);
    out.clock.push_back(1 + out.clock[static_cast<std::size_t>(j - 1)]);
  }
  return out;
}

double simulate_walk_subordinated(std::int64_t n, const StepLaw& steps, RandomStream& rng) {
  require_positive_n(n, "simulate_walk_subordinated");
  const std::int64_t t = n == 1 ? 0 : simulate_clock_bernoulli(n, rng);
  CompensatedSum sum;
  for (std::int64_t r = 0; r < t; ++r) sum.add(step_sample(steps, rng));
  return sum.value();
}

double simulate_walk_inhomogeneous(std::int64_t n, double p, RandomStream& rng) {
  require_positive_n(n, "simulate_walk_inhomogeneous");
  require_probability(p, "simulate_walk_inhomogeneous");
  std::int64_t r = 0;
  for (std::int64_t k = 1; k < n; ++k) {
    const double u = rng.uniform01();
    const double inv = 1.0 / static_cast<double>(k);
    if (u < p * inv) {
      ++r;
    } else if (u < inv) {
      --r;
    }
  }
  return static_cast<double>(r);
}

RationalPmf walk_pmf_simple_exact(std::int64_t n, double p) {
  if (n < 2) throw std::invalid_argument("walk_pmf_simple_exact: n must be >= 2");
  if (n > kExactPmfLimit) {
    throw std::length_error("walk_pmf_simple_exact: n exceeds the exact-mode limit");
  }
  require_probability(p, "walk_pmf_simple_exact");
  const Rational pr = rational_from_double(p);
  const Rational qr = 1 - pr;
  // Sum over t of [n-1, t]/(n-1)! times the t-step Rademacher sum law.  The
  // factorial normalization makes the total mass exactly 1.
  const Rational norm = Rational(1) / Rational(factorial(static_cast<int>(n - 1)));
  RationalPmf out;
  for (std::int64_t t = 1; t < n; ++t) {
    const Rational weight = Rational(stirling_first(static_cast<int>(n - 1), static_cast<int>(t))) * norm;
    if (weight == 0) continue;
    for (std::int64_t j = 0; j <= t; ++j) {
      // j up-steps out of t: value 2j - t, probability C(t, j) p^j q^(t-j).
      const Rational prob = Rational(binomial(static_cast<int>(t), static_cast<int>(j))) *
                            rational_pow(pr, j) * rational_pow(qr, t - j);
      if (prob == 0) continue;
      out.add(2 * j - t, weight * prob);
    }
  }
  return out;
}

Pmf walk_pmf_simple(std::int64_t n, double p) { return pmf_to_double(walk_pmf_simple_exact(n, p)); }

Pmf walk_pmf_mixture(std::int64_t n, double p, double tail_tolerance) {
  require_positive_n(n, "walk_pmf_mixture");
  require_probability(p, "walk_pmf_mixture");
  const Pmf clock = clock_pmf(n, tail_tolerance);
  const double q = 1.0 - p;
  Pmf out;
  for (const auto& [t, weight] : clock.entries()) {
    if (t == 0) {
      out.add(0, weight);
      continue;
    }
    // Binomial(t, p) by the multiplicative term recurrence; stable for the
    // t = O(log n) supports the clock produces.
    double term = std::pow(q, static_cast<double>(t));
    if (p == 1.0) term = 0.0;
    for (std::int64_t j = 0; j <= t; ++j) {
      if (p == 1.0) term = j == t ? 1.0 : 0.0;
      if (p == 0.0) term = j == 0 ? 1.0 : 0.0;
      if (term > 0.0) out.add(2 * j - t, weight * term);
      if (p != 0.0 && p != 1.0 && j < t) {
        term *= (static_cast<double>(t - j) / static_cast<double>(j + 1)) * (p / q);
      }
    }
  }
  out.set_truncated_mass(clock.truncated_mass());
  return out;
}

std::complex<double> walk_char_function(
    std::int64_t n, double theta,
    const std::function<std::complex<double>(double)>& step_cf) {
  require_positive_n(n, "walk_char_function");
  if (!step_cf) throw std::invalid_argument("walk_char_function: step_cf must be callable");
  if (std::abs(step_cf(0.0) - std::complex<double>(1.0, 0.0)) > 1e-12) {
    throw std::invalid_argument("walk_char_function: step_cf(0) must be 1");
  }
  const std::complex<double> phi = step_cf(theta);
  std::complex<double> out(1.0, 0.0);
  for (std::int64_t k = 1; k < n; ++k) {
    const double inv = 1.0 / static_cast<double>(k);
    out *= (1.0 - inv) + phi * inv;
  }
  return out;
}

std::pair<double, double> walk_moments(std::int64_t n, const StepLaw& steps) {
  require_positive_n(n, "walk_moments");
  const ClockMoments clock = clock_moments(n);
  const double mean = steps.mean();
  const double variance = steps.variance();
  return {clock.mean * mean, clock.mean * variance + clock.variance * mean * mean};
}

bool walk_coupling_replay(const WalkTrajectory& trajectory) {
  const std::int64_t n = trajectory.n();
  std::vector<std::int64_t> chain;
  for (std::int64_t k = 1; k <= n; ++k) {
    chain.clear();
    std::int64_t j = k;
    while (j > 1) {
      chain.push_back(j);
      j = trajectory.reversions[static_cast<std::size_t>(j - 2)];
    }
    if (static_cast<std::int64_t>(chain.size()) != trajectory.T(k)) return false;
    // Re-add in forward order so the floating-point association matches the
    // recursion exactly.
    double total = 0.0;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      total += trajectory.steps[static_cast<std::size_t>(*it - 2)];
    }
    if (total != trajectory.R(k)) return false;
  }
  return true;
}

}  // namespace revert
