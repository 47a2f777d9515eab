// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/integral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "revert/numeric.hpp"

namespace revert {
namespace {

constexpr double kIncrementBound = 1.5;

double limit_variance() { return 2.0 - std::numbers::pi * std::numbers::pi / 6.0; }

}  // namespace

std::vector<MartingaleTrace> integrated_trace(const ClockTrajectory& trajectory) {
  if (trajectory.law.kind() != ReversionLaw::Kind::kUniform) {
    throw std::invalid_argument("integrated_trace: uniform-reversion trajectories only");
  }
  const std::int64_t n = trajectory.n();
  if (n < 1) throw std::invalid_argument("integrated_trace: empty trajectory");
  std::vector<MartingaleTrace> out;
  out.reserve(static_cast<std::size_t>(n));
  std::int64_t s = 0;
  CompensatedSum harmonic_tail;  // sum_{j=2}^k 1/j
  for (std::int64_t k = 1; k <= n; ++k) {
    s += trajectory.T(k);
    if (k >= 2) harmonic_tail.add(1.0 / static_cast<double>(k));
    MartingaleTrace entry;
    entry.n = k;
    entry.s = s;
    entry.expected_s = static_cast<double>(k) * harmonic_tail.value();
    entry.m = (static_cast<double>(s) - entry.expected_s) / static_cast<double>(k);
    out.push_back(entry);
  }
  return out;
}

MartingaleVariance martingale_variance(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("martingale_variance: n must be >= 1");
  CompensatedSum v;  // v_k = sum_{j<k} (1/j)(1 - 1/j), updated incrementally
  CompensatedSum q;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (k >= 2) {
      const double inv = 1.0 / static_cast<double>(k - 1);
      v.add(inv * (1.0 - inv));
    }
    q.add(v.value() / (static_cast<double>(k) * static_cast<double>(k + 1)));
  }
  MartingaleVariance out;
  out.n = n;
  out.q_n = q.value();
  out.variance = out.q_n * static_cast<double>(n + 1) / static_cast<double>(n);
  out.limit = limit_variance();
  return out;
}

std::pair<Rational, Rational> martingale_variance_exact(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("martingale_variance_exact: n must be >= 1");
  Rational v = 0;
  Rational q = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (k >= 2) v += Rational(1, k - 1) - Rational(1, (k - 1) * (k - 1));
    q += v / (k * (k + 1));
  }
  return {q, q * Rational(n + 1, n)};
}

double clock_covariance(std::int64_t n, std::int64_t m) {
  if (n < 2) throw std::invalid_argument("clock_covariance: n must be >= 2");
  if (m < 1) throw std::invalid_argument("clock_covariance: m must be >= 1");
  const double var_m = martingale_variance(n - 1).variance;
  const double v_n = clock_moments(n).variance;
  return (static_cast<double>(n - 1) * var_m + v_n) / static_cast<double>(n);
}

Rational clock_covariance_exact(std::int64_t n, std::int64_t m) {
  if (n < 2) throw std::invalid_argument("clock_covariance_exact: n must be >= 2");
  if (m < 1) throw std::invalid_argument("clock_covariance_exact: m must be >= 1");
  const Rational var_m = martingale_variance_exact(n - 1).second;
  const Rational v_n = clock_moments_exact(n).second;
  return (Rational(n - 1) * var_m + v_n) / n;
}

double hoeffding_check(const std::vector<MartingaleTrace>& trace) {
  if (trace.empty()) throw std::invalid_argument("hoeffding_check: empty trace");
  double worst = 0.0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    worst = std::max(worst, std::abs(trace[k].m - trace[k - 1].m));
  }
  if (worst > kIncrementBound + 1e-9) {
    throw std::logic_error("hoeffding_check: increment exceeded 3/2");
  }
  return worst;
}

double azuma_tail_bound(std::int64_t n, double x) {
  if (n < 1) throw std::invalid_argument("azuma_tail_bound: n must be >= 1");
  if (!(x > 0.0)) throw std::invalid_argument("azuma_tail_bound: x must be positive");
  if (n == 1) return 0.0;
  const double denom = 2.0 * static_cast<double>(n - 1) * kIncrementBound * kIncrementBound;
  const double bound = 2.0 * std::exp(-x * x / denom);
  return std::min(bound, 1.0);
}

}  // namespace revert
