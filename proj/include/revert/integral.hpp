// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "revert/clock.hpp"
#include "revert/rational.hpp"

namespace revert {

/// Running state of the time-integral martingale at index n:
/// S_n = T_1 + ... + T_n, expected_s = n sum_{k=2}^n 1/k, m = (S_n - E S_n)/n.
struct MartingaleTrace {
  std::int64_t n = 0;
  std::int64_t s = 0;
  double m = 0.0;
  double expected_s = 0.0;
};

/// The trace for k = 1..n along a uniform-reversion trajectory; M_1 = 0.
std::vector<MartingaleTrace> integrated_trace(const ClockTrajectory& trajectory);

struct MartingaleVariance {
  std::int64_t n = 0;
  double q_n = 0.0;       // sum_{k<=n} v_k / (k (k+1))
  double variance = 0.0;  // ((n+1)/n) q_n
  double limit = 0.0;     // 2 - pi^2/6, the n -> infinity value
};

/// Var M_n by the forward Q-sum; O(n) and exact up to rounding.
MartingaleVariance martingale_variance(std::int64_t n);

/// Exact (Q_n, Var M_n).  Denominators grow fast; intended for small n.
std::pair<Rational, Rational> martingale_variance_exact(std::int64_t n);

/// Cov(T_n, T_{n+m}) = ((n-1)/n) Var M_{n-1} + (1/n) v_n; free of m.
/// Requires n >= 2 (the formula consumes Var M_{n-1}) and m >= 1.
double clock_covariance(std::int64_t n, std::int64_t m);
Rational clock_covariance_exact(std::int64_t n, std::int64_t m);

/// Max |M_{k+1} - M_k| over the trace.  Throws logic_error if any increment
/// exceeds 3/2: that bound is structural, so a violation is a bug.
double hoeffding_check(const std::vector<MartingaleTrace>& trace);

/// Azuma bound on P(|M_n| >= x) with increment constant 3/2, clipped to
/// [0, 1].  n = 1 has no increments; the bound is 0 by convention.
double azuma_tail_bound(std::int64_t n, double x);

}  // namespace revert
