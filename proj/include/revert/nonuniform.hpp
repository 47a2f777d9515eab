// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "revert/clock.hpp"
#include "revert/laws.hpp"
#include "revert/pmf.hpp"
#include "revert/rational.hpp"

namespace revert {

/// Distribution of T_n under a weighted reversion law: the product of the
/// Bernoulli factors (q_k + p_k s), k < n, with p_k the prefix success
/// probabilities.  tail_tolerance semantics match clock_pmf.
Pmf weighted_clock_pmf(const ReversionLaw& law, std::int64_t n, double tail_tolerance = 0.0);

/// Exact route; requires n <= kExactPmfLimit and exactly representable
/// weights (uniform, integer-beta power law, or explicit dyadic weights).
RationalPmf weighted_clock_pmf_exact(const ReversionLaw& law, std::int64_t n);

/// mean = sum_{k<n} p_k, variance = sum_{k<n} p_k q_k.
ClockMoments weighted_clock_moments(const ReversionLaw& law, std::int64_t n);
std::pair<Rational, Rational> weighted_clock_moments_exact(const ReversionLaw& law,
                                                           std::int64_t n);

/// Third-moment diagnostic for the Bernoulli-sum normal limit.
struct LyapunovDiagnostic {
  std::int64_t n = 0;
  double rho = 0.0;       // sum_{k<n} p_k q_k (p_k^2 + q_k^2)
  double variance = 0.0;  // v_n
  double ratio = 0.0;     // rho / v_n^(3/2)
};

/// Throws invalid_argument when v_n = 0 (degenerate standardization).
LyapunovDiagnostic lyapunov_diagnostic(const ReversionLaw& law, std::int64_t n);

/// Running weighted martingale M_k = sum_{j<=k} alpha_j (T_j - m_j) / A_k
/// for k = 1..n, with m_j = E T_j under the same weights; M_1 = 0.
/// The trajectory must have been generated under `law`.
std::vector<double> weighted_martingale_trace(const ClockTrajectory& trajectory,
                                              const ReversionLaw& law);

/// Var M_n by the forward recursion
/// Var M_k = p_k^2 v_k + (1 - p_k^2) Var M_{k-1}, Var M_1 = 0.
double weighted_martingale_variance(const ReversionLaw& law, std::int64_t n);
Rational weighted_martingale_variance_exact(const ReversionLaw& law, std::int64_t n);

/// The same variance through the compensator route: Q_n / J_n with
/// J_n = [prod_{k=2}^n (1 - p_k^2)]^{-1} and Q_n = sum_{k=2}^n p_k^2 J_k v_k.
/// Cross-check for the recursion; the two must agree to rounding.
double weighted_martingale_variance_via_j(const ReversionLaw& law, std::int64_t n);

/// Partial sum sum_{k<=n} p_k^2 v_k, the summability condition controlling
/// L_2-boundedness of the weighted martingale.
double martingale_condition_sum(const ReversionLaw& law, std::int64_t n);

}  // namespace revert
