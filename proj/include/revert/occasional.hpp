// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "revert/pmf.hpp"
#include "revert/random.hpp"
#include "revert/rational.hpp"

namespace revert {

/// A path of the occasionally reverting clock: at stage k an independent
/// Bernoulli(q) gate I_k decides whether the chain reverts to a uniform past
/// index (I_k = 1) or continues from k (I_k = 0); either way
/// T_{k+1} = 1 + T_{V(k)}.
struct OccasionalTrace {
  double q = 0.0;
  std::vector<std::int64_t> values;   // T_1..T_n
  std::vector<std::uint8_t> gates;    // I_1..I_{n-1}
  std::vector<std::int64_t> targets;  // V(1)..V(n-1)

  [[nodiscard]] std::int64_t n() const { return static_cast<std::int64_t>(values.size()); }
  [[nodiscard]] std::int64_t T(std::int64_t k) const {
    return values.at(static_cast<std::size_t>(k - 1));
  }
  /// Number of reversions among stages 1..k.
  [[nodiscard]] std::int64_t reversion_count(std::int64_t k) const;
  /// Stages with I_k = 1, increasing.
  [[nodiscard]] std::vector<std::int64_t> reversion_times() const;
  /// First differences of reversion_times (from stage 0); each interval is
  /// geometric(q) on {1, 2, ...}, so the sum of the first j intervals is the
  /// stage of the j-th reversion.
  [[nodiscard]] std::vector<std::int64_t> intervals() const;
};

/// Forward simulation; the gate is drawn before the index draw, which only
/// happens on reverting stages.  q = 1 is the uniform clock.
OccasionalTrace simulate_occasional(std::int64_t n, double q, RandomStream& rng);

/// Exact distribution of T_n via the generating-function recursion
/// G_{j+1} = s p G_j + (s q / j) sum_{k<=j} G_k; requires n <= kExactPmfLimit.
RationalPmf occasional_pmf_exact(std::int64_t n, double q);

/// Distribution of T_n.  tail_tolerance == 0 demands the exact route; a
/// positive tolerance runs the same recursion in doubles (O(n^2) work) and
/// then drops/renormalizes as in clock_pmf.
Pmf occasional_pmf(std::int64_t n, double q, double tail_tolerance = 0.0);

/// Closed form of the bivariate generating function
/// sum_k z^(k-1) E s^(T_k) = (1 - s p z)^((s-1)/(1-sp)) (1-z)^(-qs/(1-sp)).
/// Requires s in [0, 1], z in [0, 1); the pole s p = 1 is rejected.
double occasional_bivariate_gf(double s, double z, double q);

/// The same closed form on the unit circle, s = e^(i theta): the bivariate
/// characteristic function of the subordinated walk.  Evaluation only.
std::complex<double> occasional_char_function(double theta, double z, double q);

struct OccasionalMoments {
  std::int64_t n = 0;
  double q = 0.0;
  double mean = 0.0;           // m_n
  double second_moment = 0.0;  // w_n
  double variance = 0.0;       // w_n - m_n^2
  double ratio = 0.0;          // w_n / m_n^2 (0 while m_n = 0); tends to 1
};

/// m_n by the closed sum m_{j+1} = m_j + (1 - p^j)/(q j); w_n by the raw
/// conditioning recursion with running sums.
OccasionalMoments occasional_moments(std::int64_t n, double q);

/// Exact (m_n, w_n) along the same recursions.
std::pair<Rational, Rational> occasional_moments_exact(std::int64_t n, double q);

/// w_n rebuilt from the differenced closed-form increments; cancellation-
/// prone, kept as a cross-check of the recursion route.
double occasional_w_closed_form(std::int64_t n, double q);

/// One draw of T_{n+1} by running the reversed two-state chain Z_n, ..., Z_1
/// and summing.  Z_n ~ Bernoulli(p + q/n).
std::int64_t backward_chain_sample(std::int64_t n, double q, RandomStream& rng);

/// Exact law of T_{n+1} = sum_k Z_k by dynamic programming over the chain
/// state and the partial sum.
RationalPmf backward_chain_distribution(std::int64_t n, double q);

struct DobrushinDiagnostic {
  std::int64_t n = 0;
  double q = 0.0;
  double alpha = 0.0;                // min_k [1 - max row difference], >= q
  double var_sum = 0.0;              // sum_k Var Z_k from exact marginals
  double var_sum_lower_bound = 0.0;  // sum_j q (j-1)/j^2
  double condition_value = 0.0;      // alpha^3 * var_sum; unbounded in n
};

/// Ergodicity diagnostic of the reversed chain for T_{n+1}; n >= 2.
DobrushinDiagnostic dobrushin_diagnostic(std::int64_t n, double q);

struct OccasionalMartingaleEntry {
  std::int64_t epoch = 0;        // number of reversions so far
  std::int64_t stage = 0;        // stage index of that reversion
  std::int64_t s = 0;            // running integral of the clock to the stage
  double m = 0.0;                // martingale value at the epoch
  double correction = 0.0;       // subtracted series total so far
  double truncation_error = 0.0;  // accumulated tail bound of the truncation
};

/// Runs the clock until `reversions` gates have fired and reports the
/// level at each reversion epoch: M_n = S/stage - the correction series,
/// each series truncated once its geometric-tail majorant drops below
/// series_tolerance.  Requires q in (0, 1) and series_tolerance > 0.
/// The stage-count/integral bookkeeping identity between consecutive
/// epochs is asserted pathwise.
std::vector<OccasionalMartingaleEntry> occasional_martingale_trace(std::int64_t reversions,
                                                                   double q, RandomStream& rng,
                                                                   double series_tolerance);

}  // namespace revert
