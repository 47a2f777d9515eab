// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "revert/laws.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"
#include "revert/rational.hpp"

namespace revert {

/// Exact pmfs are supported up to this n (support and denominators stay small).
inline constexpr std::int64_t kExactPmfLimit = 13;

/// Largest first-kind triangle row kept exactly.
inline constexpr int kStirlingLimit = 64;

/// A simulated clock path T_1, ..., T_n together with the reversion choices
/// that produced it.  reversions[k-1] is the index the chain reverted to at
/// step k (so values[k] = 1 + values[reversions[k-1] - 1]).
struct ClockTrajectory {
  ReversionLaw law = ReversionLaw::uniform();
  std::vector<std::int64_t> values;
  std::vector<std::int64_t> reversions;
  std::vector<std::uint8_t> gates;  // occasional law only: gate draw at each step

  [[nodiscard]] std::int64_t n() const { return static_cast<std::int64_t>(values.size()); }
  [[nodiscard]] std::int64_t T(std::int64_t k) const {
    return values.at(static_cast<std::size_t>(k - 1));
  }
};

/// Forward simulation under any reversion law.  For the occasional law the
/// gate is drawn before the index, matching sample_reversion draw order.
ClockTrajectory simulate_clock_trajectory(std::int64_t n, const ReversionLaw& law,
                                          RandomStream& rng);

/// Uniform-law forward simulation: T_{k+1} = 1 + T_{U(k)}.
ClockTrajectory simulate_clock_recursive(std::int64_t n, RandomStream& rng);

/// One draw of T_n as a sum of independent Bernoulli(1/k), k < n.
std::int64_t simulate_clock_bernoulli(std::int64_t n, RandomStream& rng);

/// Backward route: the strictly decreasing sequence of success indices of
/// Bernoulli(1/k) trials scanned from k = n down to 1.  The length is a draw
/// of T_{n+1}; the last element is always 1.
std::vector<std::int64_t> backward_reversion_times(std::int64_t n, RandomStream& rng);

struct ClockMoments {
  std::int64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
};

/// mean = sum_{k<n} 1/k, variance = sum_{k<n} (1/k)(1 - 1/k).
ClockMoments clock_moments(std::int64_t n);

/// Same sums as exact rationals: (mean, variance).
std::pair<Rational, Rational> clock_moments_exact(std::int64_t n);

/// Exact distribution of T_n; requires n <= kExactPmfLimit.
RationalPmf clock_pmf_exact(std::int64_t n);

/// Distribution of T_n.  tail_tolerance == 0 demands the exact route (and its
/// n limit); a positive tolerance allows dropping that much total mass from
/// the tails, reported via Pmf::truncated_mass().
Pmf clock_pmf(std::int64_t n, double tail_tolerance = 0.0);

/// Unsigned Stirling number of the first kind; n <= kStirlingLimit.
/// Zero outside 0 <= k <= n.
BigInt stirling_first(int n, int k);

struct CltDiagnostic {
  std::int64_t n = 0;
  double ks = 0.0;    // sup over atoms of |F(x) - Phi((x + 1 - mean) / sigma)|
  double mean = 0.0;  // standardisation constants (exact partial sums)
  double sigma = 0.0;
  double truncated_mass = 0.0;
  std::string convention;
};

/// Lattice Kolmogorov distance between the law of T_n and its normal limit.
/// Convention: the running cdf through atom x is compared with the normal cdf
/// at the right endpoint x + 1 of the unit cell [x, x + 1); no half-integer
/// shift.  Recorded in the convention field.
CltDiagnostic clock_clt_diagnostic(std::int64_t n, double tail_tolerance = 1e-14);

/// sum_{k<n} p_k q_k (p_k^2 + q_k^2) with p_k = 1/k: the third-moment sum
/// whose ratio to variance^(3/2) controls the normal approximation error.
double clock_lyapunov_rho(std::int64_t n);

}  // namespace revert
