// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "revert/clock.hpp"
#include "revert/laws.hpp"
#include "revert/pmf.hpp"
#include "revert/rational.hpp"

namespace revert::verify {

/// Enumeration oracles: brute-force path sums with exact arithmetic.  They
/// share no code with the production pmf routines; agreement between the two
/// is the backbone of the test suite.  Bounds keep path counts under ~10^6.
inline constexpr std::int64_t kEnumerateClockLimit = 9;
inline constexpr std::int64_t kEnumerateWalkLimit = 7;
inline constexpr std::int64_t kEnumerateIntegratedLimit = 8;

/// Distribution of T_n by enumerating every reversion choice.
RationalPmf enumerate_clock(std::int64_t n, const ReversionLaw& law);

/// Joint law of (T_n, R_n) by enumerating every reversion choice and every
/// fresh step value.  The step law must have finite (integer) support.
struct WalkEnumeration {
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> joint;

  [[nodiscard]] RationalPmf clock_marginal() const;
  [[nodiscard]] RationalPmf walk_marginal() const;
  [[nodiscard]] RationalPmf conditional_walk(std::int64_t t) const;
};
WalkEnumeration enumerate_walk(std::int64_t n, const StepLaw& steps, const ReversionLaw& law);

/// Law and moments of the time-integral martingale M_n (uniform clock).
struct IntegratedEnumeration {
  RationalPmf t_marginal;
  RationalPmf s_marginal;
  std::map<Rational, Rational> m_law;
  Rational e_m;
  Rational var_m;
};
IntegratedEnumeration enumerate_integrated(std::int64_t n);

/// Cov(T_n, T_{n+m}) by enumeration to depth n + m (uniform clock).
Rational enumerate_clock_covariance(std::int64_t n, std::int64_t m);

/// Exact mean and variance of a law given as a value -> probability map.
std::pair<Rational, Rational> law_moments(const std::map<Rational, Rational>& law);

/// Two-sided Kolmogorov distance between a lattice pmf and the normal law
/// with the given mean and sigma: the cdf gap is evaluated on both sides of
/// every atom.  sigma == 0 compares against a unit step at the mean.
double ks_statistic(const Pmf& pmf, double mean, double sigma);

/// Total variation distance.
double tv_distance(const Pmf& a, const Pmf& b);
Rational tv_distance(const RationalPmf& a, const RationalPmf& b);

/// Pearson chi-square of observed counts against an expected pmf.  Adjacent
/// cells are pooled until every expected count is at least 5.  Observations
/// outside the expected support are an error.
struct ChiSquareResult {
  double statistic = 0.0;
  std::int64_t dof = 0;
};
ChiSquareResult chi_square(const std::map<std::int64_t, std::int64_t>& counts,
                           const Pmf& expected);

/// Upper quantile of the chi-square distribution (test plumbing).
double chi_square_critical(std::int64_t dof, double quantile);

/// Conditional-mean-zero check for martingale increments: samples of
/// (current level, next level) are bucketed by level into equal-count bins
/// and each bin's mean increment is standardised by its standard error.
struct IncrementBin {
  double level = 0.0;  // mean level in the bin
  std::int64_t count = 0;
  double mean_delta = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
};
struct IncrementTestResult {
  double max_abs_z = 0.0;
  std::vector<IncrementBin> bins;
};
IncrementTestResult martingale_increment_test(
    std::vector<std::pair<double, double>> level_and_next, int bins);

}  // namespace revert::verify
