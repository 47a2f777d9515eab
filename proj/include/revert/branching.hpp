// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "revert/random.hpp"
#include "revert/rational.hpp"

namespace revert {

/// Populations above this default cap mark the trajectory as capped.
inline constexpr std::int64_t kPopulationCap = 10'000'000;

/// Symbolic composition is refused beyond this degree; use point evaluation.
inline constexpr int kDegreeCap = 64;

/// Largest n accepted by verify_H_recursion (needs exact clock pmfs
/// for every k <= n + 1).
inline constexpr std::int64_t kRecursionCheckLimit = 10;

/// Finite-support offspring law with p.g.f. W(s) = sum_c P(Z = c) s^c.
/// All probabilities are non-negative and sum to one; W(1) = 1.
class OffspringLaw {
 public:
  /// Builds the law from (count, probability) atoms.  Counts must be
  /// distinct and non-negative; probabilities non-negative and summing
  /// to 1 within 1e-12.  Zero-probability atoms are dropped.
  static OffspringLaw from_atoms(std::vector<std::pair<std::int64_t, double>> atoms);

  /// Point mass at `count`; W(s) = s^count.
  static OffspringLaw deterministic(std::int64_t count);

  /// Atoms sorted by count, ascending.
  const std::vector<std::pair<std::int64_t, double>>& atoms() const { return atoms_; }

  /// W(s).
  double pgf(double s) const;

  /// W(s) with exact coefficients.  The double probabilities convert to
  /// dyadic rationals; any conversion slack (at most 1e-12) is folded
  /// into the largest atom so the coefficients sum to exactly 1.
  Rational pgf_exact(const Rational& s) const;

  /// Mean offspring count.
  double mean() const;

  std::int64_t max_count() const { return atoms_.back().first; }

  /// One offspring draw by inverse-cdf lookup.
  std::int64_t sample(RandomStream& rng) const;

 private:
  OffspringLaw() = default;
  std::vector<std::pair<std::int64_t, double>> atoms_;
  std::vector<Rational> exact_probabilities_;
  std::vector<double> cdf_;
};

/// Population sequence of a reverting Galton-Watson run.  If the cap was
/// hit, `values` ends with the first population above the cap and
/// `capped` is set; later generations are not simulated.
struct GwTrajectory {
  std::vector<std::int64_t> values;      // X_1..X_m
  std::vector<std::int64_t> reversions;  // V(1)..V(m-1)
  bool capped = false;

  std::int64_t n() const { return static_cast<std::int64_t>(values.size()); }
  std::int64_t X(std::int64_t k) const { return values.at(static_cast<std::size_t>(k - 1)); }
};

/// Simulates X_{k+1} = sum of offspring over the X_{V(k)} individuals of
/// the uniformly chosen past generation V(k); X_1 = 1.
GwTrajectory simulate_reverting_gw(std::int64_t n, const OffspringLaw& offspring,
                                   RandomStream& rng,
                                   std::int64_t population_cap = kPopulationCap);

/// t-fold composition W^(t)(s) by point evaluation; W^(0)(s) = s.
double gw_iterate(const OffspringLaw& offspring, std::int64_t t, double s);

/// Exact t-fold composition at a rational point.
Rational gw_iterate_exact(const OffspringLaw& offspring, std::int64_t t, const Rational& s);

/// Truncated polynomial form of W^(t).  Coefficients beyond the degree
/// cap are shed; because all coefficients are non-negative, the shed
/// mass bounds the evaluation error anywhere on [0, 1].
struct GwPolynomial {
  std::vector<double> coefficients;  // index = offspring count
  double truncation_error = 0.0;

  double evaluate(double s) const;
};

/// W^(t) as a polynomial truncated to `degree_cap` (at most kDegreeCap).
GwPolynomial gw_iterate_poly(const OffspringLaw& offspring, std::int64_t t, int degree_cap);

/// H_n(s) = sum_t P(T_n = t) W^(t)(s); the p.g.f. of X_n.  H_1(s) = s.
double reverting_gw_pgf(std::int64_t n, const OffspringLaw& offspring, double s);

/// Exact H_n(s); needs the exact clock pmf, so n <= kExactPmfLimit.
Rational reverting_gw_pgf_exact(std::int64_t n, const OffspringLaw& offspring, const Rational& s);

/// Max residual of H_{n+1}(s) = (1/n) sum_{k<=n} H_k(W(s)) over the grid.
/// Requires 1 <= n <= kRecursionCheckLimit.
double verify_H_recursion(std::int64_t n, const OffspringLaw& offspring,
                          const std::vector<double>& s_grid);

/// P(X_n = 0) = H_n(0).
double extinction_probability(std::int64_t n, const OffspringLaw& offspring);
Rational extinction_probability_exact(std::int64_t n, const OffspringLaw& offspring);

}  // namespace revert
