// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "revert/clock.hpp"
#include "revert/laws.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"
#include "revert/rational.hpp"

namespace revert {

/// A walk path R_1..R_n coupled to its clock: R_{k+1} = R_{U(k)} + X_k and
/// T_{k+1} = 1 + T_{U(k)} share the reversion draw U(k).  steps[k-1] is the
/// fresh step X_k consumed at stage k.
struct WalkTrajectory {
  ReversionLaw law = ReversionLaw::uniform();
  std::vector<double> values;           // R_1..R_n
  std::vector<std::int64_t> clock;      // T_1..T_n
  std::vector<std::int64_t> reversions;  // U(1)..U(n-1)
  std::vector<double> steps;            // X_1..X_{n-1}

  [[nodiscard]] std::int64_t n() const { return static_cast<std::int64_t>(values.size()); }
  [[nodiscard]] double R(std::int64_t k) const { return values.at(static_cast<std::size_t>(k - 1)); }
  [[nodiscard]] std::int64_t T(std::int64_t k) const {
    return clock.at(static_cast<std::size_t>(k - 1));
  }
};

/// Coupled forward simulation.  Per stage the reversion index is drawn first,
/// then the fresh step.
WalkTrajectory simulate_walk_recursive(std::int64_t n, const StepLaw& steps,
                                       const ReversionLaw& law, RandomStream& rng);

/// One draw of R_n as a T_n-step sum of fresh i.i.d. steps, with T_n drawn by
/// the Bernoulli route.  Uniform reversions only; the empty sum is 0.
double simulate_walk_subordinated(std::int64_t n, const StepLaw& steps, RandomStream& rng);

/// One draw of R_n for the simple walk via stagewise increments: at stage k
/// the walk moves +1, 0, -1 with probabilities p/k, (k-1)/k, q/k.
double simulate_walk_inhomogeneous(std::int64_t n, double p, RandomStream& rng);

/// Exact distribution of R_n for the simple reverting walk with Rademacher(p)
/// steps: the clock pmf mixed with t-step Bernoulli-sum laws, equivalently
/// the normalized first-kind Stirling sum.  Requires 2 <= n <= kExactPmfLimit.
RationalPmf walk_pmf_simple_exact(std::int64_t n, double p);

/// Double-precision view of walk_pmf_simple_exact.
Pmf walk_pmf_simple(std::int64_t n, double p);

/// Distribution of R_n for the simple walk at scale: clock_pmf(n, tail_tol)
/// mixed with binomial step sums.  Truncated mass is carried through.
Pmf walk_pmf_mixture(std::int64_t n, double p, double tail_tolerance);

/// Characteristic function of a Rademacher(p) step.
inline std::function<std::complex<double>(double)> rademacher_cf(double p) {
  return [p](double theta) {
    return p * std::polar(1.0, theta) + (1.0 - p) * std::polar(1.0, -theta);
  };
}

/// Characteristic function of R_n under uniform reversions:
/// prod_{k=1}^{n-1} [(k-1)/k + phi_X(theta)/k].  Requires phi_X(0) = 1.
std::complex<double> walk_char_function(std::int64_t n, double theta,
                                        const std::function<std::complex<double>(double)>& step_cf);

/// Wald-type moments of R_n under uniform reversions:
/// mean = m_n E X, variance = m_n Var X + v_n (E X)^2.
std::pair<double, double> walk_moments(std::int64_t n, const StepLaw& steps);

/// Replays the stored reversions of a trajectory: follows each backward
/// pointer chain, re-summing the recorded steps.  True iff every R_k is
/// reproduced exactly and every T_k equals its chain's hop count.
bool walk_coupling_replay(const WalkTrajectory& trajectory);

}  // namespace revert
