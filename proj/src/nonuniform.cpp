// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/nonuniform.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "revert/numeric.hpp"

namespace revert {
namespace {

void require_weighted(const ReversionLaw& law, const char* where) {
  if (!law.is_weighted()) {
    throw std::invalid_argument(std::string(where) + ": weighted reversion laws only");
  }
}

void require_positive_n(std::int64_t n, const char* where) {
  if (n < 1) throw std::invalid_argument(std::string(where) + ": n must be >= 1");
}

/// Streams p_k = alpha_k / A_k for k = 1..limit into visit(k, p_k).
template <class Visitor>
void stream_success_probabilities(const ReversionLaw& law, std::int64_t limit, Visitor visit) {
  CompensatedSum prefix;
  for (std::int64_t k = 1; k <= limit; ++k) {
    const double w = law.weight(k);
    prefix.add(w);
    visit(k, w / prefix.value());
  }
}

}  // namespace

RationalPmf weighted_clock_pmf_exact(const ReversionLaw& law, std::int64_t n) {
  require_weighted(law, "weighted_clock_pmf_exact");
  require_positive_n(n, "weighted_clock_pmf_exact");
  if (n > kExactPmfLimit) {
    throw std::length_error("weighted_clock_pmf_exact: n exceeds the exact-mode limit");
  }
  RationalPmf pmf = RationalPmf::point_mass(0);
  if (n == 1) return pmf;
  const auto probabilities = reversion_probabilities_exact(law, n - 1);
  for (const auto& p : probabilities) pmf.multiply_bernoulli(p);
  return pmf;
}

Pmf weighted_clock_pmf(const ReversionLaw& law, std::int64_t n, double tail_tolerance) {
  require_weighted(law, "weighted_clock_pmf");
  require_positive_n(n, "weighted_clock_pmf");
  if (tail_tolerance < 0.0 || !std::isfinite(tail_tolerance)) {
    throw std::invalid_argument("weighted_clock_pmf: tail_tolerance must be nonnegative");
  }
  if (tail_tolerance == 0.0) return pmf_to_double(weighted_clock_pmf_exact(law, n));

  const ClockMoments mom = weighted_clock_moments(law, n);
  const double sigma = std::sqrt(mom.variance);
  const auto cap = std::min<std::int64_t>(
      n - 1, static_cast<std::int64_t>(std::ceil(mom.mean + 12.0 * sigma)) + 1);
  std::vector<double> dense(static_cast<std::size_t>(cap) + 1, 0.0);
  dense[0] = 1.0;
  double overflow = 0.0;
  stream_success_probabilities(law, n - 1, [&](std::int64_t, double p) {
    const double q = 1.0 - p;
    overflow += p * dense[static_cast<std::size_t>(cap)];
    for (std::int64_t i = cap; i >= 1; --i) {
      dense[static_cast<std::size_t>(i)] =
          q * dense[static_cast<std::size_t>(i)] + p * dense[static_cast<std::size_t>(i - 1)];
    }
    dense[0] *= q;
  });
  if (!(overflow < 1e-12)) {
    throw std::runtime_error("weighted_clock_pmf: support cap shed more than 1e-12 mass");
  }

  double dropped = overflow;
  double kept = 0.0;
  for (auto& p : dense) {
    if (p < tail_tolerance) {
      dropped += p;
      p = 0.0;
    } else {
      kept += p;
    }
  }
  if (!(kept > 0.0)) throw std::runtime_error("weighted_clock_pmf: tolerance removed every atom");
  Pmf out;
  for (std::int64_t v = 0; v <= cap; ++v) {
    const double p = dense[static_cast<std::size_t>(v)];
    if (p > 0.0) out.add(v, p / kept);
  }
  out.set_truncated_mass(dropped);
  return out;
}

ClockMoments weighted_clock_moments(const ReversionLaw& law, std::int64_t n) {
  require_weighted(law, "weighted_clock_moments");
  require_positive_n(n, "weighted_clock_moments");
  CompensatedSum mean;
  CompensatedSum variance;
  stream_success_probabilities(law, n - 1, [&](std::int64_t, double p) {
    mean.add(p);
    variance.add(p * (1.0 - p));
  });
  ClockMoments out;
  out.n = n;
  out.mean = mean.value();
  out.variance = variance.value();
  return out;
}

std::pair<Rational, Rational> weighted_clock_moments_exact(const ReversionLaw& law,
                                                           std::int64_t n) {
  require_weighted(law, "weighted_clock_moments_exact");
  require_positive_n(n, "weighted_clock_moments_exact");
  Rational mean = 0;
  Rational variance = 0;
  if (n >= 2) {
    for (const auto& p : reversion_probabilities_exact(law, n - 1)) {
      mean += p;
      variance += p * (1 - p);
    }
  }
  return {mean, variance};
}

LyapunovDiagnostic lyapunov_diagnostic(const ReversionLaw& law, std::int64_t n) {
  require_weighted(law, "lyapunov_diagnostic");
  require_positive_n(n, "lyapunov_diagnostic");
  CompensatedSum rho;
  CompensatedSum variance;
  stream_success_probabilities(law, n - 1, [&](std::int64_t, double p) {
    const double q = 1.0 - p;
    rho.add(p * q * (p * p + q * q));
    variance.add(p * q);
  });
  LyapunovDiagnostic out;
  out.n = n;
  out.rho = rho.value();
  out.variance = variance.value();
  if (!(out.variance > 0.0)) {
    throw std::invalid_argument("lyapunov_diagnostic: degenerate clock (v_n = 0)");
  }
  out.ratio = out.rho / std::pow(out.variance, 1.5);
  return out;
}

std::vector<double> weighted_martingale_trace(const ClockTrajectory& trajectory,
                                              const ReversionLaw& law) {
  require_weighted(law, "weighted_martingale_trace");
  if (!(trajectory.law == law)) {
    throw std::invalid_argument("weighted_martingale_trace: trajectory law differs from weights");
  }
  const std::int64_t n = trajectory.n();
  if (n < 1) throw std::invalid_argument("weighted_martingale_trace: empty trajectory");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  CompensatedSum total_weight;   // A_k
  CompensatedSum numerator;      // sum_{j<=k} alpha_j (T_j - m_j)
  CompensatedSum mean;           // m_k = sum_{j<k} p_j
  double prev_p = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (k >= 2) mean.add(prev_p);
    const double alpha = law.weight(k);
    total_weight.add(alpha);
    numerator.add(alpha * (static_cast<double>(trajectory.T(k)) - mean.value()));
    out.push_back(numerator.value() / total_weight.value());
    prev_p = alpha / total_weight.value();
  }
  return out;
}

double weighted_martingale_variance(const ReversionLaw& law, std::int64_t n) {
  require_weighted(law, "weighted_martingale_variance");
  require_positive_n(n, "weighted_martingale_variance");
  double variance = 0.0;
  CompensatedSum v;  // v_k = sum_{j<k} p_j q_j
  double prev_p = 0.0;
  stream_success_probabilities(law, n, [&](std::int64_t k, double p) {
    if (k >= 2) {
      v.add(prev_p * (1.0 - prev_p));
      variance = p * p * v.value() + (1.0 - p * p) * variance;
    }
    prev_p = p;
  });
  return variance;
}

Rational weighted_martingale_variance_exact(const ReversionLaw& law, std::int64_t n) {
  require_weighted(law, "weighted_martingale_variance_exact");
  require_positive_n(n, "weighted_martingale_variance_exact");
  if (n == 1) return Rational(0);
  const auto probabilities = reversion_probabilities_exact(law, n);
  Rational variance = 0;
  Rational v = 0;
  for (std::int64_t k = 2; k <= n; ++k) {
    const Rational& prev = probabilities[static_cast<std::size_t>(k - 2)];
    v += prev * (1 - prev);
    const Rational& p = probabilities[static_cast<std::size_t>(k - 1)];
    variance = p * p * v + (1 - p * p) * variance;
  }
  return variance;
}

double weighted_martingale_variance_via_j(const ReversionLaw& law, std::int64_t n) {
  require_weighted(law, "weighted_martingale_variance_via_j");
  require_positive_n(n, "weighted_martingale_variance_via_j");
  double j_running = 1.0;  // J_k
  CompensatedSum q;        // Q_n = sum_{k=2}^n p_k^2 J_k v_k
  CompensatedSum v;
  double prev_p = 0.0;
  stream_success_probabilities(law, n, [&](std::int64_t k, double p) {
    if (k >= 2) {
      v.add(prev_p * (1.0 - prev_p));
      const double factor = 1.0 - p * p;
      if (!(factor > 0.0)) {
        throw std::invalid_argument("weighted_martingale_variance_via_j: p_k = 1 beyond k = 1");
      }
      j_running /= factor;
      q.add(p * p * j_running * v.value());
    }
    prev_p = p;
  });
  return q.value() / j_running;
}

double martingale_condition_sum(const ReversionLaw& law, std::int64_t n) {
  require_weighted(law, "martingale_condition_sum");
  require_positive_n(n, "martingale_condition_sum");
  CompensatedSum sum;
  CompensatedSum v;
  double prev_p = 0.0;
  stream_success_probabilities(law, n, [&](std::int64_t k, double p) {
    if (k >= 2) v.add(prev_p * (1.0 - prev_p));
    sum.add(p * p * v.value());
    prev_p = p;
  });
  return sum.value();
}

}  // namespace revert
