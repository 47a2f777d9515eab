// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/clock.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "revert/numeric.hpp"

namespace revert {
namespace {

void require_positive_n(std::int64_t n, const char* where) {
  if (n < 1) throw std::invalid_argument(std::string(where) + ": n must be >= 1");
}

}  // namespace

ClockTrajectory simulate_clock_trajectory(std::int64_t n, const ReversionLaw& law,
                                          RandomStream& rng) {
  require_positive_n(n, "simulate_clock_trajectory");
  ClockTrajectory out;
  out.law = law;
  out.values.reserve(static_cast<std::size_t>(n));
  out.values.push_back(0);
  const bool occasional = law.kind() == ReversionLaw::Kind::kOccasional;
  if (occasional) out.gates.reserve(static_cast<std::size_t>(n - 1));
  out.reversions.reserve(static_cast<std::size_t>(n - 1));
  ReversionSampler sampler(law);
  for (std::int64_t k = 1; k < n; ++k) {
    std::int64_t target = 0;
    if (occasional) {
      const bool gate = rng.bernoulli(law.q());
      out.gates.push_back(gate ? 1 : 0);
      target = gate ? rng.uniform_index(k) : k;
    } else {
      target = sampler(k, rng);
    }
    out.reversions.push_back(target);
    out.values.push_back(1 + out.values[static_cast<std::size_t>(target - 1)]);
  }
  return out;
}

ClockTrajectory simulate_clock_recursive(std::int64_t n, RandomStream& rng) {
  return simulate_clock_trajectory(n, ReversionLaw::uniform(), rng);
}

std::int64_t simulate_clock_bernoulli(std::int64_t n, RandomStream& rng) {
  require_positive_n(n, "simulate_clock_bernoulli");
  std::int64_t total = 0;
  for (std::int64_t k = 1; k < n; ++k) {
    if (rng.bernoulli(1.0 / static_cast<double>(k))) ++total;
  }
  return total;
}

std::vector<std::int64_t> backward_reversion_times(std::int64_t n, RandomStream& rng) {
  require_positive_n(n, "backward_reversion_times");
  // Success indices of independent Bernoulli(1/k) trials, scanned from k = n
  // down to k = 1.  The trial at k = 1 always succeeds, so the sequence ends
  // in 1 and its length is distributed as T_{n+1}.
  std::vector<std::int64_t> times;
  for (std::int64_t k = n; k >= 2; --k) {
    if (rng.bernoulli(1.0 / static_cast<double>(k))) times.push_back(k);
  }
  times.push_back(1);
  return times;
}

ClockMoments clock_moments(std::int64_t n) {
  require_positive_n(n, "clock_moments");
  ClockMoments out;
  out.n = n;
  out.mean = harmonic(n - 1);
  out.variance = out.mean - harmonic_squares(n - 1);
  return out;
}

std::pair<Rational, Rational> clock_moments_exact(std::int64_t n) {
  require_positive_n(n, "clock_moments_exact");
  Rational mean = 0;
  Rational variance = 0;
  for (std::int64_t k = 1; k < n; ++k) {
    const Rational p(1, k);
    mean += p;
    variance += p * (1 - p);
  }
  return {mean, variance};
}

RationalPmf clock_pmf_exact(std::int64_t n) {
  require_positive_n(n, "clock_pmf_exact");
  if (n > kExactPmfLimit) {
    throw std::length_error("clock_pmf_exact: n exceeds the exact-mode limit");
  }
  RationalPmf pmf = RationalPmf::point_mass(0);
  for (std::int64_t k = 1; k < n; ++k) pmf.multiply_bernoulli(Rational(1, k));
  return pmf;
}

Pmf clock_pmf(std::int64_t n, double tail_tolerance) {
  require_positive_n(n, "clock_pmf");
  if (tail_tolerance < 0.0 || !std::isfinite(tail_tolerance)) {
    throw std::invalid_argument("clock_pmf: tail_tolerance must be nonnegative");
  }
  if (tail_tolerance == 0.0) return pmf_to_double(clock_pmf_exact(n));

  const ClockMoments mom = clock_moments(n);
  const double sigma = std::sqrt(mom.variance);
  // Support cap 12 sigma past the mean: the mass beyond it is far below any
  // usable tolerance, and it keeps the dense array O(log n) long.
  const auto cap = std::min<std::int64_t>(
      n - 1, static_cast<std::int64_t>(std::ceil(mom.mean + 12.0 * sigma)) + 1);
  std::vector<double> dense(static_cast<std::size_t>(cap) + 1, 0.0);
  dense[0] = 1.0;
  double overflow = 0.0;
  for (std::int64_t k = 1; k < n; ++k) {
    const double p = 1.0 / static_cast<double>(k);
    const double q = 1.0 - p;
    overflow += p * dense[static_cast<std::size_t>(cap)];
    for (std::int64_t i = cap; i >= 1; --i) {
      dense[static_cast<std::size_t>(i)] =
          q * dense[static_cast<std::size_t>(i)] + p * dense[static_cast<std::size_t>(i - 1)];
    }
    dense[0] *= q;
  }
  if (!(overflow < 1e-12)) {
    throw std::runtime_error("clock_pmf: support cap shed more than 1e-12 mass");
  }

  // Drop atoms below the tolerance, renormalise what survives, and report the
  // shed mass (cap overflow included) as truncated_mass.
  double dropped = overflow;
  double kept = 0.0;
  for (std::int64_t v = 0; v <= cap; ++v) {
    const double p = dense[static_cast<std::size_t>(v)];
    if (p < tail_tolerance) {
      dropped += p;
      dense[static_cast<std::size_t>(v)] = 0.0;
    } else {
      kept += p;
    }
  }
  if (!(kept > 0.0)) throw std::runtime_error("clock_pmf: tolerance removed every atom");

  Pmf out;
  for (std::int64_t v = 0; v <= cap; ++v) {
    const double p = dense[static_cast<std::size_t>(v)];
    if (p > 0.0) out.add(v, p / kept);
  }
  out.set_truncated_mass(dropped);
  return out;
}

BigInt stirling_first(int n, int k) {
  if (n < 0 || n > kStirlingLimit) {
    throw std::length_error("stirling_first: n outside [0, kStirlingLimit]");
  }
  if (k < 0 || k > n) return 0;
  static std::vector<std::vector<BigInt>> triangle;
  static std::once_flag built;
  std::call_once(built, [] {
    triangle.resize(kStirlingLimit + 1);
    triangle[0] = {BigInt(1)};
    for (int row = 1; row <= kStirlingLimit; ++row) {
      triangle[static_cast<std::size_t>(row)].assign(static_cast<std::size_t>(row) + 1, BigInt(0));
      for (int col = 1; col <= row; ++col) {
        // s(n, k) = (n - 1) s(n - 1, k) + s(n - 1, k - 1)
        const auto& prev = triangle[static_cast<std::size_t>(row - 1)];
        BigInt value = prev[static_cast<std::size_t>(col - 1)];
        if (col < row) value += BigInt(row - 1) * prev[static_cast<std::size_t>(col)];
        triangle[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = value;
      }
    }
  });
  return triangle[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

CltDiagnostic clock_clt_diagnostic(std::int64_t n, double tail_tolerance) {
  if (n < 3) throw std::invalid_argument("clock_clt_diagnostic: needs n >= 3 (positive variance)");
  if (!(tail_tolerance > 0.0)) {
    throw std::invalid_argument("clock_clt_diagnostic: tail_tolerance must be positive");
  }
  const Pmf pmf = clock_pmf(n, tail_tolerance);
  const ClockMoments mom = clock_moments(n);
  CltDiagnostic diag;
  diag.n = n;
  diag.mean = mom.mean;
  diag.sigma = std::sqrt(mom.variance);
  diag.truncated_mass = pmf.truncated_mass();
  diag.convention = "normal cdf at cell right endpoint x + 1";
  CompensatedSum cdf;
  double worst = 0.0;
  for (const auto& [x, p] : pmf.entries()) {
    cdf.add(p);
    const double z = (static_cast<double>(x) + 1.0 - diag.mean) / diag.sigma;
    worst = std::max(worst, std::abs(cdf.value() - normal_cdf(z)));
  }
  diag.ks = worst;
  return diag;
}

double clock_lyapunov_rho(std::int64_t n) {
  require_positive_n(n, "clock_lyapunov_rho");
  CompensatedSum rho;
  for (std::int64_t k = 1; k < n; ++k) {
    const double p = 1.0 / static_cast<double>(k);
    const double q = 1.0 - p;
    rho.add(p * q * (p * p + q * q));
  }
  return rho.value();
}

}  // namespace revert
