// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "revert/numeric.hpp"

namespace revert::verify {
namespace {

std::vector<std::vector<Rational>> branch_tables(std::int64_t n, const ReversionLaw& law) {
  std::vector<std::vector<Rational>> tables;
  tables.reserve(static_cast<std::size_t>(n - 1));
  for (std::int64_t k = 1; k < n; ++k) {
    tables.push_back(reversion_distribution_exact(law, k));
  }
  return tables;
}

std::vector<std::pair<std::int64_t, Rational>> step_support_exact(const StepLaw& steps) {
  std::vector<std::pair<std::int64_t, Rational>> out;
  switch (steps.kind()) {
    case StepLaw::Kind::kRademacher: {
      const Rational p = rational_from_double(steps.rademacher_p());
      if (p < 1) out.emplace_back(-1, 1 - p);
      if (p > 0) out.emplace_back(1, p);
      return out;
    }
    case StepLaw::Kind::kFiniteDiscrete: {
      for (const auto& [value, prob] : steps.support()) {
        if (prob > 0.0) out.emplace_back(value, rational_from_double(prob));
      }
      // Dyadic probabilities need not sum to exactly 1; fold the rounding
      // slack into the largest cell so the enumeration stays a probability.
      Rational total = 0;
      for (const auto& [v, p] : out) total += p;
      auto largest = std::max_element(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.second < b.second;
      });
      largest->second += 1 - total;
      return out;
    }
    case StepLaw::Kind::kGeneral:
      throw std::invalid_argument("enumerate_walk: step law must have finite support");
  }
  throw std::logic_error("step_support_exact: unreachable");
}

}  // namespace

RationalPmf enumerate_clock(std::int64_t n, const ReversionLaw& law) {
  if (n < 1) throw std::invalid_argument("enumerate_clock: n must be >= 1");
  if (n > kEnumerateClockLimit) {
    throw std::length_error("enumerate_clock: n exceeds the enumeration bound");
  }
  const auto tables = branch_tables(n, law);
  RationalPmf out;
  std::vector<std::int64_t> t{0};  // T_1
  std::function<void(std::int64_t, Rational)> walk = [&](std::int64_t k, Rational prob) {
    if (k == n) {
      out.add(t.back(), prob);
      return;
    }
    const auto& branch = tables[static_cast<std::size_t>(k - 1)];
    for (std::int64_t j = 1; j <= k; ++j) {
      const Rational& pj = branch[static_cast<std::size_t>(j - 1)];
      if (pj == 0) continue;
      t.push_back(1 + t[static_cast<std::size_t>(j - 1)]);
      walk(k + 1, prob * pj);
      t.pop_back();
    }
  };
  walk(1, Rational(1));
  return out;
}

WalkEnumeration enumerate_walk(std::int64_t n, const StepLaw& steps, const ReversionLaw& law) {
  if (n < 1) throw std::invalid_argument("enumerate_walk: n must be >= 1");
  if (n > kEnumerateWalkLimit) {
    throw std::length_error("enumerate_walk: n exceeds the enumeration bound");
  }
  const auto tables = branch_tables(n, law);
  const auto support = step_support_exact(steps);
  WalkEnumeration out;
  std::vector<std::int64_t> t{0};
  std::vector<std::int64_t> r{0};
  std::function<void(std::int64_t, Rational)> walk = [&](std::int64_t k, Rational prob) {
    if (k == n) {
      out.joint[{t.back(), r.back()}] += prob;
      return;
    }
    const auto& branch = tables[static_cast<std::size_t>(k - 1)];
    for (std::int64_t j = 1; j <= k; ++j) {
      const Rational& pj = branch[static_cast<std::size_t>(j - 1)];
      if (pj == 0) continue;
      for (const auto& [x, px] : support) {
        t.push_back(1 + t[static_cast<std::size_t>(j - 1)]);
        r.push_back(r[static_cast<std::size_t>(j - 1)] + x);
        walk(k + 1, prob * pj * px);
        t.pop_back();
        r.pop_back();
      }
    }
  };
  walk(1, Rational(1));
  return out;
}

RationalPmf WalkEnumeration::clock_marginal() const {
  RationalPmf out;
  for (const auto& [key, prob] : joint) out.add(key.first, prob);
  return out;
}

RationalPmf WalkEnumeration::walk_marginal() const {
  RationalPmf out;
  for (const auto& [key, prob] : joint) out.add(key.second, prob);
  return out;
}

RationalPmf WalkEnumeration::conditional_walk(std::int64_t t) const {
  RationalPmf out;
  Rational mass = 0;
  for (const auto& [key, prob] : joint) {
    if (key.first == t) {
      out.add(key.second, prob);
      mass += prob;
    }
  }
  if (mass == 0) throw std::invalid_argument("conditional_walk: clock value has zero probability");
  out.scale(1 / mass);
  return out;
}

IntegratedEnumeration enumerate_integrated(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("enumerate_integrated: n must be >= 1");
  if (n > kEnumerateIntegratedLimit) {
    throw std::length_error("enumerate_integrated: n exceeds the enumeration bound");
  }
  // E S_n = n (H_n - 1), exactly.
  Rational expected_s = 0;
  for (std::int64_t k = 2; k <= n; ++k) expected_s += Rational(n, k);
  IntegratedEnumeration out;
  std::vector<std::int64_t> t{0};
  std::int64_t s = 0;
  std::function<void(std::int64_t, Rational)> walk = [&](std::int64_t k, Rational prob) {
    if (k == n) {
      out.t_marginal.add(t.back(), prob);
      out.s_marginal.add(s, prob);
      out.m_law[(Rational(s) - expected_s) / n] += prob;
      return;
    }
    for (std::int64_t j = 1; j <= k; ++j) {
      const std::int64_t value = 1 + t[static_cast<std::size_t>(j - 1)];
      t.push_back(value);
      s += value;
      walk(k + 1, prob / k);
      s -= value;
      t.pop_back();
    }
  };
  walk(1, Rational(1));
  auto [mean, variance] = law_moments(out.m_law);
  out.e_m = mean;
  out.var_m = variance;
  return out;
}

Rational enumerate_clock_covariance(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) throw std::invalid_argument("enumerate_clock_covariance: n, m must be >= 1");
  if (n + m > kEnumerateClockLimit) {
    throw std::length_error("enumerate_clock_covariance: n + m exceeds the enumeration bound");
  }
  const std::int64_t depth = n + m;
  Rational cross = 0;  // E[T_n T_{n+m}]
  Rational mean_n = 0;
  Rational mean_nm = 0;
  std::vector<std::int64_t> t{0};
  std::function<void(std::int64_t, Rational)> walk = [&](std::int64_t k, Rational prob) {
    if (k == depth) {
      const std::int64_t tn = t[static_cast<std::size_t>(n - 1)];
      const std::int64_t tnm = t.back();
      cross += prob * tn * tnm;
      mean_n += prob * tn;
      mean_nm += prob * tnm;
      return;
    }
    for (std::int64_t j = 1; j <= k; ++j) {
      t.push_back(1 + t[static_cast<std::size_t>(j - 1)]);
      walk(k + 1, prob / k);
      t.pop_back();
    }
  };
  walk(1, Rational(1));
  return cross - mean_n * mean_nm;
}

std::pair<Rational, Rational> law_moments(const std::map<Rational, Rational>& law) {
  Rational mean = 0;
  for (const auto& [v, p] : law) mean += v * p;
  Rational variance = 0;
  for (const auto& [v, p] : law) variance += (v - mean) * (v - mean) * p;
  return {mean, variance};
}

double ks_statistic(const Pmf& pmf, double mean, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("ks_statistic: sigma must be nonnegative");
  double worst = 0.0;
  double cdf_before = 0.0;
  CompensatedSum cdf;
  for (const auto& [x, p] : pmf.entries()) {
    cdf.add(p);
    double target = 0.0;
    if (sigma == 0.0) {
      const double v = static_cast<double>(x);
      target = v < mean ? 0.0 : (v > mean ? 1.0 : 0.5);
    } else {
      target = normal_cdf((static_cast<double>(x) - mean) / sigma);
    }
    worst = std::max(worst, std::abs(cdf_before - target));
    worst = std::max(worst, std::abs(cdf.value() - target));
    cdf_before = cdf.value();
  }
  return worst;
}

double tv_distance(const Pmf& a, const Pmf& b) {
  CompensatedSum total;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      total.add(ia->second);
      ++ia;
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      total.add(ib->second);
      ++ib;
    } else {
      total.add(std::abs(ia->second - ib->second));
      ++ia;
      ++ib;
    }
  }
  return total.value() / 2.0;
}

Rational tv_distance(const RationalPmf& a, const RationalPmf& b) {
  Rational total = 0;
  for (const auto& [v, p] : a.entries()) {
    const Rational d = p - b.at(v);
    total += d < 0 ? -d : d;
  }
  for (const auto& [v, p] : b.entries()) {
    if (a.at(v) == 0) total += p;
  }
  return total / 2;
}

ChiSquareResult chi_square(const std::map<std::int64_t, std::int64_t>& counts,
                           const Pmf& expected) {
  if (expected.empty()) throw std::invalid_argument("chi_square: empty expected pmf");
  std::int64_t samples = 0;
  for (const auto& [v, c] : counts) {
    if (c < 0) throw std::invalid_argument("chi_square: negative count");
    if (expected.at(v) <= 0.0) {
      throw std::invalid_argument("chi_square: observation outside the expected support");
    }
    samples += c;
  }
  if (samples == 0) throw std::invalid_argument("chi_square: no observations");

  // Pool adjacent support cells until each pooled expected count is >= 5.
  std::vector<std::pair<double, double>> pooled;  // (expected count, observed count)
  double exp_acc = 0.0;
  double obs_acc = 0.0;
  for (const auto& [v, p] : expected.entries()) {
    exp_acc += p * static_cast<double>(samples);
    auto it = counts.find(v);
    obs_acc += it == counts.end() ? 0.0 : static_cast<double>(it->second);
    if (exp_acc >= 5.0) {
      pooled.emplace_back(exp_acc, obs_acc);
      exp_acc = 0.0;
      obs_acc = 0.0;
    }
  }
  if (exp_acc > 0.0 || obs_acc > 0.0) {
    if (pooled.empty()) {
      pooled.emplace_back(exp_acc, obs_acc);
    } else {
      pooled.back().first += exp_acc;
      pooled.back().second += obs_acc;
    }
  }
  if (pooled.size() < 2) {
    throw std::invalid_argument("chi_square: fewer than two cells after pooling");
  }
  ChiSquareResult out;
  for (const auto& [expect, observe] : pooled) {
    const double d = observe - expect;
    out.statistic += d * d / expect;
  }
  out.dof = static_cast<std::int64_t>(pooled.size()) - 1;
  return out;
}

double chi_square_critical(std::int64_t dof, double quantile) {
  if (dof < 1) throw std::invalid_argument("chi_square_critical: dof must be >= 1");
  if (!(quantile > 0.0) || !(quantile < 1.0)) {
    throw std::invalid_argument("chi_square_critical: quantile must lie in (0, 1)");
  }
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
  return boost::math::quantile(dist, quantile);
}

IncrementTestResult martingale_increment_test(
    std::vector<std::pair<double, double>> level_and_next, int bins) {
  if (bins < 1) throw std::invalid_argument("martingale_increment_test: bins must be >= 1");
  const auto count = static_cast<std::int64_t>(level_and_next.size());
  if (count < 2 * bins) {
    throw std::invalid_argument("martingale_increment_test: too few samples for the bin count");
  }
  // Sort by level only: ordering ties by the next value would leak the
  // increment into the bin assignment and bias every boundary cell.
  std::sort(level_and_next.begin(), level_and_next.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  IncrementTestResult out;
  std::int64_t lo = 0;
  for (int b = 0; b < bins && lo < count; ++b) {
    auto hi = std::max(count * (b + 1) / bins, lo + 1);
    // Keep tied levels in one bin so membership is a function of the level.
    while (hi < count &&
           level_and_next[static_cast<std::size_t>(hi)].first ==
               level_and_next[static_cast<std::size_t>(hi - 1)].first) {
      ++hi;
    }
    if (b == bins - 1) hi = count;
    IncrementBin bin;
    bin.count = hi - lo;
    CompensatedSum level_sum;
    CompensatedSum delta_sum;
    for (auto i = lo; i < hi; ++i) {
      level_sum.add(level_and_next[static_cast<std::size_t>(i)].first);
      delta_sum.add(level_and_next[static_cast<std::size_t>(i)].second -
                    level_and_next[static_cast<std::size_t>(i)].first);
    }
    bin.level = level_sum.value() / static_cast<double>(bin.count);
    bin.mean_delta = delta_sum.value() / static_cast<double>(bin.count);
    CompensatedSum sq;
    for (auto i = lo; i < hi; ++i) {
      const double d = level_and_next[static_cast<std::size_t>(i)].second -
                       level_and_next[static_cast<std::size_t>(i)].first - bin.mean_delta;
      sq.add(d * d);
    }
    if (bin.count > 1) {
      const double var = sq.value() / static_cast<double>(bin.count - 1);
      bin.standard_error = std::sqrt(var / static_cast<double>(bin.count));
    }
    bin.z = bin.standard_error > 0.0 ? bin.mean_delta / bin.standard_error : 0.0;
    out.max_abs_z = std::max(out.max_abs_z, std::abs(bin.z));
    out.bins.push_back(bin);
    lo = hi;
  }
  return out;
}

}  // namespace revert::verify
