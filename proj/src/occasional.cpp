// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/occasional.hpp"

#include <cmath>
#include <stdexcept>

#include "revert/clock.hpp"
#include "revert/numeric.hpp"

namespace revert {
namespace {

void require_positive_n(std::int64_t n, const char* where) {
  if (n < 1) throw std::invalid_argument(std::string(where) + ": n must be >= 1");
}

void require_gate_probability(double q, const char* where) {
  if (!(q > 0.0) || q > 1.0) {
    throw std::invalid_argument(std::string(where) + ": q must lie in (0, 1]");
  }
}

}  // namespace

std::int64_t OccasionalTrace::reversion_count(std::int64_t k) const {
  if (k < 1 || k > n()) throw std::out_of_range("reversion_count: stage outside the trace");
  std::int64_t count = 0;
  for (std::int64_t j = 1; j <= k && j <= static_cast<std::int64_t>(gates.size()); ++j) {
    count += gates[static_cast<std::size_t>(j - 1)];
  }
  return count;
}

std::vector<std::int64_t> OccasionalTrace::reversion_times() const {
  std::vector<std::int64_t> out;
  for (std::size_t j = 0; j < gates.size(); ++j) {
    if (gates[j]) out.push_back(static_cast<std::int64_t>(j) + 1);
  }
  return out;
}

std::vector<std::int64_t> OccasionalTrace::intervals() const {
  std::vector<std::int64_t> out;
  std::int64_t last = 0;
  for (std::int64_t stage : reversion_times()) {
    out.push_back(stage - last);
    last = stage;
  }
  return out;
}

OccasionalTrace simulate_occasional(std::int64_t n, double q, RandomStream& rng) {
  require_positive_n(n, "simulate_occasional");
  require_gate_probability(q, "simulate_occasional");
  OccasionalTrace out;
  out.q = q;
  out.values.reserve(static_cast<std::size_t>(n));
  out.values.push_back(0);
  for (std::int64_t k = 1; k < n; ++k) {
    const bool gate = rng.bernoulli(q);
    const std::int64_t target = gate ? rng.uniform_index(k) : k;
    out.gates.push_back(gate ? 1 : 0);
    out.targets.push_back(target);
    out.values.push_back(1 + out.values[static_cast<std::size_t>(target - 1)]);
  }
  return out;
}

RationalPmf occasional_pmf_exact(std::int64_t n, double q) {
  require_positive_n(n, "occasional_pmf_exact");
  require_gate_probability(q, "occasional_pmf_exact");
  if (n > kExactPmfLimit) {
    throw std::length_error("occasional_pmf_exact: n exceeds the exact-mode limit");
  }
  const Rational qr = rational_from_double(q);
  const Rational pr = 1 - qr;
  // Coefficient vectors of G_j and of the running sum over k <= j.
  std::vector<Rational> current{Rational(1)};  // G_1 = 1
  std::vector<Rational> running{Rational(1)};
  for (std::int64_t j = 1; j < n; ++j) {
    std::vector<Rational> next(current.size() + 1, Rational(0));
    const Rational mix = qr / j;
    for (std::size_t i = 0; i < current.size(); ++i) {
      // s * (p G_j + (q/j) sum G_k); the running sum support never exceeds
      // G_j's, so a single shifted pass covers both terms.
      next[i + 1] = pr * current[i] + mix * running[i];
    }
    current = std::move(next);
    if (running.size() < current.size()) running.resize(current.size(), Rational(0));
    for (std::size_t i = 0; i < current.size(); ++i) running[i] += current[i];
  }
  RationalPmf out;
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (current[i] != 0) out.add(static_cast<std::int64_t>(i), current[i]);
  }
  return out;
}

Pmf occasional_pmf(std::int64_t n, double q, double tail_tolerance) {
  require_positive_n(n, "occasional_pmf");
  require_gate_probability(q, "occasional_pmf");
  if (tail_tolerance < 0.0 || !std::isfinite(tail_tolerance)) {
    throw std::invalid_argument("occasional_pmf: tail_tolerance must be nonnegative");
  }
  if (tail_tolerance == 0.0 && n <= kExactPmfLimit) {
    return pmf_to_double(occasional_pmf_exact(n, q));
  }

  const double p = 1.0 - q;
  std::vector<double> current{1.0};
  std::vector<double> running{1.0};
  for (std::int64_t j = 1; j < n; ++j) {
    std::vector<double> next(current.size() + 1, 0.0);
    const double mix = q / static_cast<double>(j);
    for (std::size_t i = 0; i < current.size(); ++i) {
      next[i + 1] = p * current[i] + mix * running[i];
    }
    current = std::move(next);
    if (running.size() < current.size()) running.resize(current.size(), 0.0);
    for (std::size_t i = 0; i < current.size(); ++i) running[i] += current[i];
  }

  double dropped = 0.0;
  double kept = 0.0;
  for (auto& c : current) {
    if (c < tail_tolerance) {
      dropped += c;
      c = 0.0;
    } else {
      kept += c;
    }
  }
  if (!(kept > 0.0)) throw std::runtime_error("occasional_pmf: tolerance removed every atom");
  Pmf out;
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (current[i] > 0.0) out.add(static_cast<std::int64_t>(i), current[i] / kept);
  }
  out.set_truncated_mass(dropped);
  return out;
}

double occasional_bivariate_gf(double s, double z, double q) {
  require_gate_probability(q, "occasional_bivariate_gf");
  if (!(s >= 0.0) || s > 1.0) {
    throw std::invalid_argument("occasional_bivariate_gf: s must lie in [0, 1]");
  }
  if (!(z >= 0.0) || z >= 1.0) {
    throw std::invalid_argument("occasional_bivariate_gf: z must lie in [0, 1)");
  }
  const double p = 1.0 - q;
  const double sp = s * p;
  if (std::abs(1.0 - sp) < 1e-14) {
    throw std::invalid_argument("occasional_bivariate_gf: singular parameter s p = 1");
  }
  const double first = std::pow(1.0 - sp * z, (s - 1.0) / (1.0 - sp));
  const double second = std::pow(1.0 - z, -q * s / (1.0 - sp));
  return first * second;
}

std::complex<double> occasional_char_function(double theta, double z, double q) {
  require_gate_probability(q, "occasional_char_function");
  if (!(z >= 0.0) || z >= 1.0) {
    throw std::invalid_argument("occasional_char_function: z must lie in [0, 1)");
  }
  const double p = 1.0 - q;
  const std::complex<double> s = std::polar(1.0, theta);
  const std::complex<double> sp = s * p;
  if (std::abs(1.0 - sp) < 1e-14) {
    throw std::invalid_argument("occasional_char_function: singular parameter s p = 1");
  }
  const std::complex<double> one(1.0, 0.0);
  return std::pow(one - sp * z, (s - one) / (one - sp)) *
         std::pow(std::complex<double>(1.0 - z, 0.0), -q * s / (one - sp));
}

OccasionalMoments occasional_moments(std::int64_t n, double q) {
  require_positive_n(n, "occasional_moments");
  require_gate_probability(q, "occasional_moments");
  const double p = 1.0 - q;
  double m = 0.0;  // m_j
  double w = 0.0;  // w_j
  CompensatedSum m_sum;  // sum_{k<=j} m_k
  CompensatedSum w_sum;  // sum_{k<=j} w_k
  double p_pow = 1.0;    // p^j
  for (std::int64_t j = 1; j < n; ++j) {
    m_sum.add(m);
    w_sum.add(w);
    p_pow *= p;
    const double next_w = 1.0 + 2.0 * p * m + p * w +
                          (2.0 * q / static_cast<double>(j)) * m_sum.value() +
                          (q / static_cast<double>(j)) * w_sum.value();
    m += (1.0 - p_pow) / (q * static_cast<double>(j));
    w = next_w;
  }
  OccasionalMoments out;
  out.n = n;
  out.q = q;
  out.mean = m;
  out.second_moment = w;
  out.variance = w - m * m;
  out.ratio = m > 0.0 ? w / (m * m) : 0.0;
  return out;
}

std::pair<Rational, Rational> occasional_moments_exact(std::int64_t n, double q) {
  require_positive_n(n, "occasional_moments_exact");
  require_gate_probability(q, "occasional_moments_exact");
  const Rational qr = rational_from_double(q);
  const Rational pr = 1 - qr;
  Rational m = 0;
  Rational w = 0;
  Rational m_sum = 0;
  Rational w_sum = 0;
  Rational p_pow = 1;
  for (std::int64_t j = 1; j < n; ++j) {
    m_sum += m;
    w_sum += w;
    p_pow *= pr;
    const Rational next_w =
        1 + 2 * pr * m + pr * w + Rational(2) * qr / j * m_sum + qr / j * w_sum;
    m += (1 - p_pow) / (qr * j);
    w = next_w;
  }
  return {m, w};
}

double occasional_w_closed_form(std::int64_t n, double q) {
  require_positive_n(n, "occasional_w_closed_form");
  require_gate_probability(q, "occasional_w_closed_form");
  const double p = 1.0 - q;
  CompensatedSum w;       // w_j, accumulated increment by increment
  double m = 0.0;         // m_j
  double d = 0.0;         // D_j = sum_{k<=j} p^(j-k) m_k
  double p_pow = 1.0;     // p^j
  for (std::int64_t j = 1; j < n; ++j) {
    d = p * d + m;
    p_pow *= p;
    const double inc = (1.0 + p) * (1.0 - p_pow) / (q * q * static_cast<double>(j)) -
                       2.0 * p_pow / q + 2.0 * d / static_cast<double>(j);
    w.add(inc);
    m += (1.0 - p_pow) / (q * static_cast<double>(j));
  }
  return w.value();
}

std::int64_t backward_chain_sample(std::int64_t n, double q, RandomStream& rng) {
  require_positive_n(n, "backward_chain_sample");
  require_gate_probability(q, "backward_chain_sample");
  const double p = 1.0 - q;
  bool state = rng.bernoulli(p + q / static_cast<double>(n));
  std::int64_t total = state ? 1 : 0;
  for (std::int64_t k = 1; k < n; ++k) {
    const double denom = static_cast<double>(n - k);
    const double success = state ? p + q / denom : 1.0 / denom;
    state = rng.bernoulli(success);
    if (state) ++total;
  }
  return total;
}

RationalPmf backward_chain_distribution(std::int64_t n, double q) {
  require_positive_n(n, "backward_chain_distribution");
  require_gate_probability(q, "backward_chain_distribution");
  const Rational qr = rational_from_double(q);
  const Rational pr = 1 - qr;
  // Joint law of (partial sum of Z over positions > current, current state).
  RationalPmf with_one;   // current Z = 1, partial sum includes it
  RationalPmf with_zero;  // current Z = 0
  const Rational initial = pr + qr / n;
  with_one.add(1, initial);
  with_zero.add(0, 1 - initial);
  for (std::int64_t k = 1; k < n; ++k) {
    const Rational pi11 = pr + qr / (n - k);
    const Rational pi01 = Rational(1, n - k);
    RationalPmf next_one;
    RationalPmf next_zero;
    for (const auto& [sum, prob] : with_one.entries()) {
      if (pi11 != 0) next_one.add(sum + 1, prob * pi11);
      if (pi11 != 1) next_zero.add(sum, prob * (1 - pi11));
    }
    for (const auto& [sum, prob] : with_zero.entries()) {
      next_one.add(sum + 1, prob * pi01);
      if (pi01 != 1) next_zero.add(sum, prob * (1 - pi01));
    }
    with_one = std::move(next_one);
    with_zero = std::move(next_zero);
  }
  RationalPmf out;
  for (const auto& [sum, prob] : with_one.entries()) out.add(sum, prob);
  for (const auto& [sum, prob] : with_zero.entries()) {
    if (prob != 0) out.add(sum, prob);
  }
  return out;
}

DobrushinDiagnostic dobrushin_diagnostic(std::int64_t n, double q) {
  if (n < 2) throw std::invalid_argument("dobrushin_diagnostic: n must be >= 2");
  require_gate_probability(q, "dobrushin_diagnostic");
  const double p = 1.0 - q;
  DobrushinDiagnostic out;
  out.n = n;
  out.q = q;

  // alpha = min over backward steps of 1 - max column gap between the rows;
  // both columns give the same gap |pi11 - pi01| = p (j - 1)/j at distance j.
  double alpha = 1.0;
  for (std::int64_t k = 1; k < n; ++k) {
    const double j = static_cast<double>(n - k);
    alpha = std::min(alpha, 1.0 - p * (j - 1.0) / j);
  }
  out.alpha = alpha;

  // Exact marginals by propagating P(Z = 1) backwards from position n.
  CompensatedSum var_sum;
  double pz = p + q / static_cast<double>(n);
  var_sum.add(pz * (1.0 - pz));
  for (std::int64_t k = 1; k < n; ++k) {
    const double denom = static_cast<double>(n - k);
    pz = pz * (p + q / denom) + (1.0 - pz) / denom;
    var_sum.add(pz * (1.0 - pz));
  }
  out.var_sum = var_sum.value();

  CompensatedSum lower;
  for (std::int64_t j = 2; j < n; ++j) {
    const double jd = static_cast<double>(j);
    lower.add(q * (jd - 1.0) / (jd * jd));
  }
  out.var_sum_lower_bound = lower.value();
  out.condition_value = alpha * alpha * alpha * out.var_sum;
  return out;
}

std::vector<OccasionalMartingaleEntry> occasional_martingale_trace(std::int64_t reversions,
                                                                   double q, RandomStream& rng,
                                                                   double series_tolerance) {
  if (reversions < 1) {
    throw std::invalid_argument("occasional_martingale_trace: reversions must be >= 1");
  }
  if (!(q > 0.0) || !(q < 1.0)) {
    throw std::invalid_argument("occasional_martingale_trace: q must lie in (0, 1)");
  }
  if (!(series_tolerance > 0.0)) {
    throw std::invalid_argument(
        "occasional_martingale_trace: series_tolerance must be positive");
  }
  const double p = 1.0 - q;

  // Truncated correction series sum_r q p^(r-1) r (r+1) / (2 (stage + r)).
  // After R terms the ratio of consecutive terms is below p (R+3)/(R+1), so
  // once that is under 1 the geometric majorant bounds the tail.
  auto correction_series = [&](std::int64_t stage, double& tail_bound) {
    CompensatedSum series;
    double power = 1.0;  // p^(r-1)
    for (std::int64_t r = 1;; ++r) {
      const double term = q * power * static_cast<double>(r) * static_cast<double>(r + 1) /
                          (2.0 * static_cast<double>(stage + r));
      series.add(term);
      power *= p;
      const double next_term = q * power * static_cast<double>(r + 1) *
                               static_cast<double>(r + 2) /
                               (2.0 * static_cast<double>(stage + r + 1));
      const double ratio_cap = p * static_cast<double>(r + 3) / static_cast<double>(r + 1);
      if (ratio_cap < 1.0) {
        const double bound = next_term / (1.0 - ratio_cap);
        if (bound < series_tolerance) {
          tail_bound += bound;
          return series.value();
        }
      }
    }
  };

  std::vector<OccasionalMartingaleEntry> out;
  out.reserve(static_cast<std::size_t>(reversions));
  std::vector<std::int64_t> values{0};  // T_1..T_k as the clock grows
  std::int64_t integral = 0;            // sum of values
  std::int64_t epoch = 0;
  std::int64_t previous_stage = 0;
  std::int64_t previous_integral = 0;
  CompensatedSum correction;
  double truncation = 0.0;
  for (std::int64_t stage = 1; epoch < reversions; ++stage) {
    const bool gate = rng.bernoulli(q);
    const std::int64_t target = gate ? rng.uniform_index(stage) : stage;
    // integral tracks sum_{j<=stage} T_j before appending T_{stage+1}.
    if (gate) {
      ++epoch;
      if (epoch == 1) {
        // No reversions yet: the clock climbed 0, 1, ..., stage - 1.
        if (integral != stage * (stage - 1) / 2) {
          throw std::logic_error("occasional_martingale_trace: initial ramp identity violated");
        }
      }
      if (epoch >= 2) {
        // Between consecutive reversions the clock climbs by one per stage,
        // which forces an arithmetic-series identity on the integral.
        const std::int64_t gap = stage - previous_stage;
        const std::int64_t first = values[static_cast<std::size_t>(previous_stage)];
        const std::int64_t expected = gap * first + gap * (gap - 1) / 2;
        if (integral - previous_integral != expected) {
          throw std::logic_error("occasional_martingale_trace: integral identity violated");
        }
        correction.add(correction_series(previous_stage, truncation));
      }
      OccasionalMartingaleEntry entry;
      entry.epoch = epoch;
      entry.stage = stage;
      entry.s = integral;
      entry.correction = correction.value();
      entry.truncation_error = truncation;
      entry.m = static_cast<double>(integral) / static_cast<double>(stage) - entry.correction;
      out.push_back(entry);
      previous_stage = stage;
      previous_integral = integral;
    }
    values.push_back(1 + values[static_cast<std::size_t>(target - 1)]);
    integral += values.back();
  }
  return out;
}

}  // namespace revert
