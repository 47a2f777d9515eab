// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/branching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "revert/clock.hpp"
#include "revert/numeric.hpp"
#include "revert/pmf.hpp"

namespace revert {

OffspringLaw OffspringLaw::from_atoms(std::vector<std::pair<std::int64_t, double>> atoms) {
  std::sort(atoms.begin(), atoms.end());
  OffspringLaw law;
  CompensatedSum total;
  for (const auto& [count, probability] : atoms) {
    if (count < 0) throw std::invalid_argument("OffspringLaw: negative offspring count");
    if (!(probability >= 0.0) || !std::isfinite(probability)) {
      throw std::invalid_argument("OffspringLaw: probabilities must be non-negative");
    }
    if (probability == 0.0) continue;
    if (!law.atoms_.empty() && law.atoms_.back().first == count) {
      throw std::invalid_argument("OffspringLaw: duplicate offspring count");
    }
    law.atoms_.emplace_back(count, probability);
    total.add(probability);
  }
  if (law.atoms_.empty()) throw std::invalid_argument("OffspringLaw: no support");
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("OffspringLaw: probabilities must sum to 1");
  }

  // Exact coefficients: dyadic conversions, slack folded into the
  // largest atom so they sum to exactly 1.
  Rational exact_total = 0;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < law.atoms_.size(); ++i) {
    law.exact_probabilities_.push_back(rational_from_double(law.atoms_[i].second));
    exact_total += law.exact_probabilities_.back();
    if (law.atoms_[i].second > law.atoms_[largest].second) largest = i;
  }
  law.exact_probabilities_[largest] += Rational(1) - exact_total;
  if (law.exact_probabilities_[largest] < 0) {
    throw std::invalid_argument("OffspringLaw: probabilities must sum to 1");
  }

  CompensatedSum running;
  for (const auto& [count, probability] : law.atoms_) {
    running.add(probability);
    law.cdf_.push_back(running.value());
  }
  law.cdf_.back() = 1.0;
  return law;
}

OffspringLaw OffspringLaw::deterministic(std::int64_t count) {
  return from_atoms({{count, 1.0}});
}

double OffspringLaw::pgf(double s) const {
  // Horner over the sparse atoms, highest count first.
  double acc = 0.0;
  std::int64_t degree = atoms_.back().first;
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
    acc *= std::pow(s, static_cast<double>(degree - it->first));
    acc += it->second;
    degree = it->first;
  }
  return acc * std::pow(s, static_cast<double>(degree));
}

Rational OffspringLaw::pgf_exact(const Rational& s) const {
  Rational acc = 0;
  std::int64_t degree = atoms_.back().first;
  for (std::size_t i = atoms_.size(); i-- > 0;) {
    acc *= rational_pow(s, degree - atoms_[i].first);
    acc += exact_probabilities_[i];
    degree = atoms_[i].first;
  }
  return acc * rational_pow(s, degree);
}

double OffspringLaw::mean() const {
  CompensatedSum acc;
  for (const auto& [count, probability] : atoms_) {
    acc.add(static_cast<double>(count) * probability);
  }
  return acc.value();
}

std::int64_t OffspringLaw::sample(RandomStream& rng) const {
  const double u = rng.uniform01();
  for (std::size_t i = 0; i + 1 < cdf_.size(); ++i) {
    if (u < cdf_[i]) return atoms_[i].first;
  }
  return atoms_.back().first;
}

GwTrajectory simulate_reverting_gw(std::int64_t n, const OffspringLaw& offspring,
                                   RandomStream& rng, std::int64_t population_cap) {
  if (n < 1) throw std::invalid_argument("simulate_reverting_gw: n must be positive");
  if (population_cap < 1) {
    throw std::invalid_argument("simulate_reverting_gw: population_cap must be positive");
  }
  GwTrajectory out;
  out.values.push_back(1);
  for (std::int64_t k = 1; k < n; ++k) {
    const std::int64_t target = rng.uniform_index(k);
    out.reversions.push_back(target);
    const std::int64_t parents = out.values[static_cast<std::size_t>(target - 1)];
    std::int64_t next = 0;
    for (std::int64_t i = 0; i < parents; ++i) next += offspring.sample(rng);
    out.values.push_back(next);
    if (next > population_cap) {
      out.capped = true;
      break;
    }
  }
  return out;
}

double gw_iterate(const OffspringLaw& offspring, std::int64_t t, double s) {
  if (t < 0) throw std::invalid_argument("gw_iterate: t must be non-negative");
  double value = s;
  for (std::int64_t i = 0; i < t; ++i) value = offspring.pgf(value);
  return value;
}

Rational gw_iterate_exact(const OffspringLaw& offspring, std::int64_t t, const Rational& s) {
  if (t < 0) throw std::invalid_argument("gw_iterate_exact: t must be non-negative");
  Rational value = s;
  for (std::int64_t i = 0; i < t; ++i) value = offspring.pgf_exact(value);
  return value;
}

double GwPolynomial::evaluate(double s) const {
  double acc = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * s + coefficients[i];
  return acc;
}

namespace {

// result += scale * a * b, shedding degrees above cap into *shed.
void accumulate_product(std::vector<double>& result, const std::vector<double>& a,
                        const std::vector<double>& b, double scale, std::size_t cap,
                        CompensatedSum* shed) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double term = scale * a[i] * b[j];
      if (term == 0.0) continue;
      if (i + j > cap) {
        shed->add(term);
      } else {
        result[i + j] += term;
      }
    }
  }
}

}  // namespace

GwPolynomial gw_iterate_poly(const OffspringLaw& offspring, std::int64_t t, int degree_cap) {
  if (t < 0) throw std::invalid_argument("gw_iterate_poly: t must be non-negative");
  if (degree_cap < 1) throw std::invalid_argument("gw_iterate_poly: degree_cap must be positive");
  if (degree_cap > kDegreeCap) {
    throw std::length_error("gw_iterate_poly: degree_cap exceeds the symbolic limit");
  }
  const auto cap = static_cast<std::size_t>(degree_cap);
  GwPolynomial out;
  out.coefficients = {0.0, 1.0};  // W^(0)(s) = s
  CompensatedSum shed;
  for (std::int64_t step = 0; step < t; ++step) {
    // W(C(s)) = sum_c P(Z = c) C(s)^c via running powers of C.
    std::vector<double> composed(cap + 1, 0.0);
    std::vector<double> power{1.0};
    std::int64_t exponent = 0;
    for (const auto& [count, probability] : offspring.atoms()) {
      while (exponent < count) {
        std::vector<double> next(std::min(power.size() + out.coefficients.size() - 1,
                                          cap + 1),
                                 0.0);
        accumulate_product(next, power, out.coefficients, 1.0, cap, &shed);
        power = std::move(next);
        ++exponent;
      }
      accumulate_product(composed, {probability}, power, 1.0, cap, &shed);
    }
    while (!composed.empty() && composed.back() == 0.0) composed.pop_back();
    if (composed.empty()) composed.push_back(0.0);
    out.coefficients = std::move(composed);
  }
  out.truncation_error = shed.value();
  return out;
}

double reverting_gw_pgf(std::int64_t n, const OffspringLaw& offspring, double s) {
  if (n < 1) throw std::invalid_argument("reverting_gw_pgf: n must be positive");
  const Pmf pmf = clock_pmf(n, n <= kExactPmfLimit ? 0.0 : 1e-15);
  CompensatedSum acc;
  double w = s;
  std::int64_t level = 0;
  for (const auto& [t, probability] : pmf.entries()) {
    while (level < t) {
      w = offspring.pgf(w);
      ++level;
    }
    acc.add(probability * w);
  }
  return acc.value();
}

Rational reverting_gw_pgf_exact(std::int64_t n, const OffspringLaw& offspring,
                                const Rational& s) {
  if (n < 1) throw std::invalid_argument("reverting_gw_pgf_exact: n must be positive");
  const RationalPmf pmf = clock_pmf_exact(n);
  Rational acc = 0;
  Rational w = s;
  std::int64_t level = 0;
  for (const auto& [t, probability] : pmf.entries()) {
    while (level < t) {
      w = offspring.pgf_exact(w);
      ++level;
    }
    acc += probability * w;
  }
  return acc;
}

double verify_H_recursion(std::int64_t n, const OffspringLaw& offspring,
                          const std::vector<double>& s_grid) {
  if (n < 1) throw std::invalid_argument("verify_H_recursion: n must be positive");
  if (n > kRecursionCheckLimit) {
    throw std::length_error("verify_H_recursion: n exceeds the recursion check limit");
  }
  double worst = 0.0;
  for (const double s : s_grid) {
    const double lhs = reverting_gw_pgf(n + 1, offspring, s);
    const double w = offspring.pgf(s);
    CompensatedSum rhs;
    for (std::int64_t k = 1; k <= n; ++k) {
      rhs.add(reverting_gw_pgf(k, offspring, w));
    }
    worst = std::max(worst, std::abs(lhs - rhs.value() / static_cast<double>(n)));
  }
  return worst;
}

double extinction_probability(std::int64_t n, const OffspringLaw& offspring) {
  return reverting_gw_pgf(n, offspring, 0.0);
}

Rational extinction_probability_exact(std::int64_t n, const OffspringLaw& offspring) {
  return reverting_gw_pgf_exact(n, offspring, Rational(0));
}

}  // namespace revert
