// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/laws.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "revert/numeric.hpp"

namespace revert {

ReversionLaw ReversionLaw::power_law(double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("power_law: beta must be finite");
  ReversionLaw law(Kind::kPowerLaw);
  law.beta_ = beta;
  return law;
}

ReversionLaw ReversionLaw::explicit_weights(std::vector<double> weights) {
  if (weights.empty()) throw std::invalid_argument("explicit_weights: empty weight table");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("explicit_weights: weights must be positive and finite");
    }
  }
  ReversionLaw law(Kind::kExplicitWeights);
  law.weights_ = std::move(weights);
  return law;
}

ReversionLaw ReversionLaw::occasional(double q) {
  if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("occasional: q must lie in (0, 1]");
  ReversionLaw law(Kind::kOccasional);
  law.q_ = q;
  return law;
}

double ReversionLaw::beta() const {
  if (kind_ != Kind::kPowerLaw) throw std::logic_error("beta: not a power law");
  return beta_;
}

double ReversionLaw::q() const {
  if (kind_ != Kind::kOccasional) throw std::logic_error("q: not an occasional law");
  return q_;
}

const std::vector<double>& ReversionLaw::weights() const {
  if (kind_ != Kind::kExplicitWeights) throw std::logic_error("weights: not an explicit-weight law");
  return weights_;
}

double ReversionLaw::weight(std::int64_t k) const {
  if (k < 1) throw std::invalid_argument("weight: index must be >= 1");
  switch (kind_) {
    case Kind::kUniform:
      return 1.0;
    case Kind::kPowerLaw:
      return std::pow(static_cast<double>(k), beta_);
    case Kind::kExplicitWeights:
      if (static_cast<std::size_t>(k) > weights_.size()) {
        throw std::out_of_range("weight: index beyond the weight table");
      }
      return weights_[static_cast<std::size_t>(k - 1)];
    case Kind::kOccasional:
      throw std::logic_error("weight: occasional law has no per-index weights");
  }
  throw std::logic_error("weight: unreachable");
}

std::string ReversionLaw::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::kUniform:
      out << "uniform";
      break;
    case Kind::kPowerLaw:
      out << "power:" << beta_;
      break;
    case Kind::kExplicitWeights:
      out << "weights[" << weights_.size() << "]";
      break;
    case Kind::kOccasional:
      out << "occasional:" << q_;
      break;
  }
  return out.str();
}

namespace {

std::vector<Rational> exact_weights(const ReversionLaw& law, std::int64_t n) {
  std::vector<Rational> weights(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) {
    Rational w;
    switch (law.kind()) {
      case ReversionLaw::Kind::kUniform:
        w = 1;
        break;
      case ReversionLaw::Kind::kPowerLaw: {
        const double beta = law.beta();
        if (beta != std::floor(beta) || std::abs(beta) > 64.0) {
          throw std::invalid_argument("exact mode needs a small integer power-law beta");
        }
        w = rational_pow(Rational(k), static_cast<long>(beta));
        break;
      }
      case ReversionLaw::Kind::kExplicitWeights:
        w = rational_from_double(law.weight(k));
        break;
      case ReversionLaw::Kind::kOccasional:
        throw std::logic_error("exact_weights: occasional law has no weights");
    }
    weights[static_cast<std::size_t>(k - 1)] = w;
  }
  return weights;
}

}  // namespace

std::vector<double> reversion_probabilities(const ReversionLaw& law, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("reversion_probabilities: n must be >= 1");
  if (!law.is_weighted()) {
    throw std::invalid_argument("reversion_probabilities: weighted laws only");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  CompensatedSum prefix;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double w = law.weight(k);
    prefix.add(w);
    out[static_cast<std::size_t>(k - 1)] = w / prefix.value();
  }
  return out;
}

std::vector<Rational> reversion_probabilities_exact(const ReversionLaw& law, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("reversion_probabilities_exact: n must be >= 1");
  if (!law.is_weighted()) {
    throw std::invalid_argument("reversion_probabilities_exact: weighted laws only");
  }
  const auto weights = exact_weights(law, n);
  std::vector<Rational> out(static_cast<std::size_t>(n));
  Rational prefix = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    prefix += weights[static_cast<std::size_t>(k - 1)];
    out[static_cast<std::size_t>(k - 1)] = weights[static_cast<std::size_t>(k - 1)] / prefix;
  }
  return out;
}

std::vector<Rational> reversion_distribution_exact(const ReversionLaw& law, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("reversion_distribution_exact: n must be >= 1");
  std::vector<Rational> out(static_cast<std::size_t>(n));
  if (law.kind() == ReversionLaw::Kind::kOccasional) {
    const Rational q = rational_from_double(law.q());
    for (auto& p : out) p = q / n;
    out.back() += 1 - q;
    return out;
  }
  const auto weights = exact_weights(law, n);
  Rational total = 0;
  for (const auto& w : weights) total += w;
  for (std::int64_t k = 1; k <= n; ++k) {
    out[static_cast<std::size_t>(k - 1)] = weights[static_cast<std::size_t>(k - 1)] / total;
  }
  return out;
}

std::int64_t sample_reversion(const ReversionLaw& law, std::int64_t n, RandomStream& rng) {
  ReversionSampler sampler(law);
  return sampler(n, rng);
}

ReversionSampler::ReversionSampler(ReversionLaw law) : law_(std::move(law)) {}

void ReversionSampler::extend(std::int64_t n) {
  while (cumulative_.size() < static_cast<std::size_t>(n)) {
    const auto k = static_cast<std::int64_t>(cumulative_.size()) + 1;
    const double x = law_.weight(k);
    const double prev = cumulative_.empty() ? 0.0 : cumulative_.back();
    double t = prev + x;
    if (std::abs(prev) >= std::abs(x)) {
      comp_ += (prev - t) + x;
    } else {
      comp_ += (x - t) + prev;
    }
    cumulative_.push_back(t);
  }
}

std::int64_t ReversionSampler::operator()(std::int64_t n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("ReversionSampler: n must be >= 1");
  switch (law_.kind()) {
    case ReversionLaw::Kind::kUniform:
      return rng.uniform_index(n);
    case ReversionLaw::Kind::kOccasional:
      // Gate first, then (only when reverting) the index draw.
      if (rng.bernoulli(law_.q())) return rng.uniform_index(n);
      return n;
    case ReversionLaw::Kind::kPowerLaw:
    case ReversionLaw::Kind::kExplicitWeights: {
      extend(n);
      const double total = cumulative_[static_cast<std::size_t>(n - 1)] + comp_;
      const double u = rng.uniform01() * total;
      auto first = cumulative_.begin();
      auto last = first + n;
      auto it = std::upper_bound(first, last, u);
      auto k = static_cast<std::int64_t>(it - first) + 1;
      return std::min(k, n);
    }
  }
  throw std::logic_error("ReversionSampler: unreachable");
}

StepLaw StepLaw::rademacher(double p) {
  if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("rademacher: p must lie in [0, 1]");
  StepLaw law(Kind::kRademacher);
  law.p_ = p;
  law.mean_ = 2.0 * p - 1.0;
  law.variance_ = 4.0 * p * (1.0 - p);
  return law;
}

StepLaw StepLaw::finite_discrete(std::vector<std::pair<std::int64_t, double>> support) {
  if (support.empty()) throw std::invalid_argument("finite_discrete: empty support");
  std::sort(support.begin(), support.end());
  for (std::size_t i = 1; i < support.size(); ++i) {
    if (support[i].first == support[i - 1].first) {
      throw std::invalid_argument("finite_discrete: duplicate support point");
    }
  }
  CompensatedSum mass;
  for (const auto& [value, prob] : support) {
    if (!(prob >= 0.0)) throw std::invalid_argument("finite_discrete: negative probability");
    mass.add(prob);
  }
  if (std::abs(mass.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("finite_discrete: probabilities must sum to 1 within 1e-12");
  }
  StepLaw law(Kind::kFiniteDiscrete);
  CompensatedSum mean;
  for (const auto& [value, prob] : support) mean.add(static_cast<double>(value) * prob);
  const double m = mean.value();
  CompensatedSum var;
  for (const auto& [value, prob] : support) {
    const double d = static_cast<double>(value) - m;
    var.add(d * d * prob);
  }
  law.mean_ = m;
  law.variance_ = var.value();
  CompensatedSum cdf;
  for (const auto& [value, prob] : support) {
    cdf.add(prob);
    law.support_cdf_.push_back(cdf.value());
  }
  law.support_cdf_.back() = 1.0;  // guard the final bin against rounding
  law.support_ = std::move(support);
  return law;
}

StepLaw StepLaw::general(std::function<double(RandomStream&)> sampler, std::optional<double> mean,
                         std::optional<double> variance) {
  if (!sampler) throw std::invalid_argument("general: sampler must be callable");
  if (mean.has_value() != variance.has_value()) {
    throw std::invalid_argument("general: declare both moments or neither");
  }
  StepLaw law(Kind::kGeneral);
  law.sampler_ = std::move(sampler);
  law.mean_ = mean;
  law.variance_ = variance;
  return law;
}

double StepLaw::rademacher_p() const {
  if (kind_ != Kind::kRademacher) throw std::logic_error("rademacher_p: wrong step-law kind");
  return p_;
}

const std::vector<std::pair<std::int64_t, double>>& StepLaw::support() const {
  if (kind_ != Kind::kFiniteDiscrete) throw std::logic_error("support: wrong step-law kind");
  return support_;
}

double StepLaw::sample(RandomStream& rng) const {
  switch (kind_) {
    case Kind::kRademacher:
      return rng.bernoulli(p_) ? 1.0 : -1.0;
    case Kind::kFiniteDiscrete: {
      const double u = rng.uniform01();
      auto it = std::upper_bound(support_cdf_.begin(), support_cdf_.end(), u);
      if (it == support_cdf_.end()) --it;
      return static_cast<double>(
          support_[static_cast<std::size_t>(it - support_cdf_.begin())].first);
    }
    case Kind::kGeneral:
      return sampler_(rng);
  }
  throw std::logic_error("StepLaw::sample: unreachable");
}

double StepLaw::mean() const {
  if (!mean_) throw std::logic_error("StepLaw::mean: moments not declared");
  return *mean_;
}

double StepLaw::variance() const {
  if (!variance_) throw std::logic_error("StepLaw::variance: moments not declared");
  return *variance_;
}

std::pair<double, double> step_moments(const StepLaw& law) { return {law.mean(), law.variance()}; }

}  // namespace revert
