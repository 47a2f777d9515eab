// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "revert/random.hpp"
#include "revert/rational.hpp"

namespace revert {

/// Law of the reverted-to index.  Four kinds:
///  - Uniform:          U(n) uniform on {1, ..., n}
///  - PowerLaw(beta):   P(U(n) = k) proportional to k^beta
///  - ExplicitWeights:  P(U(n) = k) proportional to a user weight table
///  - Occasional(q):    V(n) = U(n) with probability q, else n (no reversion)
class ReversionLaw {
 public:
  enum class Kind { kUniform, kPowerLaw, kExplicitWeights, kOccasional };

  static ReversionLaw uniform() { return ReversionLaw(Kind::kUniform); }

  static ReversionLaw power_law(double beta);

  /// weights[k-1] is the (positive, finite) weight of index k.
  static ReversionLaw explicit_weights(std::vector<double> weights);

  /// q in (0, 1]: probability that a step reverts at all.
  static ReversionLaw occasional(double q);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double beta() const;
  [[nodiscard]] double q() const;
  [[nodiscard]] const std::vector<double>& weights() const;

  /// True for the kinds driven by per-index weights (everything but Occasional).
  [[nodiscard]] bool is_weighted() const { return kind_ != Kind::kOccasional; }

  /// alpha_k for weighted kinds.  Explicit weights must cover k.
  [[nodiscard]] double weight(std::int64_t k) const;

  [[nodiscard]] std::string describe() const;

  bool operator==(const ReversionLaw& other) const = default;

 private:
  explicit ReversionLaw(Kind kind) : kind_(kind) {}

  Kind kind_;
  double beta_ = 0.0;
  double q_ = 1.0;
  std::vector<double> weights_;
};

/// Success probabilities of the Bernoulli representation: p_k = alpha_k /
/// sum_{j<=k} alpha_j for k = 1..n, so p_1 = 1 always.  Weighted laws only.
std::vector<double> reversion_probabilities(const ReversionLaw& law, std::int64_t n);

/// Exact version.  Weighted laws need exactly representable weights: Uniform,
/// PowerLaw with integer beta, or ExplicitWeights (doubles are dyadic, hence
/// exact).
std::vector<Rational> reversion_probabilities_exact(const ReversionLaw& law, std::int64_t n);

/// Exact branch distribution of one draw: P(V(n) = k) for k = 1..n.  Same
/// weight restrictions as reversion_probabilities_exact; for Occasional the
/// dyadic value of q is used.
std::vector<Rational> reversion_distribution_exact(const ReversionLaw& law, std::int64_t n);

/// One draw of V(n).  For Occasional the gate is drawn first, then the index.
std::int64_t sample_reversion(const ReversionLaw& law, std::int64_t n, RandomStream& rng);

/// Sampler with cached prefix weight sums; use for repeated draws with
/// growing n (trajectory simulation).  Stateless for Uniform/Occasional.
class ReversionSampler {
 public:
  explicit ReversionSampler(ReversionLaw law);

  std::int64_t operator()(std::int64_t n, RandomStream& rng);

  [[nodiscard]] const ReversionLaw& law() const { return law_; }

 private:
  void extend(std::int64_t n);

  ReversionLaw law_;
  std::vector<double> cumulative_;  // cumulative_[k-1] = alpha_1 + ... + alpha_k
  double comp_ = 0.0;               // Neumaier carry for the prefix sums
};

/// Law of one walk step X.
class StepLaw {
 public:
  enum class Kind { kRademacher, kFiniteDiscrete, kGeneral };

  /// P(X = +1) = p, P(X = -1) = 1 - p.
  static StepLaw rademacher(double p);

  /// Finite integer support as (value, probability) pairs; probabilities must
  /// sum to 1 within 1e-12.
  static StepLaw finite_discrete(std::vector<std::pair<std::int64_t, double>> support);

  /// Arbitrary sampler with optionally declared moments.
  static StepLaw general(std::function<double(RandomStream&)> sampler,
                         std::optional<double> mean = std::nullopt,
                         std::optional<double> variance = std::nullopt);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double rademacher_p() const;
  [[nodiscard]] const std::vector<std::pair<std::int64_t, double>>& support() const;

  [[nodiscard]] double sample(RandomStream& rng) const;

  [[nodiscard]] bool has_moments() const { return mean_.has_value(); }
  [[nodiscard]] double mean() const;
  [[nodiscard]] double variance() const;

 private:
  explicit StepLaw(Kind kind) : kind_(kind) {}

  Kind kind_;
  double p_ = 0.5;
  std::vector<std::pair<std::int64_t, double>> support_;
  std::vector<double> support_cdf_;
  std::function<double(RandomStream&)> sampler_;
  std::optional<double> mean_;
  std::optional<double> variance_;
};

inline double step_sample(const StepLaw& law, RandomStream& rng) { return law.sample(rng); }

/// (mean, variance); throws logic_error when the law has no declared moments.
std::pair<double, double> step_moments(const StepLaw& law);

}  // namespace revert
