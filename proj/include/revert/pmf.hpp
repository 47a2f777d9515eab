// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

#include "revert/rational.hpp"

namespace revert {

/// Probability mass function on the integer lattice, templated on the scalar
/// so that the same code serves double pipelines and exact-rational ones.
template <class Scalar>
class BasicPmf {
 public:
  using value_type = std::int64_t;
  using map_type = std::map<value_type, Scalar>;

  BasicPmf() = default;

  static BasicPmf point_mass(value_type v) {
    BasicPmf pmf;
    pmf.entries_[v] = Scalar(1);
    return pmf;
  }

  void add(value_type v, const Scalar& p) {
    auto [it, inserted] = entries_.try_emplace(v, p);
    if (!inserted) it->second += p;
  }

  [[nodiscard]] const map_type& entries() const { return entries_; }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

  [[nodiscard]] Scalar at(value_type v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? Scalar(0) : it->second;
  }

  [[nodiscard]] Scalar mass() const {
    Scalar total(0);
    for (const auto& [v, p] : entries_) total += p;
    return total;
  }

  [[nodiscard]] Scalar mean() const {
    Scalar total(0);
    for (const auto& [v, p] : entries_) total += Scalar(v) * p;
    return total;
  }

  [[nodiscard]] Scalar second_moment() const {
    Scalar total(0);
    for (const auto& [v, p] : entries_) total += Scalar(v) * Scalar(v) * p;
    return total;
  }

  [[nodiscard]] Scalar variance() const {
    const Scalar m = mean();
    return second_moment() - m * m;
  }

  /// Multiply the generating function by (1 - p) + p s, i.e. add an
  /// independent Bernoulli(p) summand.
  void multiply_bernoulli(const Scalar& p) {
    const Scalar complement = Scalar(1) - p;
    map_type next;
    for (const auto& [v, prob] : entries_) {
      if (complement != Scalar(0)) next[v] += complement * prob;
      if (p != Scalar(0)) next[v + 1] += p * prob;
    }
    entries_ = std::move(next);
  }

  /// Distribution of the sum of independent draws from *this and other.
  [[nodiscard]] BasicPmf convolve(const BasicPmf& other) const {
    BasicPmf out;
    for (const auto& [a, pa] : entries_) {
      for (const auto& [b, pb] : other.entries_) {
        out.add(a + b, pa * pb);
      }
    }
    out.truncated_mass_ = truncated_mass_ + other.truncated_mass_;
    return out;
  }

  /// Drop entries with probability below tol; the dropped mass is returned
  /// and accumulated into truncated_mass().
  Scalar prune_below(const Scalar& tol) {
    Scalar dropped(0);
    for (auto it = entries_.begin(); it != entries_.end();) {
      if (it->second < tol) {
        dropped += it->second;
        it = entries_.erase(it);
      } else {
        ++it;
      }
    }
    truncated_mass_ += dropped;
    return dropped;
  }

  void scale(const Scalar& factor) {
    for (auto& [v, p] : entries_) p *= factor;
  }

  /// Mass removed by truncation anywhere upstream; 0 for exact pipelines.
  [[nodiscard]] Scalar truncated_mass() const { return truncated_mass_; }
  void set_truncated_mass(const Scalar& m) { truncated_mass_ = m; }

  bool operator==(const BasicPmf& other) const { return entries_ == other.entries_; }

 private:
  map_type entries_;
  Scalar truncated_mass_ = Scalar(0);
};

using Pmf = BasicPmf<double>;
using RationalPmf = BasicPmf<Rational>;

inline Pmf pmf_to_double(const RationalPmf& exact) {
  Pmf out;
  for (const auto& [v, p] : exact.entries()) out.add(v, to_double(p));
  out.set_truncated_mass(to_double(exact.truncated_mass()));
  return out;
}

/// Throws invalid_argument unless all probabilities are nonnegative and the
/// total mass is within 1e-12 of 1.
void validate_pmf(const Pmf& pmf);
void validate_pmf(const RationalPmf& pmf);

}  // namespace revert
