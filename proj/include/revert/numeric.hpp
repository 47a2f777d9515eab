// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace revert {

/// Neumaier-compensated accumulator; keeps long harmonic-type sums accurate.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// sum_{k=1}^{n} 1/k (compensated); 0 for n <= 0.
double harmonic(std::int64_t n);

/// sum_{k=1}^{n} 1/k^2 (compensated); 0 for n <= 0.
double harmonic_squares(std::int64_t n);

}  // namespace revert
