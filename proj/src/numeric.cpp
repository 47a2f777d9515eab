// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/numeric.hpp"

namespace revert {

double harmonic(std::int64_t n) {
  CompensatedSum s;
  for (std::int64_t k = 1; k <= n; ++k) s.add(1.0 / static_cast<double>(k));
  return s.value();
}

double harmonic_squares(std::int64_t n) {
  CompensatedSum s;
  for (std::int64_t k = 1; k <= n; ++k) {
    double kk = static_cast<double>(k);
    s.add(1.0 / (kk * kk));
  }
  return s.value();
}

}  // namespace revert
