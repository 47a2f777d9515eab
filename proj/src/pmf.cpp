// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/pmf.hpp"

#include <cmath>

namespace revert {

void validate_pmf(const Pmf& pmf) {
  for (const auto& [v, p] : pmf.entries()) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("validate_pmf: negative or non-finite probability");
    }
  }
  if (std::abs(pmf.mass() - 1.0) > 1e-12) {
    throw std::invalid_argument("validate_pmf: total mass differs from 1 by more than 1e-12");
  }
}

void validate_pmf(const RationalPmf& pmf) {
  for (const auto& [v, p] : pmf.entries()) {
    if (p < 0) throw std::invalid_argument("validate_pmf: negative probability");
  }
  if (pmf.mass() != 1) {
    throw std::invalid_argument("validate_pmf: exact pmf must have total mass exactly 1");
  }
}

}  // namespace revert
