// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace revert::verify {

/// Outcome of one named consistency check.  `detail` is empty on success
/// and carries a human-readable diagnosis on failure.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The individually runnable suites, in execution order.
const std::vector<std::string>& suite_names();

/// Runs one suite ("clock", "walk", "integral", "occasional", "branching")
/// or every suite in order ("all").  Checks use fixed seeds, so results are
/// reproducible; a check that throws is reported as a failure, not a crash.
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace revert::verify
