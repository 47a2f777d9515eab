// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace revert {

/// Library and CLI version, embedded in every machine-readable output.
inline constexpr const char* kVersionString = "0.1.0";

}  // namespace revert
