// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace revert {

/// Deterministic random stream: a (seed, stream) pair fully determines the
/// draw sequence on every platform.  Distinct stream ids give independent
/// streams for the same seed, which is how parallel workers are seeded.
///
/// Draw helpers are implemented here rather than with std::*_distribution
/// because the standard leaves those implementation-defined; bit-identical
/// output across library versions is part of this class's contract.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on {1, ..., n}.  Unbiased (multiply-with-rejection).
  std::int64_t uniform_index(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("uniform_index: n must be positive");
    const auto un = static_cast<std::uint64_t>(n);
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * un;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < un) {
      const std::uint64_t threshold = (0ULL - un) % un;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * un;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::int64_t>(m >> 64) + 1;
  }

  bool bernoulli(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli: p outside [0, 1]");
    return uniform01() < p;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace revert
