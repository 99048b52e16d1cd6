// Copyright 2026 The qbrittle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace qbrittle {

/// Seeded 64-bit Mersenne Twister with distribution mappings written out
/// explicitly, so a given seed yields the same stream on every standard
/// library (std::uniform_*_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on the closed interval [lo, hi] using the top 53 bits.
  double uniform(double lo, double hi) {
    constexpr double kScale = 1.0 / static_cast<double>((std::uint64_t{1} << 53) - 1);
    const double u = static_cast<double>(next() >> 11) * kScale;
    return lo + u * (hi - lo);
  }

  /// Uniform on the half-open interval [0, 1).
  double unit() {
    constexpr double kScale = 1.0 / static_cast<double>(std::uint64_t{1} << 53);
    return static_cast<double>(next() >> 11) * kScale;
  }

  /// Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qbrittle
