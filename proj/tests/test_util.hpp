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
#include <numbers>
#include <vector>

#include "qbrittle/circuit.hpp"
#include "qbrittle/rng.hpp"

namespace qbrittle::testing {

/// Random circuit of up to `max_gates` gates with angles in [-pi, pi].
inline Circuit random_circuit(Rng& rng, int n, std::size_t max_gates) {
  const std::size_t count = rng.below(max_gates + 1);
  std::vector<Gate> gates;
  for (std::size_t i = 0; i < count; ++i) {
    if (n >= 2 && rng.below(4) == 0) {
      const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (t >= c) ++t;
      gates.emplace_back(Cnot{c, t, 0});
    } else {
      gates.emplace_back(Rotation{kAxes[rng.below(3)], static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
                                  rng.uniform(-std::numbers::pi, std::numbers::pi), Provenance::Layered, 0});
    }
  }
  return Circuit(n, std::move(gates));
}

inline Gate rot(Axis a, int q, double theta) { return Rotation{a, q, theta, Provenance::Layered, 0}; }
inline Gate cx(int c, int t) { return Cnot{c, t, 0}; }

}  // namespace qbrittle::testing
