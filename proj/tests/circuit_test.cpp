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

#include "qbrittle/circuit.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace qbrittle {
namespace {

using testing::cx;
using testing::rot;

TEST(GenerateUniform, PublishedGateCounts) {
  EXPECT_EQ(generate_uniform({10, 2.3, 0.28, 1}).size(), 342u);
  EXPECT_EQ(generate_uniform({12, 2.5, 0.25, 1}).size(), 537u);
  EXPECT_EQ(generate_uniform({14, 3.0, 0.2, 1}).size(), 877u);
}

TEST(GenerateUniform, SingleLayerHasNoEntangler) {
  const Circuit c = generate_uniform({4, 0.25, 0.0, 9});
  ASSERT_EQ(c.size(), 4u);
  for (const Gate& g : c.gates()) {
    ASSERT_TRUE(is_rotation(g));
    EXPECT_EQ(std::get<Rotation>(g).provenance, Provenance::Layered);
  }
}

TEST(GenerateUniform, GateCountClosedFormOverGrid) {
  for (int n : {4, 6, 8, 10, 12}) {
    for (double alpha : {0.25, 0.5, 1.0, 1.7, 2.3, 3.0}) {
      for (double rho : {0.0, 0.1, 0.25, 0.5, 1.0}) {
        const GenerationParams p{n, alpha, rho, 17};
        if (layer_count(p) < 1) continue;
        const int layers = layer_count(p);
        const std::size_t expected = static_cast<std::size_t>(
            layers * n + (layers - 1) * (n / 2) + static_cast<int>(std::floor(n * rho + 1e-9)));
        EXPECT_EQ(generate_uniform(p).size(), expected) << n << " " << alpha << " " << rho;
      }
    }
  }
}

TEST(GenerateUniform, RejectsOddOrTinyRegisters) {
  EXPECT_THROW(generate_uniform({11, 2.3, 0.28, 0}), InvalidParameter);
  EXPECT_THROW(generate_uniform({2, 2.3, 0.28, 0}), InvalidParameter);
  EXPECT_THROW(generate_uniform({10, 0.0, 0.28, 0}), InvalidParameter);
  EXPECT_THROW(generate_uniform({10, 2.3, 1.5, 0}), InvalidParameter);
  EXPECT_THROW(generate_uniform({10, 0.05, 0.28, 0}), InvalidParameter);  // floor(n*alpha) = 0
}

TEST(GenerateUniform, AnglesFollowTheTwoBranchRule) {
  const Circuit c = generate_uniform({12, 2.5, 0.25, 3});
  for (const Gate& g : c.gates()) {
    const auto* r = std::get_if<Rotation>(&g);
    if (!r) continue;
    EXPECT_GT(r->theta, 0.0);
    EXPECT_LE(r->theta, std::numbers::pi / 2);
    if (r->provenance == Provenance::Appended) {
      EXPECT_EQ(r->axis, Axis::Z);
      EXPECT_GE(r->theta, 0.001);
      EXPECT_LE(r->theta, 0.01);
    } else {
      const bool small = r->theta >= 0.001 && r->theta <= 0.05;
      const bool large = r->theta >= std::numbers::pi / 6 && r->theta <= std::numbers::pi / 2;
      EXPECT_TRUE(small || large) << r->theta;
    }
  }
}

TEST(GenerateUniform, RingBrickWallSkeleton) {
  const Circuit c = generate_uniform({6, 0.5, 0.0, 1});  // L = 3
  std::vector<std::pair<int, int>> pairs;
  for (const Gate& g : c.gates()) {
    if (const auto* x = std::get_if<Cnot>(&g)) pairs.emplace_back(x->control, x->target);
  }
  const std::vector<std::pair<int, int>> expected = {{0, 1}, {2, 3}, {4, 5}, {1, 2}, {3, 4}, {5, 0}};
  EXPECT_EQ(pairs, expected);
}

TEST(GenerateUniform, SameSeedIsBitExact) {
  const GenerationParams p{10, 2.3, 0.28, 42};
  EXPECT_EQ(generate_uniform(p), generate_uniform(p));
}

TEST(GenerateUniform, SeedsVaryOnlyMicroscopicDetails) {
  const Circuit a = generate_uniform({10, 2.3, 0.28, 1});
  const Circuit b = generate_uniform({10, 2.3, 0.28, 2});
  ASSERT_EQ(a.size(), b.size());
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].index(), b[i].index()) << i;
    if (const auto* x = std::get_if<Cnot>(&a[i])) {
      EXPECT_EQ(*x, std::get<Cnot>(b[i])) << i;
    } else {
      any_difference |= !(std::get<Rotation>(a[i]) == std::get<Rotation>(b[i]));
    }
  }
  EXPECT_TRUE(any_difference);
}

TEST(GenerateUniform, SmallAngleFractionConcentratesOnRho) {
  const GenerationParams base{10, 2.3, 0.28, 0};
  const double ln = layer_count(base) * base.n;
  double sum = 0.0;
  constexpr int kCircuits = 40;
  for (int s = 0; s < kCircuits; ++s) {
    const Circuit c = generate_uniform({10, 2.3, 0.28, static_cast<std::uint64_t>(s)});
    int small = 0;
    for (const Gate& g : c.gates()) {
      const auto* r = std::get_if<Rotation>(&g);
      if (r && r->provenance == Provenance::Layered && r->theta <= 0.05) ++small;
    }
    sum += small / ln;
  }
  const double tolerance = 3.0 * std::sqrt(0.28 * 0.72 / ln);
  EXPECT_NEAR(sum / kCircuits, 0.28, tolerance);
}

TEST(CircuitDepth, Basics) {
  EXPECT_EQ(circuit_depth(Circuit(2, {})), 0u);
  EXPECT_EQ(circuit_depth(Circuit(2, {rot(Axis::X, 0, 1.0)})), 1u);
  EXPECT_EQ(circuit_depth(Circuit(3, {rot(Axis::X, 0, 1.0), rot(Axis::X, 2, 1.0), cx(0, 1), rot(Axis::Y, 2, 1.0)})),
            2u);
  EXPECT_EQ(circuit_depth(Circuit(3, {cx(0, 1), cx(1, 2), rot(Axis::Z, 0, 1.0)})), 2u);
}

TEST(CircuitDepth, GeneratedCircuitsWithinStructuralBounds) {
  for (auto p : {GenerationParams{10, 2.3, 0.28, 0}, GenerationParams{12, 2.5, 0.25, 0},
                 GenerationParams{14, 3.0, 0.2, 0}}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      p.seed = seed;
      const std::size_t d = circuit_depth(generate_uniform(p));
      const std::size_t base = 2 * static_cast<std::size_t>(layer_count(p)) - 1;
      EXPECT_GE(d, base);
      EXPECT_LE(d, base + static_cast<std::size_t>(appended_count(p)));
    }
  }
}

TEST(RemoveGates, EmptySetIsIdentity) {
  const Circuit c = generate_uniform({4, 1.0, 0.25, 5});
  EXPECT_EQ(remove_gates(c, {}), c);
}

TEST(RemoveGates, RemovingEverythingKeepsRegister) {
  const Circuit c(3, {rot(Axis::X, 0, 0.1), cx(0, 2), rot(Axis::Z, 1, 0.3)});
  const Circuit out = remove_gates(c, {0, 1, 2});
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(out.n_qubits(), 3);
}

TEST(RemoveGates, PreservesSurvivorOrderAndOriginal) {
  const Circuit c(3, {rot(Axis::X, 0, 0.1), cx(0, 2), rot(Axis::Z, 1, 0.3)});
  const Circuit out = remove_gates(c, {0});
  EXPECT_EQ(out, Circuit(3, {cx(0, 2), rot(Axis::Z, 1, 0.3)}));
  EXPECT_EQ(c.size(), 3u);
}

TEST(RemoveGates, OutOfRangeThrows) {
  const Circuit c(2, {rot(Axis::X, 0, 0.1)});
  EXPECT_THROW(remove_gates(c, {1}), InvalidParameter);
}

TEST(CircuitValidation, RejectsBadGates) {
  EXPECT_THROW(Circuit(2, {rot(Axis::X, 2, 0.1)}), InvalidParameter);
  EXPECT_THROW(Circuit(2, {cx(1, 1)}), InvalidParameter);
  EXPECT_THROW(Circuit(2, {cx(0, 5)}), InvalidParameter);
  EXPECT_THROW(Circuit(0, {}), InvalidParameter);
}

TEST(Rng, ClosedIntervalAndBounds) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform(0.5, 0.75);
    ASSERT_GE(u, 0.5);
    ASSERT_LE(u, 0.75);
    ASSERT_LT(rng.below(3), 3u);
    const double v = rng.unit();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

}  // namespace
}  // namespace qbrittle
