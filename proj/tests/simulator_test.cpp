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

#include "qbrittle/simulator.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>

#include "gtest/gtest.h"
#include "oracle.hpp"
#include "test_util.hpp"

namespace qbrittle {
namespace {

using testing::cx;
using testing::rot;

TEST(ZeroState, Basics) {
  const StateVector s1 = zero_state(1);
  ASSERT_EQ(s1.dim(), 2u);
  EXPECT_EQ(s1[0], Amplitude(1.0));
  EXPECT_EQ(s1[1], Amplitude(0.0));
  const StateVector s2 = zero_state(2);
  ASSERT_EQ(s2.dim(), 4u);
  EXPECT_EQ(s2[0], Amplitude(1.0));
  for (int n = 1; n <= 12; ++n) EXPECT_DOUBLE_EQ(zero_state(n).norm_squared(), 1.0);
}

TEST(ZeroState, CapRaisesResourceError) {
  EXPECT_THROW(zero_state(kDefaultMaxQubits + 1), ResourceError);
  ::setenv("QBRITTLE_MAX_QUBITS", "3", 1);
  EXPECT_THROW(zero_state(4), ResourceError);
  EXPECT_NO_THROW(zero_state(3));
  ::unsetenv("QBRITTLE_MAX_QUBITS");
  EXPECT_NO_THROW(zero_state(4));
}

TEST(ApplyGate, RzIsPhaseOnlyOnBasisStates) {
  for (std::size_t basis = 0; basis < 4; ++basis) {
    StateVector s = zero_state(2);
    if (basis & 1) s.apply(rot(Axis::X, 0, std::numbers::pi));
    if (basis & 2) s.apply(rot(Axis::X, 1, std::numbers::pi));
    const StateVector t = apply_gate(s, rot(Axis::Z, 0, 0.7));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(t[i]), std::abs(s[i]), 1e-15);
  }
}

TEST(ApplyGate, RxPiOnZero) {
  const StateVector s = apply_gate(zero_state(1), rot(Axis::X, 0, std::numbers::pi));
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(s[1].real(), 0.0, 1e-15);
  EXPECT_NEAR(s[1].imag(), -1.0, 1e-15);
}

TEST(ApplyGate, CnotFlipsTargetWhenControlSet) {
  StateVector s = zero_state(2);
  s.apply(rot(Axis::X, 0, std::numbers::pi));  // amplitude -i on index 1
  s.apply(cx(0, 1));
  EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[3]), 1.0, 1e-15);
}

TEST(Run, EmptyCircuit) {
  const StateVector s = run(Circuit(2, {}));
  EXPECT_EQ(s, zero_state(2));
}

TEST(Run, RyQuarterTurn) {
  const StateVector s = run(Circuit(1, {rot(Axis::Y, 0, std::numbers::pi / 2)}));
  EXPECT_NEAR(s[0].real(), std::cos(std::numbers::pi / 4), 1e-15);
  EXPECT_NEAR(s[1].real(), std::sin(std::numbers::pi / 4), 1e-15);
  EXPECT_NEAR(s[0].imag(), 0.0, 1e-15);
  EXPECT_NEAR(s[1].imag(), 0.0, 1e-15);
}

TEST(Run, MatchesDenseMatrixOracle) {
  Rng rng(2024);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 400; ++trial) {
      const Circuit c = testing::random_circuit(rng, n, 30);
      const StateVector s = run(c);
      const oracle::Vector ref = oracle::run(c);
      for (std::size_t i = 0; i < s.dim(); ++i) {
        worst = std::max(worst, std::abs(s[i] - ref(static_cast<Eigen::Index>(i))));
      }
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Run, NormPreservedPerGateAndOverall) {
  const Circuit c = generate_uniform({14, 3.0, 0.2, 5});
  StateVector s = zero_state(14);
  double prev = 1.0;
  for (const Gate& g : c.gates()) {
    s.apply(g);
    const double now = s.norm_squared();
    ASSERT_LT(std::abs(now - prev), 1e-12);
    prev = now;
  }
  EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-10);
}

TEST(ApplyGate, RotationInverse) {
  Rng rng(5);
  const Circuit prep = testing::random_circuit(rng, 3, 20);
  const StateVector start = run(prep);
  for (Axis a : kAxes) {
    for (int q = 0; q < 3; ++q) {
      StateVector s = start;
      s.apply(rot(a, q, 1.234));
      s.apply(rot(a, q, -1.234));
      for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_LT(std::abs(s[i] - start[i]), 1e-12);
    }
  }
}

TEST(Fidelity, Basics) {
  Rng rng(3);
  const StateVector psi = run(testing::random_circuit(rng, 3, 20));
  EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-14);
  const StateVector one = run(Circuit(1, {rot(Axis::X, 0, std::numbers::pi)}));
  EXPECT_NEAR(fidelity(zero_state(1), one), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(run(Circuit(1, {rot(Axis::Z, 0, 0.5)})), zero_state(1)), 1.0, 1e-15);
}

TEST(Fidelity, SymmetricAndPhaseInvariant) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector a = run(testing::random_circuit(rng, 3, 15));
    const StateVector b = run(testing::random_circuit(rng, 3, 15));
    const double f = fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_NEAR(f, fidelity(b, a), 1e-14);
    StateVector phased = b;
    for (auto& x : phased.amplitudes()) x *= std::polar(1.0, 0.83);
    EXPECT_NEAR(f, fidelity(a, phased), 1e-14);
  }
}

TEST(Fidelity, MismatchedRegistersThrow) {
  EXPECT_THROW(fidelity(zero_state(2), zero_state(3)), InvalidParameter);
}

TEST(InverseExpectation, MatchesExplicitOverlap) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector psi = run(testing::random_circuit(rng, 3, 20));
    const Circuit one = testing::random_circuit(rng, 3, 1);
    if (one.empty()) continue;
    const Gate& g = one[0];
    // <psi| G^dagger |psi> = conj(<psi| G |psi>)
    const Amplitude forward = inner_product(psi, apply_gate(psi, g));
    const Amplitude got = inverse_expectation(psi, g);
    EXPECT_LT(std::abs(got - std::conj(forward)), 1e-12);
  }
}

TEST(StateCsv, HeaderAndRows) {
  const std::string csv = state_to_csv(zero_state(1));
  EXPECT_EQ(csv, "index,re,im\n0,1,0\n1,0,0\n");
}

}  // namespace
}  // namespace qbrittle
