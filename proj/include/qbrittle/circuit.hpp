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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qbrittle/error.hpp"
#include "qbrittle/rng.hpp"

namespace qbrittle {

enum class Axis : std::uint8_t { X, Y, Z };

inline constexpr Axis kAxes[] = {Axis::X, Axis::Y, Axis::Z};

inline char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

/// Where a rotation came from: the layered ansatz or the trailing near-zero
/// Rz block.
enum class Provenance : std::uint8_t { Layered, Appended };

struct Rotation {
  Axis axis = Axis::Z;
  int qubit = 0;
  double theta = 0.0;
  Provenance provenance = Provenance::Layered;
  int layer = 0;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

struct Cnot {
  int control = 0;
  int target = 1;
  int layer = 0;

  friend bool operator==(const Cnot&, const Cnot&) = default;
};

using Gate = std::variant<Rotation, Cnot>;

inline bool is_rotation(const Gate& g) { return std::holds_alternative<Rotation>(g); }

struct GenerationParams {
  int n = 10;
  double alpha = 2.3;
  double rho = 0.28;
  std::uint64_t seed = 0;

  friend bool operator==(const GenerationParams&, const GenerationParams&) = default;
};

// floor(n * x) with slack for decimal inputs such as 10 * 2.3.
inline int scaled_floor(int n, double x) {
  return static_cast<int>(std::floor(static_cast<double>(n) * x + 1e-9));
}

inline int layer_count(const GenerationParams& p) { return scaled_floor(p.n, p.alpha); }
inline int appended_count(const GenerationParams& p) { return scaled_floor(p.n, p.rho); }

/// L*n rotations + (L-1)*n/2 CNOTs + floor(n*rho) appended Rz.
inline std::size_t expected_gate_count(const GenerationParams& p) {
  const int layers = layer_count(p);
  return static_cast<std::size_t>(layers * p.n + (layers - 1) * (p.n / 2) + appended_count(p));
}

inline void validate(const GenerationParams& p) {
  if (p.n % 2 != 0) {
    throw InvalidParameter("odd qubit count n=" + std::to_string(p.n) + ": the ring entangler needs even n");
  }
  if (p.n < 4) throw InvalidParameter("qubit count must be at least 4 (got n=" + std::to_string(p.n) + ")");
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
    throw InvalidParameter("alpha must be positive");
  }
  if (!(p.rho >= 0.0 && p.rho <= 1.0)) {
    throw InvalidParameter("rho must lie in [0, 1]");
  }
  if (layer_count(p) < 1) {
    throw InvalidParameter("floor(n*alpha) must be at least 1");
  }
}

/// Ordered gate list on a fixed register. Gate order is execution order.
class Circuit {
 public:
  Circuit() = default;

  /// Throws InvalidParameter if any gate does not fit the register.
  Circuit(int n_qubits, std::vector<Gate> gates,
          std::optional<GenerationParams> params = std::nullopt)
      : n_qubits_(n_qubits), gates_(std::move(gates)), params_(params) {
    if (n_qubits_ < 1) throw InvalidParameter("n_qubits must be positive");
    for (std::size_t i = 0; i < gates_.size(); ++i) check_gate(gates_[i], i);
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  std::span<const Gate> gates() const { return gates_; }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }
  const std::optional<GenerationParams>& params() const { return params_; }

  std::size_t rotation_count() const {
    return static_cast<std::size_t>(std::count_if(gates_.begin(), gates_.end(), is_rotation));
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_gate(const Gate& g, std::size_t index) const {
    auto fail = [&](const std::string& what) {
      throw InvalidParameter("gate " + std::to_string(index) + ": " + what);
    };
    auto in_range = [&](int q) { return q >= 0 && q < n_qubits_; };
    if (const auto* r = std::get_if<Rotation>(&g)) {
      if (!in_range(r->qubit)) fail("qubit " + std::to_string(r->qubit) + " out of range");
      if (!std::isfinite(r->theta)) fail("non-finite angle");
    } else {
      const auto& c = std::get<Cnot>(g);
      if (!in_range(c.control)) fail("control " + std::to_string(c.control) + " out of range");
      if (!in_range(c.target)) fail("target " + std::to_string(c.target) + " out of range");
      if (c.control == c.target) fail("control equals target");
    }
  }

  int n_qubits_ = 1;
  std::vector<Gate> gates_;
  std::optional<GenerationParams> params_;
};

inline constexpr double kSmallAngleLo = 0.001;
inline constexpr double kSmallAngleHi = 0.05;
inline constexpr double kLargeAngleLo = std::numbers::pi / 6;
inline constexpr double kLargeAngleHi = std::numbers::pi / 2;
inline constexpr double kAppendedLo = 0.001;
inline constexpr double kAppendedHi = 0.01;

/// Builds one member of a structurally-uniform ensemble.
///
/// Layer l holds one rotation per qubit followed, except on the last layer,
/// by n/2 disjoint CNOTs on a ring: even layers pair (2k, 2k+1), odd layers
/// pair (2k+1, (2k+2) mod n). Each rotation draws, in order, its axis, the
/// near-zero branch (probability rho) and its angle. The floor(n*rho)
/// appended Rz gates then draw a qubit (with replacement) and an angle.
/// Only the seed-dependent draws differ between ensemble members; the CNOT
/// skeleton and gate count are fixed by (n, alpha, rho).
inline Circuit generate_uniform(const GenerationParams& params) {
  validate(params);
  const int n = params.n;
  const int layers = layer_count(params);
  Rng rng(params.seed);

  std::vector<Gate> gates;
  gates.reserve(expected_gate_count(params));
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 0; q < n; ++q) {
      const Axis axis = kAxes[rng.below(3)];
      const bool near_zero = rng.unit() < params.rho;
      const double theta = near_zero ? rng.uniform(kSmallAngleLo, kSmallAngleHi)
                                     : rng.uniform(kLargeAngleLo, kLargeAngleHi);
      gates.emplace_back(Rotation{axis, q, theta, Provenance::Layered, layer});
    }
    if (layer == layers - 1) break;
    const int offset = layer % 2;
    for (int k = 0; k < n / 2; ++k) {
      const int control = 2 * k + offset;
      gates.emplace_back(Cnot{control, (control + 1) % n, layer});
    }
  }
  const int extra = appended_count(params);
  for (int k = 0; k < extra; ++k) {
    const int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const double theta = rng.uniform(kAppendedLo, kAppendedHi);
    gates.emplace_back(Rotation{Axis::Z, q, theta, Provenance::Appended, layers});
  }
  return Circuit(n, std::move(gates), params);
}

/// Greedy ASAP layering: each gate lands one level above the deepest qubit
/// it touches.
inline std::size_t circuit_depth(const Circuit& circuit) {
  std::vector<std::size_t> level(static_cast<std::size_t>(circuit.n_qubits()), 0);
  std::size_t depth = 0;
  for (const Gate& g : circuit.gates()) {
    if (const auto* r = std::get_if<Rotation>(&g)) {
      auto& l = level[static_cast<std::size_t>(r->qubit)];
      depth = std::max(depth, ++l);
    } else {
      const auto& c = std::get<Cnot>(g);
      auto& a = level[static_cast<std::size_t>(c.control)];
      auto& b = level[static_cast<std::size_t>(c.target)];
      a = b = std::max(a, b) + 1;
      depth = std::max(depth, a);
    }
  }
  return depth;
}

/// Copy of `circuit` without the listed positions. Duplicates are allowed
/// and ignored; any index >= size() throws InvalidParameter.
inline Circuit remove_gates(const Circuit& circuit, std::span<const std::size_t> indices) {
  std::vector<bool> drop(circuit.size(), false);
  for (std::size_t i : indices) {
    if (i >= circuit.size()) {
      throw InvalidParameter("gate index " + std::to_string(i) + " out of range for " +
                             std::to_string(circuit.size()) + " gates");
    }
    drop[i] = true;
  }
  std::vector<Gate> kept;
  kept.reserve(circuit.size());
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (!drop[i]) kept.push_back(circuit[i]);
  }
  return Circuit(circuit.n_qubits(), std::move(kept), circuit.params());
}

inline Circuit remove_gates(const Circuit& circuit, std::initializer_list<std::size_t> indices) {
  return remove_gates(circuit, std::span<const std::size_t>(indices.begin(), indices.size()));
}

/// Angles of all rotation gates, in circuit order.
inline std::vector<double> rotation_angles(const Circuit& circuit) {
  std::vector<double> out;
  out.reserve(circuit.size());
  for (const Gate& g : circuit.gates()) {
    if (const auto* r = std::get_if<Rotation>(&g)) out.push_back(r->theta);
  }
  return out;
}

}  // namespace qbrittle
