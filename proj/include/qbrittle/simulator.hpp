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
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "qbrittle/circuit.hpp"
#include "qbrittle/format.hpp"

namespace qbrittle {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 24;

/// Simulator qubit cap: QBRITTLE_MAX_QUBITS if set to a positive integer,
/// otherwise 24.
inline int max_qubits() {
  if (const char* env = std::getenv("QBRITTLE_MAX_QUBITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 40) return static_cast<int>(v);
  }
  return kDefaultMaxQubits;
}

/// Dense pure state. Qubit 0 is the least significant bit of the basis index.
class StateVector {
 public:
  /// |0...0> on n qubits. Throws ResourceError above max_qubits().
  static StateVector zero(int n_qubits) {
    if (n_qubits < 1) throw InvalidParameter("state needs at least one qubit");
    if (n_qubits > max_qubits()) {
      throw ResourceError("state of " + std::to_string(n_qubits) + " qubits exceeds the cap of " +
                          std::to_string(max_qubits()));
    }
    StateVector s;
    s.n_qubits_ = n_qubits;
    s.amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    s.amps_[0] = 1.0;
    return s;
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  void apply(const Rotation& r) { apply_rotation(r.axis, r.qubit, r.theta); }

  void apply(const Cnot& c) {
    const std::size_t cmask = std::size_t{1} << c.control;
    const std::size_t tmask = std::size_t{1} << c.target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & cmask) && !(i & tmask)) std::swap(amps_[i], amps_[i | tmask]);
    }
  }

  void apply(const Gate& g) {
    std::visit([this](const auto& gate) { apply(gate); }, g);
  }

  /// Applies exp(-i theta A / 2) for A in {X, Y, Z} on `qubit`.
  void apply_rotation(Axis axis, int qubit, double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const std::size_t mask = std::size_t{1} << qubit;
    switch (axis) {
      case Axis::X:
        for_each_pair(mask, [c, s](Amplitude& a0, Amplitude& a1) {
          const Amplitude m{0.0, -s};
          const Amplitude b0 = c * a0 + m * a1;
          a1 = m * a0 + c * a1;
          a0 = b0;
        });
        break;
      case Axis::Y:
        for_each_pair(mask, [c, s](Amplitude& a0, Amplitude& a1) {
          const Amplitude b0 = c * a0 - s * a1;
          a1 = s * a0 + c * a1;
          a0 = b0;
        });
        break;
      case Axis::Z: {
        const Amplitude p0{c, -s};
        const Amplitude p1{c, s};
        for_each_pair(mask, [p0, p1](Amplitude& a0, Amplitude& a1) {
          a0 *= p0;
          a1 *= p1;
        });
        break;
      }
    }
  }

  /// Visits every (bit clear, bit set) amplitude pair for `mask`.
  template <typename F>
  void for_each_pair(std::size_t mask, F&& f) {
    const std::size_t dim = amps_.size();
    for (std::size_t hi = 0; hi < dim; hi += 2 * mask) {
      for (std::size_t lo = hi; lo < hi + mask; ++lo) f(amps_[lo], amps_[lo | mask]);
    }
  }

  template <typename F>
  void for_each_pair(std::size_t mask, F&& f) const {
    const std::size_t dim = amps_.size();
    for (std::size_t hi = 0; hi < dim; hi += 2 * mask) {
      for (std::size_t lo = hi; lo < hi + mask; ++lo) f(amps_[lo], amps_[lo | mask]);
    }
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  int n_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

inline StateVector zero_state(int n_qubits) { return StateVector::zero(n_qubits); }

inline StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

/// Final state of `circuit` started from |0...0>.
inline StateVector run(const Circuit& circuit) {
  StateVector s = StateVector::zero(circuit.n_qubits());
  for (const Gate& g : circuit.gates()) s.apply(g);
  return s;
}

/// <a|b>.
inline Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw InvalidParameter("fidelity of states with different qubit counts (" +
                           std::to_string(a.n_qubits()) + " vs " + std::to_string(b.n_qubits()) +
                           ")");
  }
  Amplitude acc{0.0, 0.0};
  const auto xs = a.amplitudes();
  const auto ys = b.amplitudes();
  for (std::size_t i = 0; i < xs.size(); ++i) acc += std::conj(xs[i]) * ys[i];
  return acc;
}

/// |<a|b>|^2 clamped into [0, 1].
inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

/// <psi| A_q |psi> for the Pauli A on `qubit`.
inline double pauli_expectation(const StateVector& psi, Axis axis, int qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  double acc = 0.0;
  switch (axis) {
    case Axis::X:
      psi.for_each_pair(mask, [&](const Amplitude& a0, const Amplitude& a1) {
        acc += 2.0 * (std::conj(a0) * a1).real();
      });
      break;
    case Axis::Y:
      psi.for_each_pair(mask, [&](const Amplitude& a0, const Amplitude& a1) {
        acc += 2.0 * (std::conj(a0) * a1).imag();
      });
      break;
    case Axis::Z:
      psi.for_each_pair(mask, [&](const Amplitude& a0, const Amplitude& a1) {
        acc += std::norm(a0) - std::norm(a1);
      });
      break;
  }
  return acc;
}

/// <psi| CNOT |psi>; real because CNOT is Hermitian.
inline double cnot_expectation(const StateVector& psi, const Cnot& c) {
  const std::size_t cmask = std::size_t{1} << c.control;
  const std::size_t tmask = std::size_t{1} << c.target;
  const auto amps = psi.amplitudes();
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (!(i & cmask)) {
      acc += std::norm(amps[i]);
    } else if (!(i & tmask)) {
      acc += 2.0 * (std::conj(amps[i]) * amps[i | tmask]).real();
    }
  }
  return acc;
}

/// <psi| G^dagger |psi> without materialising G^dagger |psi>.
///
/// For a rotation exp(-i t A/2), G^dagger = cos(t/2) I + i sin(t/2) A, so the
/// overlap is cos(t/2) + i sin(t/2) <A>.
inline Amplitude inverse_expectation(const StateVector& psi, const Gate& gate) {
  if (const auto* r = std::get_if<Rotation>(&gate)) {
    return {std::cos(r->theta / 2), std::sin(r->theta / 2) * pauli_expectation(psi, r->axis, r->qubit)};
  }
  return {cnot_expectation(psi, std::get<Cnot>(gate)), 0.0};
}

/// "index,re,im" rows with a header line.
inline std::string state_to_csv(const StateVector& s) {
  std::string out = "index,re,im\n";
  const auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    out += std::to_string(i) + "," + format_real(amps[i].real()) + "," +
           format_real(amps[i].imag()) + "\n";
  }
  return out;
}

}  // namespace qbrittle
