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
#include <string>
#include <vector>

#include "qbrittle/circuit.hpp"
#include "qbrittle/simulator.hpp"

namespace qbrittle {

/// Leave-one-out importance of every gate plus the intact final state.
struct ImportanceProfile {
  std::vector<double> importance;
  StateVector baseline_state;

  std::size_t size() const { return importance.size(); }
  double operator[](std::size_t i) const { return importance[i]; }
};

/// 1 - |<psi| G^dagger |psi>|^2: the infidelity caused by deleting `gate`
/// when `psi` is the state just before it. Rotations use the factored form
/// sin^2(t/2) (1 - <A>^2), which has no cancellation for small angles.
inline double removal_infidelity(const StateVector& psi, const Gate& gate) {
  double loss = 0.0;
  if (const auto* r = std::get_if<Rotation>(&gate)) {
    const double s = std::sin(r->theta / 2);
    const double a = pauli_expectation(psi, r->axis, r->qubit);
    loss = s * s * (1.0 - a * a);
  } else {
    const double e = cnot_expectation(psi, std::get<Cnot>(gate));
    loss = 1.0 - e * e;
  }
  return std::clamp(loss, 0.0, 1.0);
}

/// I_i = 1 - F(run(C), run(C without gate i)), each clamped to [0, 1].
///
/// Deleting gate i changes the final state from U_after G_i |phi_i> to
/// U_after |phi_i>, where phi_i is the state just before gate i. The shared
/// suffix cancels in the overlap, leaving F = |<phi_i| G_i^dagger |phi_i>|^2,
/// so a single forward sweep yields every score.
inline ImportanceProfile importance_profile(const Circuit& circuit) {
  if (circuit.empty()) throw InvalidParameter("importance of an empty circuit");
  ImportanceProfile profile{std::vector<double>(circuit.size()), StateVector::zero(circuit.n_qubits())};
  StateVector& psi = profile.baseline_state;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    profile.importance[i] = removal_infidelity(psi, circuit[i]);
    psi.apply(circuit[i]);
  }
  return profile;
}

/// Reference route: N + 1 full simulations. Quadratic in gate count; kept
/// for cross-checking and for small circuits.
inline ImportanceProfile importance_profile_exhaustive(const Circuit& circuit) {
  if (circuit.empty()) throw InvalidParameter("importance of an empty circuit");
  ImportanceProfile profile{std::vector<double>(circuit.size()), run(circuit)};
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const StateVector without = run(remove_gates(circuit, {i}));
    profile.importance[i] = std::clamp(1.0 - fidelity(profile.baseline_state, without), 0.0, 1.0);
  }
  return profile;
}

/// CSV: gate_index,gate_type,axis,qubits,theta,importance. CNOT rows leave
/// axis and theta empty and list qubits as "control;target".
inline std::string importance_to_csv(const Circuit& circuit, const ImportanceProfile& profile) {
  std::string out = "gate_index,gate_type,axis,qubits,theta,importance\n";
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    out += std::to_string(i);
    if (const auto* r = std::get_if<Rotation>(&circuit[i])) {
      out += ",rot,";
      out += axis_char(r->axis);
      out += "," + std::to_string(r->qubit) + "," + format_real(r->theta);
    } else {
      const auto& c = std::get<Cnot>(circuit[i]);
      out += ",cnot,," + std::to_string(c.control) + ";" + std::to_string(c.target) + ",";
    }
    out += "," + format_real(profile.importance[i]) + "\n";
  }
  return out;
}

}  // namespace qbrittle
