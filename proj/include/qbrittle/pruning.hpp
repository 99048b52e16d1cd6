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
#include <numeric>
#include <vector>

#include "qbrittle/circuit.hpp"
#include "qbrittle/importance.hpp"
#include "qbrittle/simulator.hpp"
#include "qbrittle/stats.hpp"

namespace qbrittle {

struct CompressionResult {
  Circuit compressed;
  std::vector<std::size_t> removed_indices;  // in removal (ascending importance) order
  double fidelity = 1.0;
  double kappa_effective = 0.0;
};

/// floor(kappa * N), tolerant of decimal kappa such as 0.1 * 530.
inline std::size_t removal_quota(double kappa, std::size_t gate_count) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidParameter("kappa must lie in (0, 1)");
  return static_cast<std::size_t>(std::floor(kappa * static_cast<double>(gate_count) + 1e-9));
}

/// Gate indices sorted by (importance ascending, index ascending).
inline std::vector<std::size_t> importance_order(const ImportanceProfile& profile) {
  std::vector<std::size_t> order(profile.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return profile[a] < profile[b];
  });
  return order;
}

namespace detail {
inline CompressionResult finish_compression(const Circuit& circuit, const ImportanceProfile& profile,
                                            std::vector<std::size_t> removed) {
  CompressionResult result{remove_gates(circuit, removed), std::move(removed), 1.0, 0.0};
  result.fidelity = fidelity(profile.baseline_state, run(result.compressed));
  result.kappa_effective =
      static_cast<double>(result.removed_indices.size()) / static_cast<double>(circuit.size());
  return result;
}

inline std::size_t checked_quota(const Circuit& circuit, double kappa) {
  const std::size_t quota = removal_quota(kappa, circuit.size());
  if (quota == 0) {
    throw InvalidParameter("kappa=" + format_real(kappa) + " removes no gate from a " +
                           std::to_string(circuit.size()) + "-gate circuit");
  }
  return quota;
}
}  // namespace detail

/// Removes the floor(kappa * N) least important gates after a single
/// importance pass. `profile` must belong to `circuit`.
inline CompressionResult causal_prune(const Circuit& circuit, const ImportanceProfile& profile,
                                      double kappa) {
  const std::size_t quota = detail::checked_quota(circuit, kappa);
  if (profile.size() != circuit.size()) throw InvalidParameter("importance profile does not match the circuit");
  std::vector<std::size_t> order = importance_order(profile);
  order.resize(quota);
  return detail::finish_compression(circuit, profile, std::move(order));
}

inline CompressionResult causal_prune(const Circuit& circuit, double kappa) {
  detail::checked_quota(circuit, kappa);
  return causal_prune(circuit, importance_profile(circuit), kappa);
}

// ---------------------------------------------------------------------------
// Brittleness-aware compression

struct BrittlenessThresholds {
  double small_angle = kDefaultSmallAngleThreshold;
  double std_theta = 0.5255;          // brittle when sigma_theta falls below
  double small_angle_ratio = 0.28;    // brittle when the small-angle share falls below
};

/// Midpoints between the robust and fragile class means observed at 10, 12
/// and 14 qubits; other sizes use the nearest tabulated size.
inline BrittlenessThresholds default_brittleness_thresholds(int n_qubits) {
  if (n_qubits <= 11) return {kDefaultSmallAngleThreshold, 0.5255, 0.28};
  if (n_qubits <= 13) return {kDefaultSmallAngleThreshold, 0.515, 0.252};
  return {kDefaultSmallAngleThreshold, 0.489, 0.1985};
}

struct BrittlenessReport {
  double mean_theta = 0.0;
  double std_theta = 0.0;
  double small_angle_ratio = 0.0;
  bool brittle = false;
};

/// Angle-statistics screen run before compression.
inline BrittlenessReport risk_assess(const Circuit& circuit, const BrittlenessThresholds& t) {
  const AngleStats s = angle_stats(circuit, t.small_angle);
  return {s.mean_theta, s.std_theta, s.small_angle_ratio,
          s.std_theta < t.std_theta || s.small_angle_ratio < t.small_angle_ratio};
}

/// Causal pruning that, for circuits flagged brittle, never removes a
/// rotation below the small-angle threshold. The quota is filled from the
/// remaining gates in importance order; if they run out, kappa_effective
/// ends up below kappa.
inline CompressionResult aware_prune(const Circuit& circuit, const ImportanceProfile& profile,
                                     double kappa, const BrittlenessThresholds& t) {
  const std::size_t quota = detail::checked_quota(circuit, kappa);
  if (profile.size() != circuit.size()) throw InvalidParameter("importance profile does not match the circuit");
  if (!risk_assess(circuit, t).brittle) return causal_prune(circuit, profile, kappa);

  std::vector<std::size_t> removed;
  removed.reserve(quota);
  for (std::size_t i : importance_order(profile)) {
    if (removed.size() == quota) break;
    const auto* r = std::get_if<Rotation>(&circuit[i]);
    if (r && r->theta < t.small_angle) continue;
    removed.push_back(i);
  }
  return detail::finish_compression(circuit, profile, std::move(removed));
}

inline CompressionResult aware_prune(const Circuit& circuit, double kappa, const BrittlenessThresholds& t) {
  detail::checked_quota(circuit, kappa);
  return aware_prune(circuit, importance_profile(circuit), kappa, t);
}

}  // namespace qbrittle
