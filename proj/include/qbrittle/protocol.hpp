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
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbrittle/circuit.hpp"
#include "qbrittle/error.hpp"
#include "qbrittle/format.hpp"
#include "qbrittle/importance.hpp"
#include "qbrittle/parallel.hpp"
#include "qbrittle/pruning.hpp"
#include "qbrittle/stats.hpp"

namespace qbrittle {

enum class PruningMode { Causal, Aware };

inline const char* mode_name(PruningMode m) { return m == PruningMode::Causal ? "causal" : "aware"; }

struct EnsembleConfig {
  int n = 10;
  double alpha = 2.3;
  double rho = 0.28;
  double kappa = 0.11;
  std::size_t circuit_count = 100;
  std::uint64_t base_seed = 0;
  double classify_threshold = kDefaultClassifyThreshold;
  double small_angle_threshold = kDefaultSmallAngleThreshold;
  PruningMode pruning_mode = PruningMode::Causal;

  GenerationParams params_for(std::size_t k) const { return {n, alpha, rho, base_seed + k}; }

  friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

/// Presets for the three published ensembles (10, 12 and 14 qubits).
inline EnsembleConfig preset_config(int n_qubits) {
  EnsembleConfig c;
  c.n = n_qubits;
  switch (n_qubits) {
    case 10: c.alpha = 2.3; c.rho = 0.28; c.kappa = 0.11; break;
    case 12: c.alpha = 2.5; c.rho = 0.25; c.kappa = 0.10; break;
    case 14: c.alpha = 3.0; c.rho = 0.20; c.kappa = 0.08; break;
    default: throw InvalidParameter("no preset for " + std::to_string(n_qubits) + " qubits");
  }
  return c;
}

inline void validate(const EnsembleConfig& c) {
  validate(GenerationParams{c.n, c.alpha, c.rho, c.base_seed});
  if (c.circuit_count < 2) throw InvalidParameter("circuit_count must be at least 2");
  if (!(c.kappa > 0.0 && c.kappa < 1.0)) throw InvalidParameter("kappa must lie in (0, 1)");
  if (!(c.classify_threshold >= 0.0 && c.classify_threshold <= 1.0)) {
    throw InvalidParameter("classify_threshold must lie in [0, 1]");
  }
  if (removal_quota(c.kappa, expected_gate_count(c.params_for(0))) == 0) {
    throw InvalidParameter("kappa=" + format_real(c.kappa) + " removes no gate");
  }
}

/// One analysed circuit.
struct CircuitRecord {
  std::uint64_t seed = 0;
  std::size_t gate_count = 0;
  std::size_t depth = 0;
  std::size_t removed_count = 0;
  double fidelity = 1.0;
  ClassLabel label = ClassLabel::Robust;
  AngleStats angles;
  std::optional<double> angle_importance_r;
  std::optional<double> entropy;
  std::optional<double> gini;
};

/// Generate, score, compress and summarise one ensemble member.
inline CircuitRecord analyse_circuit(const EnsembleConfig& config, std::size_t k) {
  const GenerationParams params = config.params_for(k);
  const Circuit circuit = generate_uniform(params);
  const ImportanceProfile profile = importance_profile(circuit);

  BrittlenessThresholds thresholds = default_brittleness_thresholds(config.n);
  thresholds.small_angle = config.small_angle_threshold;
  const CompressionResult compressed = config.pruning_mode == PruningMode::Causal
                                           ? causal_prune(circuit, profile, config.kappa)
                                           : aware_prune(circuit, profile, config.kappa, thresholds);
  CircuitRecord rec;
  rec.seed = params.seed;
  rec.gate_count = circuit.size();
  rec.depth = circuit_depth(circuit);
  rec.removed_count = compressed.removed_indices.size();
  rec.fidelity = compressed.fidelity;
  rec.label = classify(compressed.fidelity, config.classify_threshold);
  rec.angles = angle_stats(circuit, config.small_angle_threshold);
  auto maybe = [](auto&& f) -> std::optional<double> {
    try {
      return f();
    } catch (const UndefinedStatistic&) {
      return std::nullopt;
    }
  };
  rec.angle_importance_r = maybe([&] { return angle_importance_r(circuit, profile); });
  rec.entropy = maybe([&] { return shannon_entropy(profile); });
  rec.gini = maybe([&] { return gini(profile); });
  return rec;
}

/// A robust-vs-fragile comparison of one per-circuit metric. Fields are
/// absent whenever the underlying statistic is undefined.
struct ClassComparison {
  std::string metric;
  std::optional<double> robust_mean;
  std::optional<double> fragile_mean;
  std::optional<double> t_statistic;
  std::optional<double> p_value;
};

struct ClassSummary {
  std::size_t count = 0;
  double fraction = 0.0;
  std::optional<double> mean_fidelity;
};

struct EnsembleReport {
  EnsembleConfig config;
  std::vector<CircuitRecord> records;
  ClassSummary robust;
  ClassSummary fragile;
  std::optional<double> fidelity_gap;
  std::optional<double> cohens_d_fidelity;
  std::vector<ClassComparison> angle_fingerprint;  // mean_theta, std_theta, small_angle_ratio
  std::vector<ClassComparison> per_axis;           // rx, ry, rz: per-circuit mean angle by axis
  ClassComparison correlation;                     // angle-importance r
  std::vector<ClassComparison> importance_shape;   // entropy, gini

  bool both_classes() const { return robust.count > 0 && fragile.count > 0; }
};

/// Splits a per-record metric by class and compares the two samples.
inline ClassComparison compare_metric(const std::vector<CircuitRecord>& records, std::string metric,
                                      const std::function<std::optional<double>(const CircuitRecord&)>& get) {
  std::vector<double> robust, fragile;
  for (const auto& r : records) {
    if (const auto v = get(r)) (r.label == ClassLabel::Robust ? robust : fragile).push_back(*v);
  }
  ClassComparison c{std::move(metric), {}, {}, {}, {}};
  if (!robust.empty()) c.robust_mean = mean(robust);
  if (!fragile.empty()) c.fragile_mean = mean(fragile);
  try {
    const TestResult t = welch_t_test(robust, fragile);
    c.t_statistic = t.statistic;
    c.p_value = t.p_value;
  } catch (const UndefinedStatistic&) {
    // Too few members or a constant class: leave the test absent.
  }
  return c;
}

/// Class-level aggregation over records already in seed order.
inline EnsembleReport summarise(const EnsembleConfig& config, std::vector<CircuitRecord> records) {
  EnsembleReport rep;
  rep.config = config;
  rep.records = std::move(records);

  std::vector<double> robust_f, fragile_f;
  for (const auto& r : rep.records) {
    (r.label == ClassLabel::Robust ? robust_f : fragile_f).push_back(r.fidelity);
  }
  const double total = static_cast<double>(rep.records.size());
  rep.robust = {robust_f.size(), static_cast<double>(robust_f.size()) / total, std::nullopt};
  rep.fragile = {fragile_f.size(), static_cast<double>(fragile_f.size()) / total, std::nullopt};
  if (!robust_f.empty()) rep.robust.mean_fidelity = mean(robust_f);
  if (!fragile_f.empty()) rep.fragile.mean_fidelity = mean(fragile_f);
  if (rep.both_classes()) rep.fidelity_gap = fidelity_gap(robust_f, fragile_f);
  try {
    rep.cohens_d_fidelity = cohens_d(robust_f, fragile_f);
  } catch (const UndefinedStatistic&) {
  }

  const auto& recs = rep.records;
  rep.angle_fingerprint = {
      compare_metric(recs, "mean_theta", [](const CircuitRecord& r) { return std::optional(r.angles.mean_theta); }),
      compare_metric(recs, "std_theta", [](const CircuitRecord& r) { return std::optional(r.angles.std_theta); }),
      compare_metric(recs, "small_angle_ratio",
                     [](const CircuitRecord& r) { return std::optional(r.angles.small_angle_ratio); }),
  };
  for (Axis a : kAxes) {
    rep.per_axis.push_back(compare_metric(recs, std::string("r") + axis_char(a),
                                          [a](const CircuitRecord& r) { return r.angles.axis(a).mean_theta; }));
  }
  rep.correlation = compare_metric(recs, "angle_importance_r",
                                   [](const CircuitRecord& r) { return r.angle_importance_r; });
  rep.importance_shape = {
      compare_metric(recs, "entropy", [](const CircuitRecord& r) { return r.entropy; }),
      compare_metric(recs, "gini", [](const CircuitRecord& r) { return r.gini; }),
  };
  return rep;
}

/// Runs the full per-circuit pipeline for seeds base_seed .. base_seed +
/// count - 1. Circuits are processed in parallel; the report is identical
/// for every thread count.
inline EnsembleReport run_ensemble(const EnsembleConfig& config, unsigned threads = 0) {
  validate(config);
  std::vector<CircuitRecord> records(config.circuit_count);
  parallel_for(config.circuit_count, threads, [&](std::size_t k) { records[k] = analyse_circuit(config, k); });
  return summarise(config, std::move(records));
}

// ---------------------------------------------------------------------------
// Kappa sweep

struct SweepPoint {
  double kappa = 0.0;
  std::optional<double> gap;  // absent unless both classes are populated
  double robust_fraction = 0.0;
  bool valid = false;
};

struct SweepResult {
  std::vector<SweepPoint> grid;
  std::optional<double> selected_kappa;
};

/// 0.05, 0.08, ..., 0.38: every 0.03 step from 0.05 that stays below 0.40.
inline std::vector<double> default_kappa_grid() {
  std::vector<double> grid;
  for (int k = 0; k < 12; ++k) grid.push_back(std::round((0.05 + 0.03 * k) * 1e6) / 1e6);
  return grid;
}

inline constexpr std::size_t kDefaultProbeCount = 30;
inline constexpr std::uint64_t kProbeSeedOffset = 10'000;
inline constexpr std::uint64_t kProbeSeedStride = 100;

/// Runs one probe ensemble per grid kappa. Probe ensemble g uses seeds
/// base_seed + 10000 + 100 g + k, disjoint from the main ensemble. The
/// selected kappa is the valid grid point with the widest fidelity gap
/// (smaller kappa on ties) and stays absent when no point is valid.
inline SweepResult evaluate_kappa_grid(const EnsembleConfig& base, const std::vector<double>& grid,
                                       std::size_t probe_count = kDefaultProbeCount, unsigned threads = 0) {
  if (grid.empty()) throw InvalidParameter("kappa grid is empty");
  if (probe_count > kProbeSeedStride) {
    throw InvalidParameter("probe_count above " + std::to_string(kProbeSeedStride) +
                           " would overlap seed ranges");
  }
  SweepResult result;
  std::optional<double> best_gap;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    EnsembleConfig cfg = base;
    cfg.kappa = grid[g];
    cfg.circuit_count = probe_count;
    cfg.base_seed = base.base_seed + kProbeSeedOffset + kProbeSeedStride * g;
    const EnsembleReport rep = run_ensemble(cfg, threads);
    const SweepPoint pt{grid[g], rep.fidelity_gap, rep.robust.fraction, rep.both_classes()};
    result.grid.push_back(pt);
    if (!pt.valid) continue;
    if (!best_gap || *pt.gap > *best_gap || (*pt.gap == *best_gap && pt.kappa < *result.selected_kappa)) {
      best_gap = pt.gap;
      result.selected_kappa = pt.kappa;
    }
  }
  return result;
}

/// As evaluate_kappa_grid, but a sweep without any transition throws
/// NoTransition.
inline SweepResult kappa_sweep(const EnsembleConfig& base, const std::vector<double>& grid,
                               std::size_t probe_count = kDefaultProbeCount, unsigned threads = 0) {
  SweepResult result = evaluate_kappa_grid(base, grid, probe_count, threads);
  if (!result.selected_kappa) throw NoTransition("no grid kappa produced both robust and fragile circuits");
  return result;
}

inline SweepResult kappa_sweep(const EnsembleConfig& base) { return kappa_sweep(base, default_kappa_grid()); }

}  // namespace qbrittle
