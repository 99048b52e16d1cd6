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
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbrittle/error.hpp"
#include "qbrittle/format.hpp"
#include "qbrittle/protocol.hpp"

namespace qbrittle {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

inline std::optional<double> opt_from(const ordered_json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

inline ordered_json comparison_json(const ClassComparison& c) {
  return {{"metric", c.metric},
          {"robust_mean", opt(c.robust_mean)},
          {"fragile_mean", opt(c.fragile_mean)},
          {"t_statistic", opt(c.t_statistic)},
          {"p_value", opt(c.p_value)}};
}

inline ClassComparison comparison_from(const ordered_json& j) {
  return {j.at("metric").get<std::string>(), opt_from(j, "robust_mean"), opt_from(j, "fragile_mean"),
          opt_from(j, "t_statistic"), opt_from(j, "p_value")};
}

inline ordered_json summary_json(const ClassSummary& s) {
  return {{"count", s.count}, {"fraction", s.fraction}, {"mean_fidelity", opt(s.mean_fidelity)}};
}

inline ClassSummary summary_from(const ordered_json& j) {
  return {j.at("count").get<std::size_t>(), j.at("fraction").get<double>(), opt_from(j, "mean_fidelity")};
}

}  // namespace detail

inline ordered_json config_to_json(const EnsembleConfig& c) {
  return {{"n", c.n},
          {"alpha", c.alpha},
          {"rho", c.rho},
          {"kappa", c.kappa},
          {"circuit_count", c.circuit_count},
          {"base_seed", c.base_seed},
          {"classify_threshold", c.classify_threshold},
          {"small_angle_threshold", c.small_angle_threshold},
          {"pruning_mode", mode_name(c.pruning_mode)}};
}

inline EnsembleConfig config_from_json(const ordered_json& j) {
  EnsembleConfig c;
  c.n = j.at("n").get<int>();
  c.alpha = j.at("alpha").get<double>();
  c.rho = j.at("rho").get<double>();
  c.kappa = j.at("kappa").get<double>();
  c.circuit_count = j.at("circuit_count").get<std::size_t>();
  c.base_seed = j.at("base_seed").get<std::uint64_t>();
  c.classify_threshold = j.at("classify_threshold").get<double>();
  c.small_angle_threshold = j.at("small_angle_threshold").get<double>();
  const auto mode = j.at("pruning_mode").get<std::string>();
  if (mode != "causal" && mode != "aware") throw ParseError("config: pruning_mode must be causal|aware");
  c.pruning_mode = mode == "causal" ? PruningMode::Causal : PruningMode::Aware;
  return c;
}

inline ordered_json record_to_json(const CircuitRecord& r) {
  ordered_json axes = ordered_json::object();
  for (Axis a : kAxes) {
    const AxisStats& s = r.angles.axis(a);
    axes[std::string("r") + axis_char(a)] = {{"count", s.count},
                                             {"mean_theta", detail::opt(s.mean_theta)},
                                             {"std_theta", detail::opt(s.std_theta)},
                                             {"small_angle_ratio", detail::opt(s.small_angle_ratio)}};
  }
  return {{"seed", r.seed},
          {"gate_count", r.gate_count},
          {"depth", r.depth},
          {"removed_count", r.removed_count},
          {"fidelity", r.fidelity},
          {"label", label_name(r.label)},
          {"angle_stats",
           {{"count", r.angles.count},
            {"mean_theta", r.angles.mean_theta},
            {"std_theta", r.angles.std_theta},
            {"small_angle_ratio", r.angles.small_angle_ratio},
            {"per_axis", axes}}},
          {"angle_importance_r", detail::opt(r.angle_importance_r)},
          {"entropy", detail::opt(r.entropy)},
          {"gini", detail::opt(r.gini)}};
}

inline CircuitRecord record_from_json(const ordered_json& j) {
  CircuitRecord r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.gate_count = j.at("gate_count").get<std::size_t>();
  r.depth = j.at("depth").get<std::size_t>();
  r.removed_count = j.at("removed_count").get<std::size_t>();
  r.fidelity = j.at("fidelity").get<double>();
  r.label = j.at("label").get<std::string>() == "robust" ? ClassLabel::Robust : ClassLabel::Fragile;
  const auto& a = j.at("angle_stats");
  r.angles.count = a.at("count").get<std::size_t>();
  r.angles.mean_theta = a.at("mean_theta").get<double>();
  r.angles.std_theta = a.at("std_theta").get<double>();
  r.angles.small_angle_ratio = a.at("small_angle_ratio").get<double>();
  for (Axis ax : kAxes) {
    const auto& s = a.at("per_axis").at(std::string("r") + axis_char(ax));
    AxisStats& out = r.angles.per_axis[static_cast<std::size_t>(ax)];
    out.count = s.at("count").get<std::size_t>();
    out.mean_theta = detail::opt_from(s, "mean_theta");
    out.std_theta = detail::opt_from(s, "std_theta");
    out.small_angle_ratio = detail::opt_from(s, "small_angle_ratio");
  }
  r.angle_importance_r = detail::opt_from(j, "angle_importance_r");
  r.entropy = detail::opt_from(j, "entropy");
  r.gini = detail::opt_from(j, "gini");
  return r;
}

inline ordered_json report_to_json(const EnsembleReport& rep) {
  ordered_json records = ordered_json::array();
  for (const auto& r : rep.records) records.push_back(record_to_json(r));
  auto comparisons = [](const std::vector<ClassComparison>& cs) {
    ordered_json out = ordered_json::array();
    for (const auto& c : cs) out.push_back(detail::comparison_json(c));
    return out;
  };
  return {{"config", config_to_json(rep.config)},
          {"class_summary", {{"robust", detail::summary_json(rep.robust)}, {"fragile", detail::summary_json(rep.fragile)}}},
          {"fidelity_gap", detail::opt(rep.fidelity_gap)},
          {"cohens_d_fidelity", detail::opt(rep.cohens_d_fidelity)},
          {"angle_fingerprint", comparisons(rep.angle_fingerprint)},
          {"per_axis", comparisons(rep.per_axis)},
          {"correlation", detail::comparison_json(rep.correlation)},
          {"importance_shape", comparisons(rep.importance_shape)},
          {"records", records}};
}

/// Inverse of report_to_json. Raises ParseError on a malformed document.
inline EnsembleReport report_from_json(const ordered_json& j) {
  try {
    EnsembleReport rep;
    rep.config = config_from_json(j.at("config"));
    rep.robust = detail::summary_from(j.at("class_summary").at("robust"));
    rep.fragile = detail::summary_from(j.at("class_summary").at("fragile"));
    rep.fidelity_gap = detail::opt_from(j, "fidelity_gap");
    rep.cohens_d_fidelity = detail::opt_from(j, "cohens_d_fidelity");
    for (const auto& c : j.at("angle_fingerprint")) rep.angle_fingerprint.push_back(detail::comparison_from(c));
    for (const auto& c : j.at("per_axis")) rep.per_axis.push_back(detail::comparison_from(c));
    rep.correlation = detail::comparison_from(j.at("correlation"));
    for (const auto& c : j.at("importance_shape")) rep.importance_shape.push_back(detail::comparison_from(c));
    for (const auto& r : j.at("records")) rep.records.push_back(record_from_json(r));
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

/// One row per circuit, seed order.
inline std::string records_to_csv(const std::vector<CircuitRecord>& records) {
  auto cell = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  std::string out =
      "seed,gate_count,depth,fidelity,label,mean_theta,std_theta,small_angle_ratio,r_angle_importance,"
      "entropy,gini\n";
  for (const auto& r : records) {
    out += std::to_string(r.seed) + "," + std::to_string(r.gate_count) + "," + std::to_string(r.depth) + "," +
           format_real(r.fidelity) + "," + label_name(r.label) + "," + format_real(r.angles.mean_theta) + "," +
           format_real(r.angles.std_theta) + "," + format_real(r.angles.small_angle_ratio) + "," +
           cell(r.angle_importance_r) + "," + cell(r.entropy) + "," + cell(r.gini) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Histograms of per-circuit values split by class

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t robust = 0;
  std::size_t fragile = 0;
};

/// Equal-width bins over [lo, hi]; values outside are clamped into the edge
/// bins. Records without a value are skipped.
inline std::vector<HistogramBin> class_histogram(const std::vector<CircuitRecord>& records,
                                                 const std::function<std::optional<double>(const CircuitRecord&)>& get,
                                                 double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw InvalidParameter("histogram needs bins > 0 and hi > lo");
  std::vector<HistogramBin> out(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lo = lo + width * static_cast<double>(b);
    out[b].hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (const auto& r : records) {
    const auto v = get(r);
    if (!v) continue;
    const double pos = std::floor((*v - lo) / width);
    const auto b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    (r.label == ClassLabel::Robust ? out[b].robust : out[b].fragile)++;
  }
  return out;
}

inline std::vector<HistogramBin> fidelity_histogram(const std::vector<CircuitRecord>& records, std::size_t bins = 20) {
  return class_histogram(records, [](const CircuitRecord& r) { return std::optional(r.fidelity); }, 0.0, 1.0, bins);
}

/// r lies in [-1, 1]; the range is narrowed to the observed values rounded
/// outward to 0.05 so the bars stay readable.
inline std::vector<HistogramBin> correlation_histogram(const std::vector<CircuitRecord>& records,
                                                       std::size_t bins = 20) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const auto& r : records) {
    if (!r.angle_importance_r) continue;
    lo = any ? std::min(lo, *r.angle_importance_r) : *r.angle_importance_r;
    hi = any ? std::max(hi, *r.angle_importance_r) : *r.angle_importance_r;
    any = true;
  }
  lo = std::max(-1.0, std::floor(lo / 0.05) * 0.05);
  hi = std::min(1.0, std::ceil(hi / 0.05) * 0.05);
  if (!(hi > lo)) hi = std::min(1.0, lo + 0.05), lo = hi - 0.05;
  return class_histogram(records, [](const CircuitRecord& r) { return r.angle_importance_r; }, lo, hi, bins);
}

inline std::string histogram_to_csv(const std::vector<HistogramBin>& bins) {
  std::string out = "bin_lo,bin_hi,robust_count,fragile_count\n";
  for (const auto& b : bins) {
    out += format_real(b.lo) + "," + format_real(b.hi) + "," + std::to_string(b.robust) + "," +
           std::to_string(b.fragile) + "\n";
  }
  return out;
}

inline std::string sweep_to_csv(const SweepResult& sweep) {
  std::string out = "kappa,gap,robust_fraction,valid\n";
  for (const auto& p : sweep.grid) {
    out += format_real(p.kappa) + "," + (p.gap ? format_real(*p.gap) : std::string()) + "," +
           format_real(p.robust_fraction) + "," + (p.valid ? "true" : "false") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plain-text class comparison tables

namespace detail {
inline std::string fixed(const std::optional<double>& v, int digits = 3) {
  if (!v) return "n/a";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
  return buf;
}

inline std::string p_cell(const ClassComparison& c) {
  if (!c.p_value) return "n/a (class too small)";
  if (*c.p_value < 0.001) return "<0.001 *";
  return fixed(c.p_value) + (*c.p_value < 0.05 ? " *" : "");
}

inline std::string row(const std::vector<std::string>& cells, const std::vector<int>& widths) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string cell = cells[i];
    if (cell.size() < static_cast<std::size_t>(widths[i])) cell.resize(static_cast<std::size_t>(widths[i]), ' ');
    out += cell;
    if (i + 1 < cells.size()) out += "  ";
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out + "\n";
}
}  // namespace detail

/// Renders the class comparison as four text tables: angle fingerprint,
/// per-axis p-values, angle-importance correlation and importance shape.
/// `*` marks p < 0.05.
inline std::string compare_classes(const EnsembleReport& rep) {
  using detail::fixed;
  using detail::p_cell;
  using detail::row;
  std::string out;
  char head[160];
  std::snprintf(head, sizeof head, "ensemble n=%d kappa=%s circuits=%zu robust=%zu fragile=%zu\n", rep.config.n,
                format_short(rep.config.kappa).c_str(), rep.records.size(), rep.robust.count, rep.fragile.count);
  out += head;
  out += "fidelity: robust mean " + fixed(rep.robust.mean_fidelity) + ", fragile mean " +
         fixed(rep.fragile.mean_fidelity) + ", gap " + fixed(rep.fidelity_gap, 4) + ", cohen's d " +
         fixed(rep.cohens_d_fidelity, 2) + "\n";
  if (!rep.both_classes()) out += "warning: one class is empty; comparisons are absent\n";

  const std::vector<int> w4 = {20, 8, 8, 22};
  out += "\n[angle fingerprint]\n";
  out += row({"metric", "robust", "fragile", "p-value"}, w4);
  for (const auto& c : rep.angle_fingerprint) {
    out += row({c.metric, fixed(c.robust_mean), fixed(c.fragile_mean), p_cell(c)}, w4);
  }

  out += "\n[per-axis angle comparison]\n";
  out += row({"gate", "robust", "fragile", "p-value"}, w4);
  for (const auto& c : rep.per_axis) {
    out += row({c.metric, fixed(c.robust_mean), fixed(c.fragile_mean), p_cell(c)}, w4);
  }

  out += "\n[angle-importance correlation]\n";
  out += row({"metric", "robust", "fragile", "p-value"}, w4);
  out += row({"mean r", fixed(rep.correlation.robust_mean), fixed(rep.correlation.fragile_mean),
              p_cell(rep.correlation)},
             w4);

  out += "\n[importance shape]\n";
  out += row({"metric", "robust", "fragile", "p-value"}, w4);
  for (const auto& c : rep.importance_shape) {
    out += row({c.metric, fixed(c.robust_mean), fixed(c.fragile_mean), p_cell(c)}, w4);
  }
  return out;
}

}  // namespace qbrittle
