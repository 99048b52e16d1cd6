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
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbrittle/circuit.hpp"
#include "qbrittle/error.hpp"
#include "qbrittle/importance.hpp"

namespace qbrittle {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw UndefinedStatistic("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Unbiased (n - 1) variance.
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw UndefinedStatistic("sample variance needs at least two values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

inline double sample_std(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

// ---------------------------------------------------------------------------
// Angle statistics

struct AxisStats {
  std::size_t count = 0;
  std::optional<double> mean_theta;         // absent when count == 0
  std::optional<double> std_theta;          // absent when count < 2
  std::optional<double> small_angle_ratio;  // absent when count == 0
};

struct AngleStats {
  double mean_theta = 0.0;
  double std_theta = 0.0;
  double small_angle_ratio = 0.0;
  std::size_t count = 0;
  std::array<AxisStats, 3> per_axis{};  // indexed by Axis

  const AxisStats& axis(Axis a) const { return per_axis[static_cast<std::size_t>(a)]; }
};

inline constexpr double kDefaultSmallAngleThreshold = 0.1;

inline double small_angle_ratio(std::span<const double> thetas, double threshold) {
  const auto small = std::count_if(thetas.begin(), thetas.end(), [&](double t) { return t < threshold; });
  return static_cast<double>(small) / static_cast<double>(thetas.size());
}

/// Mean, sample std and small-angle fraction over every rotation gate, with
/// the same breakdown per rotation axis.
inline AngleStats angle_stats(const Circuit& circuit,
                              double small_angle_threshold = kDefaultSmallAngleThreshold) {
  std::vector<double> all;
  std::array<std::vector<double>, 3> by_axis;
  for (const Gate& g : circuit.gates()) {
    if (const auto* r = std::get_if<Rotation>(&g)) {
      all.push_back(r->theta);
      by_axis[static_cast<std::size_t>(r->axis)].push_back(r->theta);
    }
  }
  if (all.size() < 2) throw UndefinedStatistic("angle statistics need at least two rotation gates");
  AngleStats s;
  s.count = all.size();
  s.mean_theta = mean(all);
  s.std_theta = sample_std(all);
  s.small_angle_ratio = small_angle_ratio(all, small_angle_threshold);
  for (std::size_t a = 0; a < 3; ++a) {
    const auto& xs = by_axis[a];
    AxisStats& out = s.per_axis[a];
    out.count = xs.size();
    if (xs.empty()) continue;
    out.mean_theta = mean(xs);
    out.small_angle_ratio = small_angle_ratio(xs, small_angle_threshold);
    if (xs.size() >= 2) out.std_theta = sample_std(xs);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Importance-distribution shape

namespace detail {
inline double checked_total(std::span<const double> scores) {
  double total = 0.0;
  for (double x : scores) {
    if (x < 0.0) throw InvalidParameter("importance scores must be non-negative");
    total += x;
  }
  if (!(total > 0.0)) throw UndefinedStatistic("importance scores sum to zero");
  return total;
}
}  // namespace detail

/// H = -sum p ln p over p_i = I_i / sum I, with 0 ln 0 = 0.
inline double shannon_entropy(std::span<const double> scores) {
  const double total = detail::checked_total(scores);
  double h = 0.0;
  for (double x : scores) {
    if (x > 0.0) {
      const double p = x / total;
      h -= p * std::log(p);
    }
  }
  return h;
}

inline double shannon_entropy(const ImportanceProfile& profile) {
  return shannon_entropy(profile.importance);
}

/// Mean-absolute-difference Gini, sum_ij |x_i - x_j| / (2 N sum x),
/// evaluated in O(N log N) on the sorted scores.
inline double gini(std::span<const double> scores) {
  const double total = detail::checked_total(scores);
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    weighted += (2.0 * static_cast<double>(i) - n + 1.0) * sorted[i];
  }
  return std::max(0.0, weighted / (n * total));
}

inline double gini(const ImportanceProfile& profile) { return gini(profile.importance); }

// ---------------------------------------------------------------------------
// Correlation and two-sample comparisons

inline double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidParameter("pearson_r: sequences differ in length");
  if (xs.size() < 2) throw UndefinedStatistic("pearson_r needs at least two pairs");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedStatistic("pearson_r of a constant sequence");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Pearson r between rotation angle and importance over rotation gates only.
inline double angle_importance_r(const Circuit& circuit, const ImportanceProfile& profile) {
  if (profile.size() != circuit.size()) {
    throw InvalidParameter("importance profile does not match the circuit");
  }
  std::vector<double> thetas, scores;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (const auto* r = std::get_if<Rotation>(&circuit[i])) {
      thetas.push_back(r->theta);
      scores.push_back(profile[i]);
    }
  }
  return pearson_r(thetas, scores);
}

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
inline double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidParameter("incomplete_beta: a and b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Continued fraction converges fast for x < (a + 1) / (a + b + 2).
  if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - incomplete_beta(b, a, 1.0 - x);

  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double f = d;
  for (int m = 1; m <= 1000; ++m) {
    const double dm = m;
    // even step
    double num = dm * (b - dm) * x / ((a + 2 * dm - 1) * (a + 2 * dm));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    f *= d * c;
    // odd step
    num = -(a + dm) * (a + b + dm) * x / ((a + 2 * dm) * (a + 2 * dm + 1));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_front) * f / a;
}

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
inline double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw InvalidParameter("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  return std::clamp(incomplete_beta(df / 2.0, 0.5, df / (df + t * t)), 0.0, 1.0);
}

struct TestResult {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
};

/// Welch's unequal-variance t test, two-sided.
inline TestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw UndefinedStatistic("welch_t_test needs two values per sample");
  const double va = sample_variance(a) / static_cast<double>(a.size());
  const double vb = sample_variance(b) / static_cast<double>(b.size());
  if (va == 0.0 || vb == 0.0) throw UndefinedStatistic("welch_t_test: a sample has zero variance");
  const double se2 = va + vb;
  TestResult r;
  r.statistic = (mean(a) - mean(b)) / std::sqrt(se2);
  r.degrees_of_freedom = se2 * se2 / (va * va / static_cast<double>(a.size() - 1) +
                                      vb * vb / static_cast<double>(b.size() - 1));
  r.p_value = student_t_two_sided_p(r.statistic, r.degrees_of_freedom);
  return r;
}

/// Standardized mean difference with the pooled (n - 1) standard deviation.
inline double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw UndefinedStatistic("cohens_d needs two values per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double pooled =
      std::sqrt(((na - 1) * sample_variance(a) + (nb - 1) * sample_variance(b)) / (na + nb - 2));
  if (pooled == 0.0) throw UndefinedStatistic("cohens_d: pooled standard deviation is zero");
  return (mean(a) - mean(b)) / pooled;
}

// ---------------------------------------------------------------------------
// Robust / fragile classes

enum class ClassLabel { Robust, Fragile };

inline constexpr double kDefaultClassifyThreshold = 0.9;

inline const char* label_name(ClassLabel c) { return c == ClassLabel::Robust ? "robust" : "fragile"; }

/// Robust iff fidelity >= threshold (inclusive).
inline ClassLabel classify(double fidelity, double threshold = kDefaultClassifyThreshold) {
  return fidelity >= threshold ? ClassLabel::Robust : ClassLabel::Fragile;
}

/// min(robust) - max(fragile). Negative when the samples overlap.
inline double fidelity_gap(std::span<const double> robust, std::span<const double> fragile) {
  if (robust.empty() || fragile.empty()) throw UndefinedStatistic("fidelity_gap: a class is empty");
  return *std::min_element(robust.begin(), robust.end()) -
         *std::max_element(fragile.begin(), fragile.end());
}

}  // namespace qbrittle
