/*
 * Copyright 2026 The crank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "crank/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "crank/error.hpp"
#include "crank/kernels.hpp"

namespace crank {

namespace {

void check_inputs(std::span<const double> scores,
                  std::span<const double> labels, const char* what) {
  if (scores.size() != labels.size()) {
    throw Error(fmt::format("{}: {} scores for {} labels", what, scores.size(),
                            labels.size()));
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(fmt::format("{}: non-finite score", what));
  }
  for (double y : labels) {
    if (!std::isfinite(y)) throw Error(fmt::format("{}: non-finite label", what));
  }
}

void check_grid(std::span<const double> alphas) {
  if (alphas.size() < 2 || alphas.front() != 0.0 || alphas.back() != 1.0) {
    throw Error("alpha grid must run from 0 to 1 with at least two points");
  }
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    if (!(alphas[i] > alphas[i - 1])) {
      throw Error("alpha grid must be strictly increasing");
    }
  }
}

void check_threshold(std::span<const double> labels, double y) {
  const bool has_below =
      std::any_of(labels.begin(), labels.end(), [&](double v) { return v < y; });
  const bool has_above =
      std::any_of(labels.begin(), labels.end(), [&](double v) { return v > y; });
  if (!has_below || !has_above) {
    throw Error(fmt::format("degenerate threshold {}: both classes must be "
                            "nonempty",
                            y));
  }
}

}  // namespace

std::vector<double> uniform_grid(std::size_t points) {
  if (points < 2) throw Error("alpha grid needs at least two points");
  std::vector<double> grid(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / last;
  }
  return grid;
}

double kendall_tau(std::span<const double> scores,
                   std::span<const double> labels) {
  check_inputs(scores, labels, "kendall_tau");
  const std::size_t n = scores.size();
  if (n < 2) throw Error("kendall_tau: at least two points are required");
  const auto counts = kernels::parallel::pair_counts(scores, labels);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(2 * counts.concordant + counts.score_ties) / pairs;
}

double auc_at_threshold(std::span<const double> scores,
                        std::span<const double> labels, double y) {
  check_inputs(scores, labels, "auc_at_threshold");
  check_threshold(labels, y);
  std::vector<double> negatives;
  std::vector<double> positives;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] < y) negatives.push_back(scores[i]);
    if (labels[i] > y) positives.push_back(scores[i]);
  }
  std::sort(negatives.begin(), negatives.end());
  // 2 * concordant + ties over (negative, positive) pairs.
  std::int64_t doubled = 0;
  for (double s : positives) {
    auto lo = std::lower_bound(negatives.begin(), negatives.end(), s);
    auto hi = std::upper_bound(lo, negatives.end(), s);
    doubled += 2 * (lo - negatives.begin()) + (hi - lo);
  }
  const double pairs = static_cast<double>(negatives.size()) *
                       static_cast<double>(positives.size());
  return static_cast<double>(doubled) / (2.0 * pairs);
}

Curve roc_at_threshold(std::span<const double> scores,
                       std::span<const double> labels, double y,
                       std::span<const double> alphas) {
  check_inputs(scores, labels, "roc_at_threshold");
  check_grid(alphas);
  check_threshold(labels, y);
  Curve curve{{alphas.begin(), alphas.end()},
              std::vector<double>(alphas.size())};
  const double thresholds[] = {y};
  kernels::serial::roc_batch(scores, labels, thresholds, alphas, curve.values);
  return curve;
}

Curve iroc_curve(std::span<const double> scores,
                 std::span<const double> labels,
                 std::span<const double> alphas) {
  check_inputs(scores, labels, "iroc_curve");
  check_grid(alphas);
  if (labels.empty()) throw Error("iroc_curve: no data");
  const auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
  // Valid thresholds, merged by value: identical labels give identical
  // sub-ROC curves, so each distinct value is weighted by its multiplicity.
  std::map<double, std::int64_t> multiplicity;
  for (double y : labels) {
    if (*lo < y && y < *hi) ++multiplicity[y];
  }
  if (multiplicity.empty()) {
    throw Error("iroc_curve: no valid threshold (need at least 3 distinct "
                "labels)");
  }
  std::vector<double> thresholds;
  std::vector<double> weights;
  double total = 0.0;
  for (const auto& [y, count] : multiplicity) {
    thresholds.push_back(y);
    weights.push_back(static_cast<double>(count));
    total += static_cast<double>(count);
  }
  const std::size_t width = alphas.size();
  std::vector<double> rows(thresholds.size() * width);
  kernels::parallel::roc_batch(scores, labels, thresholds, alphas, rows);

  Curve curve{{alphas.begin(), alphas.end()}, std::vector<double>(width, 0.0)};
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    for (std::size_t a = 0; a < width; ++a) {
      curve.values[a] += weights[t] * rows[t * width + a];
    }
  }
  for (double& v : curve.values) v /= total;
  return curve;
}

Curve iroc_curve(const ScoringModel& model, const Dataset& data,
                 std::span<const double> alphas) {
  const auto scores = score_all(model, data);
  return iroc_curve(scores, data.labels(), alphas);
}

double iauc_from_curve(const Curve& curve) {
  check_grid(curve.alphas);
  if (curve.values.size() != curve.alphas.size()) {
    throw Error("curve: alphas and values differ in length");
  }
  double area = 0.0;
  for (std::size_t i = 1; i < curve.alphas.size(); ++i) {
    area += 0.5 * (curve.alphas[i] - curve.alphas[i - 1]) *
            (curve.values[i] + curve.values[i - 1]);
  }
  return area;
}

double iauc_u(std::span<const double> scores, std::span<const double> labels) {
  check_inputs(scores, labels, "iauc_u");
  const std::size_t n = scores.size();
  if (n < 3) throw Error("iauc_u: at least three points are required");
  const auto counts = kernels::parallel::triple_counts(scores, labels);
  if (counts.concordant == 0 && counts.score_ties == 0) {
    // Either no triple of distinct labels exists, or every valid triple is
    // discordant. Only the first case is an error.
    std::vector<double> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::unique(sorted.begin(), sorted.end()) - sorted.begin() < 3) {
      throw Error("iauc_u: at least three distinct labels are required");
    }
  }
  const double triples = static_cast<double>(n) * static_cast<double>(n - 1) *
                         static_cast<double>(n - 2);
  return static_cast<double>(6 * counts.concordant + 3 * counts.score_ties) /
         triples;
}

double mse(std::span<const double> predictions,
           std::span<const double> labels) {
  if (predictions.size() != labels.size()) {
    throw Error(fmt::format("mse: {} predictions for {} labels",
                            predictions.size(), labels.size()));
  }
  if (labels.empty()) throw Error("mse: no data");
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double d = predictions[i] - labels[i];
    sum += d * d;
  }
  return sum / static_cast<double>(labels.size());
}

MetricsReport evaluate(const ScoringModel& model, const Dataset& data) {
  if (data.size() < 3) throw Error("evaluate: at least three points required");
  const auto scores = score_all(model, data);
  const auto predictions = predict_all(model, data);
  MetricsReport report;
  report.iauc = iauc_u(scores, data.labels());
  report.kendall = kendall_tau(scores, data.labels());
  report.mse = mse(predictions, data.labels());
  return report;
}

void write_curve_csv(std::ostream& out, const Curve& curve) {
  out << "alpha,value\n";
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    out << format_real(curve.alphas[i]) << ',' << format_real(curve.values[i])
        << '\n';
  }
}

void write_report_csv(std::ostream& out, const MetricsReport& report) {
  out << "iauc,kendall,mse\n"
      << format_real(report.iauc) << ',' << format_real(report.kendall) << ','
      << format_real(report.mse) << '\n';
}

}  // namespace crank
