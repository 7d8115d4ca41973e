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

#ifndef CRANK_METRICS_HPP_
#define CRANK_METRICS_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "crank/dataset.hpp"
#include "crank/model.hpp"

namespace crank {

// Monotone curve sampled on a strictly increasing grid from 0 to 1.
struct Curve {
  std::vector<double> alphas;
  std::vector<double> values;
};

// `points` evenly spaced values from 0 to 1 inclusive (points >= 2).
std::vector<double> uniform_grid(std::size_t points = 101);

// Concordance probability on [0, 1]:
//   (2 #{i<j : (s_i - s_j)(y_i - y_j) > 0} + #{i<j : s_i = s_j}) / (n(n-1)).
// Pairs with tied labels and distinct scores contribute nothing.
double kendall_tau(std::span<const double> scores,
                   std::span<const double> labels);

// Mann-Whitney AUC of the bipartite problem {y_i < y} vs {y_i > y}; labels
// equal to y belong to neither class. Score ties count one half.
double auc_at_threshold(std::span<const double> scores,
                        std::span<const double> labels, double y);

// Empirical ROC curve for the same classes, with tie blocks drawn as linear
// segments. Sampled as the upper envelope at alpha > 0 and 0 at alpha = 0.
Curve roc_at_threshold(std::span<const double> scores,
                       std::span<const double> labels, double y,
                       std::span<const double> alphas);

// Pointwise mean of roc_at_threshold over every sample label y_j that has a
// strictly smaller and a strictly larger label in the data, each sample
// weighted equally.
Curve iroc_curve(std::span<const double> scores,
                 std::span<const double> labels,
                 std::span<const double> alphas);
Curve iroc_curve(const ScoringModel& model, const Dataset& data,
                 std::span<const double> alphas);

// Trapezoidal area under a curve.
double iauc_from_curve(const Curve& curve);

// Degree-3 U-statistic
//   (6 #{s_i < s_k, y_i < y_j < y_k} + 3 #{s_i = s_k, y_i < y_j < y_k})
//     / (n(n-1)(n-2)).
// The middle element's score plays no role.
double iauc_u(std::span<const double> scores, std::span<const double> labels);

double mse(std::span<const double> predictions,
           std::span<const double> labels);

struct MetricsReport {
  double iauc = 0.0;
  double kendall = 0.0;
  double mse = 0.0;
};

// iauc_u and kendall_tau on the model's scores; mse on predict() outputs.
MetricsReport evaluate(const ScoringModel& model, const Dataset& data);

void write_curve_csv(std::ostream& out, const Curve& curve);
void write_report_csv(std::ostream& out, const MetricsReport& report);

}  // namespace crank

#endif  // CRANK_METRICS_HPP_
