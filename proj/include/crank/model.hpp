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

#ifndef CRANK_MODEL_HPP_
#define CRANK_MODEL_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "crank/dataset.hpp"
#include "crank/tree.hpp"

namespace crank {

// Explicit map from feature vector to score. Points missing from the table
// score `fallback`, which keeps evaluation total.
class TableScorer {
 public:
  using Table = std::map<std::vector<double>, double>;

  TableScorer(std::size_t dim, Table table, double fallback = 0.0);

  // Scores every row of `data` with fn(row). Duplicate rows keep the first
  // value.
  static TableScorer from_function(
      const Dataset& data,
      const std::function<double(std::span<const double>)>& fn);
  // Scores every row with its own label.
  static TableScorer from_labels(const Dataset& data);

  std::size_t dim() const { return dim_; }
  const Table& table() const { return table_; }
  double fallback() const { return fallback_; }
  double score(std::span<const double> x) const;

  friend bool operator==(const TableScorer&, const TableScorer&) = default;

 private:
  std::size_t dim_;
  Table table_;
  double fallback_;
};

using ScoringModel = std::variant<RankingTree, RegressionTree, TableScorer>;

std::size_t model_dim(const ScoringModel& model);

// Value inducing the model's preorder: raw leaf score for ranking trees,
// leaf mean for regression trees, table value for table scorers.
double score(const ScoringModel& model, std::span<const double> x);

// Value compared against labels by MSE. Ranking-tree scores are divided by
// 2^J so they lie in (0, 1]; the other models return their score unchanged.
double predict(const ScoringModel& model, std::span<const double> x);

std::vector<double> score_all(const ScoringModel& model, const Dataset& data);
std::vector<double> predict_all(const ScoringModel& model, const Dataset& data);

}  // namespace crank

#endif  // CRANK_MODEL_HPP_
