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

#ifndef CRANK_EXPERIMENT_HPP_
#define CRANK_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crank/crank.hpp"
#include "crank/dataset.hpp"
#include "crank/metrics.hpp"
#include "crank/model.hpp"

namespace crank {

enum class Method { kCrank, kKendall, kCart };

Method parse_method(const std::string& name);
std::string method_name(Method method);

// Node learner used by CRank.
enum class ClassifierKind { kTree, kStump };

ClassifierKind parse_classifier_kind(const std::string& name);
std::string classifier_kind_name(ClassifierKind kind);

struct FitOptions {
  Method method = Method::kCrank;
  int depth = 3;
  std::size_t min_leaf = 1;
  bool prune = false;  // crank and kendall only
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  ClassifierKind classifier = ClassifierKind::kTree;  // crank only
  int classifier_depth = kDefaultClassifierDepth;
};

// Fits the chosen learner; with `prune`, crank trees are pruned on IAUC and
// kendall trees on Kendall tau.
ScoringModel fit_model(const Dataset& train, const FitOptions& options);

struct CompareConfig {
  std::size_t n_train = 100;
  std::size_t n_test = 2000;
  int depth = 3;
  std::size_t min_leaf = 1;
  bool prune = false;
  std::size_t folds = 5;
  ClassifierKind classifier = ClassifierKind::kTree;
  int classifier_depth = kDefaultClassifierDepth;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
};

struct CompareRow {
  std::uint64_t seed = 0;
  Method method = Method::kCrank;
  MetricsReport report;
};

struct CompareResult {
  std::vector<CompareRow> per_seed;  // seed-major, methods in enum order
  std::vector<CompareRow> mean;      // one row per method
};

// For every seed s: train and test sets from the polynomial experiment with
// generator seeds 2s and 2s + 1, the three learners fit on train at the
// shared depth, each evaluated on test. Seeds may run in parallel; results
// are ordered by position in cfg.seeds.
CompareResult run_comparison(const CompareConfig& cfg);

// Header seed,method,iauc,kendall,mse; per-seed rows, then rows with seed
// "mean".
void write_comparison_csv(std::ostream& out, const CompareResult& result);

}  // namespace crank

#endif  // CRANK_EXPERIMENT_HPP_
