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

#ifndef CRANK_CRANK_HPP_
#define CRANK_CRANK_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "crank/dataset.hpp"
#include "crank/tree.hpp"

namespace crank {

// Node learner: given the rows of a cell and their +-1 targets, return the
// rule whose +1 side becomes the left child, or nullopt if it cannot fit one.
using NodeClassifier = std::function<std::optional<NodeRule>(
    const Dataset& data, std::span<const std::size_t> rows,
    std::span<const int> z)>;

// The exhaustive 0-1 stump (fit_stump); nullopt when rows carry one class.
NodeClassifier stump_classifier();

inline constexpr int kDefaultClassifierDepth = 3;

// Gini classification tree (fit_classifier_tree) of at most `max_depth`
// levels. A fitted tree with a single split is returned as the equivalent
// Stump; one with no split yields nullopt.
NodeClassifier tree_classifier(int max_depth = kDefaultClassifierDepth);

struct CrankConfig {
  int depth = 3;             // J; 2^J must not exceed the sample size
  std::size_t min_leaf = 1;  // cells with fewer than 2 * min_leaf rows stay leaves
  NodeClassifier classifier = tree_classifier();
  std::uint64_t seed = 0;    // fold partition when the fitted tree is pruned
};

// Throws if depth < 1, depth > kMaxDepthBudget, min_leaf < 1, no classifier,
// or 2^depth > n.
void validate(const CrankConfig& cfg, std::size_t n);

// Lower median: element ceil(m/2) - 1 of the sorted labels.
double lower_median(std::span<const double> labels);

// z_i = +1 if labels[i] > median, else -1.
std::vector<int> median_dichotomy(std::span<const double> labels,
                                  double median);

// Recursive median dichotomization. Breadth-first from the root, a cell with
// at least 2 * min_leaf rows, two distinct labels and depth below J has its
// labels split at the lower median into +-1 targets; the classifier's +1
// region becomes the left child and its complement the right. A cell whose
// classifier fails or leaves one side empty becomes a leaf.
RankingTree fit_crank(const Dataset& data, const CrankConfig& cfg);

}  // namespace crank

#endif  // CRANK_CRANK_HPP_
