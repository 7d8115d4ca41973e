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

#ifndef CRANK_BASELINES_HPP_
#define CRANK_BASELINES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crank/dataset.hpp"
#include "crank/tree.hpp"

namespace crank {

// A candidate split scored by the local empirical Kendall tau of the
// two-level scorer it induces (left cell above right cell) on the node rows.
struct KendallSplit {
  Stump stump;
  std::int64_t cross_concordant = 0;  // cross-cell pairs ordered correctly
  std::int64_t within_ties = 0;       // pairs sharing a cell
  double tau = 0.0;  // (2 cross_concordant + within_ties) / (m (m - 1))
};

// Every candidate for one feature: each midpoint between consecutive distinct
// values, polarity +1 then -1. Cross-cell pairs are counted with a Fenwick tree
// over label ranks while sweeping the sorted feature, O(m log m).
std::vector<KendallSplit> kendall_split_candidates(
    const Dataset& data, std::span<const std::size_t> rows,
    std::size_t feature);

// The candidate with the largest tau over all features; ties go to the lower
// feature, then the lower threshold, then polarity +1. nullopt if every
// feature is constant on `rows`.
std::optional<KendallSplit> best_kendall_split(
    const Dataset& data, std::span<const std::size_t> rows);

// Greedy top-down maximization of the local Kendall tau, under the same
// stopping rules as fit_crank.
RankingTree fit_kendall_tree(const Dataset& data, int depth,
                             std::size_t min_leaf);

// CART regression tree: greedy minimization of the children's summed squared
// error, leaves predict the local label mean. Ties go to the lower feature,
// then the lower threshold.
RegressionTree fit_cart(const Dataset& data, int depth, std::size_t min_leaf);

double predict(const RegressionTree& tree, std::span<const double> x);

}  // namespace crank

#endif  // CRANK_BASELINES_HPP_
