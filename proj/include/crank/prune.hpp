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

#ifndef CRANK_PRUNE_HPP_
#define CRANK_PRUNE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "crank/crank.hpp"
#include "crank/dataset.hpp"
#include "crank/tree.hpp"

namespace crank {

enum class PruneCriterion { kIauc, kKendall };

using TreeLearner = std::function<RankingTree(const Dataset&)>;

struct PruneOptions {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  PruneCriterion criterion = PruneCriterion::kIauc;
};

// iauc_u or kendall_tau of the tree's scores on `data`; nullopt where the
// criterion is undefined (too few points or distinct labels).
std::optional<double> criterion_value(const RankingTree& tree,
                                      const Dataset& data,
                                      PruneCriterion criterion);

// The tree with internal node `id` turned into a leaf (its subtree removed).
RankingTree collapse(const RankingTree& tree, NodeId id);

// Weakest-link sequence from `tree` down to the single root leaf. Each step
// merges the sibling-leaf pair whose removal keeps the training criterion
// highest (ties: lowest NodeId). Element i has leaf_count() - i leaves.
std::vector<RankingTree> pruning_sequence(const RankingTree& tree,
                                          const Dataset& data,
                                          PruneCriterion criterion);

// Selects a member of pruning_sequence(tree, data) by cross-validation:
// rows are shuffled with `seed` and dealt into `folds` folds; for each fold
// the learner is refit on the other folds, its own pruning sequence is built
// on that training part, and each member is scored on the held-out fold.
// Members are matched across folds by leaf count. The smallest leaf count
// whose mean validation criterion is within one standard error of the best
// mean is selected.
RankingTree prune(const RankingTree& tree, const Dataset& data,
                  const TreeLearner& learner, const PruneOptions& options);

// CRank learner with `cfg`; fold refits cap the depth at floor(log2(n_fold)).
RankingTree prune(const RankingTree& tree, const Dataset& data,
                  const CrankConfig& cfg, std::size_t folds);

}  // namespace crank

#endif  // CRANK_PRUNE_HPP_
