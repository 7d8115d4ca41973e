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

#include "crank/prune.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "crank/error.hpp"
#include "crank/metrics.hpp"

namespace crank {

namespace {

std::size_t distinct_labels(const Dataset& data) {
  std::set<double> values(data.labels().begin(), data.labels().end());
  return values.size();
}

}  // namespace

std::optional<double> criterion_value(const RankingTree& tree,
                                      const Dataset& data,
                                      PruneCriterion criterion) {
  std::vector<double> scores(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) scores[i] = tree.score(data.row(i));
  if (criterion == PruneCriterion::kKendall) {
    if (data.size() < 2) return std::nullopt;
    return kendall_tau(scores, data.labels());
  }
  if (data.size() < 3 || distinct_labels(data) < 3) return std::nullopt;
  return iauc_u(scores, data.labels());
}

RankingTree collapse(const RankingTree& tree, NodeId id) {
  auto nodes = tree.node_map();
  auto it = nodes.find(id);
  if (it == nodes.end() || !std::holds_alternative<NodeRule>(it->second)) {
    throw Error(fmt::format("collapse: {} is not an internal node",
                            node_key(id)));
  }
  for (auto node = nodes.begin(); node != nodes.end();) {
    node = id.is_ancestor_of(node->first) ? nodes.erase(node) : std::next(node);
  }
  nodes.insert_or_assign(id, EmptyLeaf{});
  return RankingTree(tree.dim(), tree.depth_budget(), nodes);
}

std::vector<RankingTree> pruning_sequence(const RankingTree& tree,
                                          const Dataset& data,
                                          PruneCriterion criterion) {
  std::vector<RankingTree> sequence{tree};
  while (sequence.back().leaf_count() > 1) {
    const RankingTree& current = sequence.back();
    std::optional<RankingTree> best;
    std::optional<double> best_value;
    for (const auto& node : current.nodes()) {
      if (node.is_leaf()) continue;
      if (!current.nodes()[node.left].is_leaf() ||
          !current.nodes()[node.right].is_leaf()) {
        continue;
      }
      RankingTree merged = collapse(current, node.id);
      const auto value = criterion_value(merged, data, criterion);
      const bool better =
          !best || (value && (!best_value || *value > *best_value));
      if (better) {
        best = std::move(merged);
        best_value = value;
      }
    }
    sequence.push_back(std::move(*best));
  }
  return sequence;
}

RankingTree prune(const RankingTree& tree, const Dataset& data,
                  const TreeLearner& learner, const PruneOptions& options) {
  const std::size_t n = data.size();
  if (options.folds < 2) throw Error("prune: folds must be >= 2");
  if (options.folds > n) {
    throw Error(fmt::format("prune: {} folds exceed the {} samples",
                            options.folds, n));
  }
  if (tree.dim() != data.dim()) {
    throw Error("prune: tree and data dimensions differ");
  }
  const auto sequence = pruning_sequence(tree, data, options.criterion);
  if (sequence.size() == 1) return tree;
  const std::size_t max_leaves = tree.leaf_count();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(options.seed);
  std::shuffle(order.begin(), order.end(), rng);

  // scores[L - 1] collects the validation criterion of the L-leaf member.
  std::vector<std::vector<double>> scores(max_leaves);
  for (std::size_t fold = 0; fold < options.folds; ++fold) {
    std::vector<std::size_t> train;
    std::vector<std::size_t> held_out;
    for (std::size_t i = 0; i < n; ++i) {
      (i % options.folds == fold ? held_out : train).push_back(order[i]);
    }
    if (train.size() < 2) continue;
    const Dataset train_data = data.subset(train);
    const Dataset held_data = data.subset(held_out);
    const auto fold_sequence =
        pruning_sequence(learner(train_data), train_data, options.criterion);
    std::vector<double> fold_scores(max_leaves);
    bool defined = true;
    for (std::size_t leaves = 1; leaves <= max_leaves && defined; ++leaves) {
      // Largest member with at most `leaves` leaves.
      const RankingTree* member = &fold_sequence.front();
      for (const auto& t : fold_sequence) {
        if (t.leaf_count() <= leaves) {
          member = &t;
          break;
        }
      }
      const auto value = criterion_value(*member, held_data, options.criterion);
      if (!value) defined = false;
      else fold_scores[leaves - 1] = *value;
    }
    if (!defined) continue;
    for (std::size_t l = 0; l < max_leaves; ++l) scores[l].push_back(fold_scores[l]);
  }
  if (scores.front().empty()) return tree;

  const std::size_t used = scores.front().size();
  std::vector<double> mean(max_leaves);
  std::vector<double> std_error(max_leaves);
  for (std::size_t l = 0; l < max_leaves; ++l) {
    const double m =
        std::accumulate(scores[l].begin(), scores[l].end(), 0.0) / used;
    double var = 0.0;
    for (double v : scores[l]) var += (v - m) * (v - m);
    var = used > 1 ? var / static_cast<double>(used - 1) : 0.0;
    mean[l] = m;
    std_error[l] = std::sqrt(var / static_cast<double>(used));
  }
  std::size_t best = 0;
  for (std::size_t l = 1; l < max_leaves; ++l) {
    if (mean[l] > mean[best]) best = l;
  }
  std::size_t chosen = best;
  for (std::size_t l = 0; l < best; ++l) {
    if (mean[l] >= mean[best] - std_error[best]) {
      chosen = l;
      break;
    }
  }
  const std::size_t leaves = chosen + 1;
  return sequence[max_leaves - leaves];
}

RankingTree prune(const RankingTree& tree, const Dataset& data,
                  const CrankConfig& cfg, std::size_t folds) {
  PruneOptions options;
  options.folds = folds;
  options.seed = cfg.seed;
  options.criterion = PruneCriterion::kIauc;
  auto learner = [&cfg](const Dataset& d) {
    CrankConfig fold_cfg = cfg;
    const int cap = static_cast<int>(std::floor(std::log2(d.size())));
    fold_cfg.depth = std::max(1, std::min(cfg.depth, cap));
    return fit_crank(d, fold_cfg);
  };
  return prune(tree, data, learner, options);
}

}  // namespace crank
