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

#include "crank/crank.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <numeric>
#include <utility>

#include "crank/error.hpp"
#include "crank/classifiers.hpp"
#include "grow.hpp"

namespace crank {

namespace internal {

bool has_two_distinct(const Dataset& data, std::span<const std::size_t> rows) {
  return std::any_of(rows.begin(), rows.end(), [&](std::size_t r) {
    return data.label(r) != data.label(rows.front());
  });
}

RankingTree grow_ranking_tree(const Dataset& data, int depth,
                              std::size_t min_leaf,
                              const SplitFinder& find_split) {
  RankingTree::NodeMap nodes;
  struct Pending {
    NodeId id;
    std::vector<std::size_t> rows;
  };
  std::deque<Pending> queue;
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  queue.push_back({NodeId{}, std::move(all)});

  while (!queue.empty()) {
    Pending cell = std::move(queue.front());
    queue.pop_front();
    const bool splittable = cell.id.depth < depth &&
                            cell.rows.size() >= 2 * min_leaf &&
                            has_two_distinct(data, cell.rows);
    std::optional<NodeRule> rule;
    if (splittable) rule = find_split(data, cell.rows);
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    if (rule) {
      for (std::size_t r : cell.rows) {
        (rule->predict(data.row(r)) == 1 ? left : right).push_back(r);
      }
    }
    if (!rule || left.empty() || right.empty()) {
      nodes.emplace(cell.id, EmptyLeaf{});
      continue;
    }
    nodes.emplace(cell.id, *rule);
    queue.push_back({cell.id.left(), std::move(left)});
    queue.push_back({cell.id.right(), std::move(right)});
  }
  return RankingTree(data.dim(), depth, nodes);
}

}  // namespace internal

namespace {

// Sign of (mean label on the +1 side) - (mean label on the -1 side); 0 when
// either side is empty.
int orientation(const Dataset& data, std::span<const std::size_t> rows,
                const NodeRule& rule) {
  double sum[2] = {0.0, 0.0};
  std::size_t count[2] = {0, 0};
  for (std::size_t r : rows) {
    const int side = rule.predict(data.row(r)) == 1 ? 0 : 1;
    sum[side] += data.label(r);
    ++count[side];
  }
  if (count[0] == 0 || count[1] == 0) return 0;
  const double left = sum[0] / static_cast<double>(count[0]);
  const double right = sum[1] / static_cast<double>(count[1]);
  return left < right ? -1 : (left > right ? 1 : 0);
}

}  // namespace

NodeClassifier stump_classifier() {
  return [](const Dataset& data, std::span<const std::size_t> rows,
            std::span<const int> z) -> std::optional<NodeRule> {
    const bool both = std::find(z.begin(), z.end(), 1) != z.end() &&
                      std::find(z.begin(), z.end(), -1) != z.end();
    if (!both) return std::nullopt;
    return NodeRule(fit_stump(data, rows, z).stump);
  };
}

NodeClassifier tree_classifier(int max_depth) {
  if (max_depth < 1 || max_depth > kMaxDepthBudget) {
    throw Error(fmt::format("tree classifier: depth {} outside [1, {}]",
                            max_depth, kMaxDepthBudget));
  }
  return [max_depth](const Dataset& data, std::span<const std::size_t> rows,
                     std::span<const int> z) -> std::optional<NodeRule> {
    ClassifierTree tree = fit_classifier_tree(data, rows, z, max_depth);
    const auto& nodes = tree.nodes();
    if (nodes.size() == 1) return std::nullopt;
    if (nodes.size() == 3) {
      Stump stump = *nodes[0].rule;
      stump.polarity = nodes[nodes[0].left].leaf;
      return NodeRule(stump);
    }
    return NodeRule(std::move(tree));
  };
}

void validate(const CrankConfig& cfg, std::size_t n) {
  if (cfg.depth < 1 || cfg.depth > kMaxDepthBudget) {
    throw Error(fmt::format("crank: depth {} outside [1, {}]", cfg.depth,
                            kMaxDepthBudget));
  }
  if (cfg.min_leaf < 1) throw Error("crank: min_leaf must be >= 1");
  if (!cfg.classifier) throw Error("crank: no node classifier");
  if (cfg.depth >= 63 || (std::uint64_t{1} << cfg.depth) > n) {
    throw Error(fmt::format("crank: 2^depth = 2^{} exceeds the sample size {}",
                            cfg.depth, n));
  }
}

double lower_median(std::span<const double> labels) {
  if (labels.empty()) throw Error("lower_median: no labels");
  std::vector<double> sorted(labels.begin(), labels.end());
  const std::size_t m = sorted.size();
  const std::size_t mid = (m + 1) / 2 - 1;
  std::nth_element(sorted.begin(), sorted.begin() + mid, sorted.end());
  return sorted[mid];
}

std::vector<int> median_dichotomy(std::span<const double> labels,
                                  double median) {
  std::vector<int> z(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    z[i] = labels[i] > median ? 1 : -1;
  }
  return z;
}

RankingTree fit_crank(const Dataset& data, const CrankConfig& cfg) {
  if (data.size() < 2) throw Error("crank: at least two points are required");
  validate(cfg, data.size());
  return internal::grow_ranking_tree(
      data, cfg.depth, cfg.min_leaf,
      [&](const Dataset& d,
          std::span<const std::size_t> rows) -> std::optional<NodeRule> {
        std::vector<double> local(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) local[i] = d.label(rows[i]);
        const auto z = median_dichotomy(local, lower_median(local));
        std::optional<NodeRule> rule;
        try {
          rule = cfg.classifier(d, rows, z);
        } catch (const Error&) {
          return std::nullopt;
        }
        if (rule && orientation(d, rows, *rule) < 0) rule = rule->negated();
        return rule;
      });
}

}  // namespace crank
