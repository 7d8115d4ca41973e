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

#include "crank/classifiers.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "crank/error.hpp"

namespace crank {

double split_point(double a, double b) {
  const double mid = std::midpoint(a, b);
  return mid < b ? mid : a;
}

StumpFit fit_stump(const Dataset& data, std::span<const std::size_t> rows,
                   std::span<const int> z) {
  if (rows.size() != z.size()) throw Error("fit_stump: rows and z differ");
  std::size_t positives = 0;
  for (int v : z) {
    if (v != 1 && v != -1) throw Error("fit_stump: z must be +1 or -1");
    positives += v == 1 ? 1 : 0;
  }
  const std::size_t negatives = z.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error("fit_stump: both classes must be present");
  }

  StumpFit best;
  best.errors = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<double, int>> column(rows.size());
  for (std::size_t f = 0; f < data.dim(); ++f) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      column[i] = {data.feature(rows[i], f), z[i]};
    }
    std::sort(column.begin(), column.end());
    // Rows at or below the threshold are predicted -polarity.
    std::size_t pos_below = 0;
    std::size_t neg_below = 0;
    for (std::size_t i = 0; i < column.size(); ++i) {
      (column[i].second == 1 ? pos_below : neg_below) += 1;
      const bool last = i + 1 == column.size();
      if (!last && column[i + 1].first == column[i].first) continue;
      const double threshold =
          last ? column[i].first
               : split_point(column[i].first, column[i + 1].first);
      const std::size_t err_plus = pos_below + (negatives - neg_below);
      const std::size_t err_minus = neg_below + (positives - pos_below);
      if (err_plus < best.errors) best = {{f, threshold, 1}, err_plus};
      if (err_minus < best.errors) best = {{f, threshold, -1}, err_minus};
    }
  }
  return best;
}

namespace {

struct GiniSplit {
  Stump stump;
  double impurity = 0.0;  // m_L * gini_L + m_R * gini_R
};

// m * gini for a cell with the given class counts.
double weighted_gini(double pos, double neg) {
  const double m = pos + neg;
  return m - (pos * pos + neg * neg) / m;
}

std::optional<GiniSplit> best_gini_split(const Dataset& data,
                                         std::span<const std::size_t> rows,
                                         std::span<const int> z) {
  std::size_t positives = 0;
  for (int v : z) positives += v == 1 ? 1 : 0;
  const std::size_t negatives = z.size() - positives;
  const double parent = weighted_gini(static_cast<double>(positives),
                                      static_cast<double>(negatives));
  std::optional<GiniSplit> best;
  std::vector<std::pair<double, int>> column(rows.size());
  for (std::size_t f = 0; f < data.dim(); ++f) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      column[i] = {data.feature(rows[i], f), z[i]};
    }
    std::sort(column.begin(), column.end());
    std::size_t pos_below = 0;
    std::size_t neg_below = 0;
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      (column[i].second == 1 ? pos_below : neg_below) += 1;
      if (column[i + 1].first == column[i].first) continue;
      const double impurity =
          weighted_gini(static_cast<double>(pos_below),
                        static_cast<double>(neg_below)) +
          weighted_gini(static_cast<double>(positives - pos_below),
                        static_cast<double>(negatives - neg_below));
      if (!best || impurity < best->impurity) {
        best = GiniSplit{
            {f, split_point(column[i].first, column[i + 1].first), 1},
            impurity};
      }
    }
  }
  // Only strict impurity decreases count as splits.
  if (best && !(best->impurity < parent)) return std::nullopt;
  return best;
}

// Merges sibling leaves carrying the same label until none remain.
ClassifierTree::NodeMap merge_equal_siblings(ClassifierTree::NodeMap nodes) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
      if (!std::holds_alternative<Stump>(it->second)) continue;
      const NodeId id = it->first;
      const auto* left = std::get_if<int>(&nodes.at(id.left()));
      const auto* right = std::get_if<int>(&nodes.at(id.right()));
      if (left && right && *left == *right) {
        const int label = *left;
        nodes.erase(id.left());
        nodes.erase(id.right());
        nodes[id] = label;
        changed = true;
        break;
      }
    }
  }
  return nodes;
}

}  // namespace

ClassifierTree fit_classifier_tree(const Dataset& data,
                                   std::span<const std::size_t> rows,
                                   std::span<const int> z, int max_depth) {
  if (rows.size() != z.size()) {
    throw Error("fit_classifier_tree: rows and z differ");
  }
  if (rows.empty()) throw Error("fit_classifier_tree: no rows");
  if (max_depth < 0 || max_depth > kMaxDepthBudget) {
    throw Error("fit_classifier_tree: max_depth out of range");
  }
  ClassifierTree::NodeMap nodes;
  struct Pending {
    NodeId id;
    std::vector<std::size_t> rows;
    std::vector<int> z;
  };
  std::deque<Pending> queue;
  queue.push_back({NodeId{}, {rows.begin(), rows.end()}, {z.begin(), z.end()}});
  while (!queue.empty()) {
    Pending cell = std::move(queue.front());
    queue.pop_front();
    std::size_t positives = 0;
    for (int v : cell.z) positives += v == 1 ? 1 : 0;
    const bool pure = positives == 0 || positives == cell.z.size();
    std::optional<GiniSplit> split;
    if (!pure && cell.id.depth < max_depth) {
      split = best_gini_split(data, cell.rows, cell.z);
    }
    if (!split) {
      nodes.emplace(cell.id, 2 * positives >= cell.z.size() ? 1 : -1);
      continue;
    }
    Pending left{cell.id.left(), {}, {}};
    Pending right{cell.id.right(), {}, {}};
    for (std::size_t i = 0; i < cell.rows.size(); ++i) {
      Pending& side = split->stump.predict(data.row(cell.rows[i])) == 1 ? left : right;
      side.rows.push_back(cell.rows[i]);
      side.z.push_back(cell.z[i]);
    }
    nodes.emplace(cell.id, split->stump);
    queue.push_back(std::move(left));
    queue.push_back(std::move(right));
  }
  return ClassifierTree(data.dim(), max_depth, merge_equal_siblings(std::move(nodes)));
}

StumpFit fit_stump(const Dataset& data, std::span<const int> z) {
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return fit_stump(data, rows, z);
}

}  // namespace crank
