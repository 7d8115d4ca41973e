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

#include "crank/baselines.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <utility>

#include "crank/error.hpp"
#include "crank/classifiers.hpp"
#include "grow.hpp"

namespace crank {

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Number of inserted ranks < i.
  std::int64_t below(std::size_t i) const {
    std::int64_t sum = 0;
    for (; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

 private:
  std::vector<std::int64_t> tree_;
};

void check_depth(int depth, int lowest) {
  if (depth < lowest || depth > kMaxDepthBudget) {
    throw Error(fmt::format("depth {} outside [{}, {}]", depth, lowest,
                            kMaxDepthBudget));
  }
}

}  // namespace

std::vector<KendallSplit> kendall_split_candidates(
    const Dataset& data, std::span<const std::size_t> rows,
    std::size_t feature) {
  const std::size_t m = rows.size();
  std::vector<KendallSplit> out;
  if (m < 2) return out;

  // Dense label ranks among the node rows.
  std::vector<double> distinct(m);
  for (std::size_t i = 0; i < m; ++i) distinct[i] = data.label(rows[i]);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  auto rank_of = [&](std::size_t r) {
    return static_cast<std::size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), data.label(r)) -
        distinct.begin());
  };
  std::vector<std::int64_t> rank_count(distinct.size(), 0);
  for (std::size_t r : rows) ++rank_count[rank_of(r)];
  std::vector<std::int64_t> total_below(distinct.size() + 1, 0);
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    total_below[k + 1] = total_below[k] + rank_count[k];
  }
  const auto total = static_cast<std::int64_t>(m);

  std::vector<std::pair<double, std::size_t>> column(m);
  for (std::size_t i = 0; i < m; ++i) {
    column[i] = {data.feature(rows[i], feature), rank_of(rows[i])};
  }
  std::sort(column.begin(), column.end());

  // A = rows with x <= threshold (lower cell), B = the rest.
  // up = #{(a, b) : y_b > y_a}, down = #{(a, b) : y_b < y_a}.
  Fenwick lower_cell(distinct.size());
  std::int64_t up = 0;
  std::int64_t down = 0;
  std::int64_t size_a = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const std::size_t r = column[i].second;
    const std::int64_t a_below = lower_cell.below(r);
    const std::int64_t a_above = size_a - lower_cell.below(r + 1);
    const std::int64_t b_below = total_below[r] - a_below;
    const std::int64_t b_above = (total - total_below[r + 1]) - a_above;
    up += b_above - a_below;
    down += b_below - a_above;
    lower_cell.add(r);
    ++size_a;
    if (column[i + 1].first == column[i].first) continue;

    const std::int64_t size_b = total - size_a;
    const std::int64_t within =
        size_a * (size_a - 1) / 2 + size_b * (size_b - 1) / 2;
    const double pairs = static_cast<double>(m) * static_cast<double>(m - 1);
    const double threshold = split_point(column[i].first, column[i + 1].first);
    // Polarity +1 sends x > threshold (B) to the higher-scored left cell.
    out.push_back({{feature, threshold, 1}, up, within,
                   static_cast<double>(2 * up + within) / pairs});
    out.push_back({{feature, threshold, -1}, down, within,
                   static_cast<double>(2 * down + within) / pairs});
  }
  return out;
}

std::optional<KendallSplit> best_kendall_split(
    const Dataset& data, std::span<const std::size_t> rows) {
  std::optional<KendallSplit> best;
  std::int64_t best_value = -1;
  for (std::size_t f = 0; f < data.dim(); ++f) {
    for (const auto& c : kendall_split_candidates(data, rows, f)) {
      const std::int64_t value = 2 * c.cross_concordant + c.within_ties;
      if (value > best_value) {
        best_value = value;
        best = c;
      }
    }
  }
  return best;
}

RankingTree fit_kendall_tree(const Dataset& data, int depth,
                             std::size_t min_leaf) {
  if (data.size() < 2) throw Error("kendall tree: at least two points required");
  check_depth(depth, 1);
  if (min_leaf < 1) throw Error("kendall tree: min_leaf must be >= 1");
  return internal::grow_ranking_tree(
      data, depth, min_leaf,
      [](const Dataset& d,
         std::span<const std::size_t> rows) -> std::optional<NodeRule> {
        auto split = best_kendall_split(d, rows);
        if (!split) return std::nullopt;
        return NodeRule(split->stump);
      });
}

namespace {

struct CartSplit {
  Stump stump;
  double sse = 0.0;
};

std::optional<CartSplit> best_cart_split(const Dataset& data,
                                         std::span<const std::size_t> rows,
                                         double mean) {
  std::optional<CartSplit> best;
  const std::size_t m = rows.size();
  std::vector<std::pair<double, double>> column(m);
  for (std::size_t f = 0; f < data.dim(); ++f) {
    double sum_all = 0.0;
    double sq_all = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double c = data.label(rows[i]) - mean;
      column[i] = {data.feature(rows[i], f), c};
      sum_all += c;
      sq_all += c * c;
    }
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      sum += column[i].second;
      sq += column[i].second * column[i].second;
      if (column[i + 1].first == column[i].first) continue;
      const double n_low = static_cast<double>(i + 1);
      const double n_high = static_cast<double>(m - i - 1);
      const double sse = (sq - sum * sum / n_low) +
                         ((sq_all - sq) - (sum_all - sum) * (sum_all - sum) / n_high);
      if (!best || sse < best->sse) {
        best = CartSplit{
            {f, split_point(column[i].first, column[i + 1].first), 1}, sse};
      }
    }
  }
  return best;
}

}  // namespace

RegressionTree fit_cart(const Dataset& data, int depth, std::size_t min_leaf) {
  check_depth(depth, 0);
  if (min_leaf < 1) throw Error("cart: min_leaf must be >= 1");
  RegressionTree::NodeMap nodes;
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
    double mean = 0.0;
    for (std::size_t r : cell.rows) mean += data.label(r);
    mean /= static_cast<double>(cell.rows.size());

    std::optional<CartSplit> split;
    if (cell.id.depth < depth && cell.rows.size() >= 2 * min_leaf &&
        internal::has_two_distinct(data, cell.rows)) {
      split = best_cart_split(data, cell.rows, mean);
    }
    if (!split) {
      nodes.emplace(cell.id, mean);
      continue;
    }
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : cell.rows) {
      (split->stump.predict(data.row(r)) == 1 ? left : right).push_back(r);
    }
    nodes.emplace(cell.id, split->stump);
    queue.push_back({cell.id.left(), std::move(left)});
    queue.push_back({cell.id.right(), std::move(right)});
  }
  return RegressionTree(data.dim(), depth, min_leaf, nodes);
}

double predict(const RegressionTree& tree, std::span<const double> x) {
  return tree.predict(x);
}

}  // namespace crank
