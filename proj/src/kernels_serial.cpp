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

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "crank/kernels.hpp"

namespace crank::kernels {

namespace detail {

namespace {

std::int64_t tied_pairs(std::int64_t run) { return run * (run - 1) / 2; }

}  // namespace

PairOrder pair_order(std::span<const double> scores,
                     std::span<const double> labels) {
  const std::size_t n = scores.size();
  std::vector<double> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] != scores[b] ? scores[a] < scores[b] : labels[a] < labels[b];
  });

  PairOrder po;
  po.distinct_labels = distinct.size();
  po.rank.resize(n);
  std::vector<std::int64_t> label_counts(distinct.size(), 0);
  std::int64_t joint_run = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r =
        std::lower_bound(distinct.begin(), distinct.end(), labels[order[i]]) -
        distinct.begin();
    po.rank[i] = static_cast<std::uint32_t>(r);
    ++label_counts[r];
    const bool new_block = i == 0 || scores[order[i]] != scores[order[i - 1]];
    if (new_block) po.blocks.push_back(i);
    if (new_block || po.rank[i] != po.rank[i - 1]) {
      po.joint_ties += tied_pairs(joint_run);
      joint_run = 0;
    }
    ++joint_run;
  }
  po.joint_ties += tied_pairs(joint_run);
  po.blocks.push_back(n);
  for (std::size_t b = 0; b + 1 < po.blocks.size(); ++b) {
    po.score_ties += tied_pairs(static_cast<std::int64_t>(po.blocks[b + 1] - po.blocks[b]));
  }
  for (std::int64_t c : label_counts) po.label_ties += tied_pairs(c);
  return po;
}

std::int64_t discordant_within(const PairOrder& po, std::size_t first,
                               std::size_t last,
                               std::vector<std::int64_t>& fenwick) {
  const std::size_t size = fenwick.size();
  auto add = [&](std::size_t r, std::int64_t v) {
    for (std::size_t i = r + 1; i < size; i += i & (~i + 1)) fenwick[i] += v;
  };
  auto at_or_below = [&](std::size_t r) {
    std::int64_t total = 0;
    for (std::size_t i = r + 1; i > 0; i -= i & (~i + 1)) total += fenwick[i];
    return total;
  };
  std::int64_t discordant = 0;
  std::int64_t inserted = 0;
  for (std::size_t b = first; b < last; ++b) {
    const std::size_t lo = po.blocks[b];
    const std::size_t hi = po.blocks[b + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      discordant += inserted - at_or_below(po.rank[i]);
    }
    for (std::size_t i = lo; i < hi; ++i) add(po.rank[i], 1);
    inserted += static_cast<std::int64_t>(hi - lo);
  }
  for (std::size_t i = po.blocks[first]; i < po.blocks[last]; ++i) add(po.rank[i], -1);
  return discordant;
}

PairCounts pair_counts_from(const PairOrder& po, std::int64_t discordant) {
  const auto n = static_cast<std::int64_t>(po.rank.size());
  const std::int64_t untied =
      tied_pairs(n) - po.score_ties - po.label_ties + po.joint_ties;
  return {untied - discordant, discordant, po.score_ties};
}


TieBlocks tie_blocks(std::span<const double> scores) {
  TieBlocks blocks;
  blocks.order.resize(scores.size());
  std::iota(blocks.order.begin(), blocks.order.end(), std::size_t{0});
  std::stable_sort(blocks.order.begin(), blocks.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  for (std::size_t i = 0; i < blocks.order.size(); ++i) {
    if (i == 0 || scores[blocks.order[i]] != scores[blocks.order[i - 1]]) {
      blocks.starts.push_back(i);
    }
  }
  blocks.starts.push_back(blocks.order.size());
  return blocks;
}

void label_ranks(std::span<const double> labels,
                 std::span<std::int64_t> strictly_below,
                 std::span<std::int64_t> at_or_below) {
  std::vector<double> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto lo = std::lower_bound(sorted.begin(), sorted.end(), labels[i]);
    auto hi = std::upper_bound(lo, sorted.end(), labels[i]);
    strictly_below[i] = lo - sorted.begin();
    at_or_below[i] = hi - sorted.begin();
  }
}

void roc_row(const TieBlocks& blocks, std::span<const double> labels,
             double threshold, std::span<const double> alphas,
             std::span<double> out) {
  // Vertices (false positives, true positives) after each tie block, scanning
  // from the highest score down; a block holding both classes becomes one
  // diagonal segment.
  std::vector<std::pair<std::int64_t, std::int64_t>> vertices;
  vertices.reserve(blocks.starts.size());
  vertices.emplace_back(0, 0);
  std::int64_t fp = 0;
  std::int64_t tp = 0;
  for (std::size_t b = 0; b + 1 < blocks.starts.size(); ++b) {
    std::int64_t dfp = 0;
    std::int64_t dtp = 0;
    for (std::size_t i = blocks.starts[b]; i < blocks.starts[b + 1]; ++i) {
      const double y = labels[blocks.order[i]];
      dfp += y < threshold ? 1 : 0;
      dtp += y > threshold ? 1 : 0;
    }
    if (dfp == 0 && dtp == 0) continue;
    fp += dfp;
    tp += dtp;
    vertices.emplace_back(fp, tp);
  }
  const double negatives = static_cast<double>(fp);
  const double positives = static_cast<double>(tp);
  auto fpr = [&](std::size_t v) { return vertices[v].first / negatives; };
  auto tpr = [&](std::size_t v) { return vertices[v].second / positives; };

  // Upper envelope of the polyline at alpha > 0; zero at alpha = 0.
  std::size_t v = 0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const double alpha = alphas[a];
    if (alpha <= 0.0) {
      out[a] = 0.0;
      continue;
    }
    while (v + 1 < vertices.size() && fpr(v + 1) <= alpha) ++v;
    if (v + 1 == vertices.size()) {
      out[a] = tpr(v);
    } else {
      const double x0 = fpr(v);
      const double x1 = fpr(v + 1);
      out[a] = tpr(v) + (tpr(v + 1) - tpr(v)) * ((alpha - x0) / (x1 - x0));
    }
  }
}

}  // namespace detail

namespace serial {

PairCounts pair_counts(std::span<const double> scores,
                       std::span<const double> labels) {
  const detail::PairOrder po = detail::pair_order(scores, labels);
  std::vector<std::int64_t> fenwick(po.distinct_labels + 1, 0);
  const std::int64_t discordant =
      detail::discordant_within(po, 0, po.blocks.size() - 1, fenwick);
  return detail::pair_counts_from(po, discordant);
}

TripleCounts triple_counts(std::span<const double> scores,
                           std::span<const double> labels) {
  const std::size_t n = scores.size();
  std::vector<std::int64_t> below(n);
  std::vector<std::int64_t> at_or_below(n);
  detail::label_ranks(labels, below, at_or_below);
  TripleCounts counts;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!(labels[i] < labels[k])) continue;
      const std::int64_t between = below[k] - at_or_below[i];
      if (between <= 0) continue;
      if (scores[i] < scores[k]) {
        counts.concordant += between;
      } else if (scores[i] == scores[k]) {
        counts.score_ties += between;
      }
    }
  }
  return counts;
}

void roc_batch(std::span<const double> scores, std::span<const double> labels,
               std::span<const double> thresholds,
               std::span<const double> alphas, std::span<double> out) {
  const auto blocks = detail::tie_blocks(scores);
  const std::size_t width = alphas.size();
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    detail::roc_row(blocks, labels, thresholds[t], alphas,
                    out.subspan(t * width, width));
  }
}

}  // namespace serial

}  // namespace crank::kernels
