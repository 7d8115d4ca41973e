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

#ifndef CRANK_KERNELS_HPP_
#define CRANK_KERNELS_HPP_

// Counting kernels behind the ranking metrics. Each kernel has a serial
// reference and an OpenMP version; both produce identical results (integer
// counts, or per-row curve values computed with the same arithmetic), which
// the tests check and the benchmark compares for speed.
//
// Inputs are assumed finite and of equal length; the metric layer validates.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace crank::kernels {

// Over unordered pairs {i, j}.
struct PairCounts {
  std::int64_t concordant = 0;  // (s_i - s_j)(y_i - y_j) > 0
  std::int64_t discordant = 0;  // (s_i - s_j)(y_i - y_j) < 0
  std::int64_t score_ties = 0;  // s_i == s_j

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

// Over ordered triples (i, j, k) with y_i < y_j < y_k.
struct TripleCounts {
  std::int64_t concordant = 0;  // s_i < s_k
  std::int64_t score_ties = 0;  // s_i == s_k

  friend bool operator==(const TripleCounts&, const TripleCounts&) = default;
};

namespace serial {

PairCounts pair_counts(std::span<const double> scores,
                       std::span<const double> labels);

// O(n^2): each pair (i, k) with y_i < y_k is weighted by the number of
// labels strictly between y_i and y_k.
TripleCounts triple_counts(std::span<const double> scores,
                           std::span<const double> labels);

// Empirical ROC curves of `scores` for the classes {label < t} (negatives)
// versus {label > t} (positives), one per threshold t, sampled at `alphas`.
// Writes thresholds.size() rows of alphas.size() values into `out`
// (row-major). Every threshold must leave both classes nonempty.
void roc_batch(std::span<const double> scores, std::span<const double> labels,
               std::span<const double> thresholds,
               std::span<const double> alphas, std::span<double> out);

}  // namespace serial

namespace parallel {

PairCounts pair_counts(std::span<const double> scores,
                       std::span<const double> labels);
TripleCounts triple_counts(std::span<const double> scores,
                           std::span<const double> labels);
void roc_batch(std::span<const double> scores, std::span<const double> labels,
               std::span<const double> thresholds,
               std::span<const double> alphas, std::span<double> out);

}  // namespace parallel

namespace detail {

// Scores sorted in decreasing order, grouped into tie blocks.
struct TieBlocks {
  std::vector<std::size_t> order;   // indices by decreasing score
  std::vector<std::size_t> starts;  // block boundaries into `order`, plus end
};

TieBlocks tie_blocks(std::span<const double> scores);

// For every i: #{j : y_j < y_i} and #{j : y_j <= y_i}.
void label_ranks(std::span<const double> labels,
                 std::span<std::int64_t> strictly_below,
                 std::span<std::int64_t> at_or_below);

// One ROC curve at threshold t, sampled at `alphas`, into `out`.
void roc_row(const TieBlocks& blocks, std::span<const double> labels,
             double threshold, std::span<const double> alphas,
             std::span<double> out);

// Pair counting in O(n log n): observations sorted by (score, label), labels
// replaced by dense ranks, plus the tie totals needed to recover concordant
// pairs from discordant ones.
struct PairOrder {
  std::vector<std::uint32_t> rank;  // label rank, by sorted position
  std::vector<std::size_t> blocks;  // score tie-block starts, plus end
  std::size_t distinct_labels = 0;
  std::int64_t score_ties = 0;
  std::int64_t label_ties = 0;
  std::int64_t joint_ties = 0;
};

PairOrder pair_order(std::span<const double> scores,
                     std::span<const double> labels);

// Discordant pairs among sorted positions in blocks [first, last). `fenwick`
// must hold distinct_labels + 1 zeros; it is left zeroed on return.
std::int64_t discordant_within(const PairOrder& po, std::size_t first,
                               std::size_t last,
                               std::vector<std::int64_t>& fenwick);

PairCounts pair_counts_from(const PairOrder& po, std::int64_t discordant);

// The parallel kernel with an explicit number of chunks, for testing.
PairCounts pair_counts_chunked(std::span<const double> scores,
                               std::span<const double> labels,
                               std::size_t chunks);

}  // namespace detail

}  // namespace crank::kernels

#endif  // CRANK_KERNELS_HPP_
