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

#include <omp.h>

#include <algorithm>
#include <vector>

#include "crank/kernels.hpp"

namespace crank::kernels {

namespace detail {

PairCounts pair_counts_chunked(std::span<const double> scores,
                               std::span<const double> labels,
                               std::size_t chunks) {
  const PairOrder po = pair_order(scores, labels);
  const std::size_t n = po.rank.size();
  const std::size_t nblocks = po.blocks.size() - 1;
  chunks = std::max<std::size_t>(1, std::min(chunks, nblocks));

  // Chunk c covers blocks [cuts[c], cuts[c + 1]); cuts fall on block
  // boundaries so no score tie spans two chunks.
  std::vector<std::size_t> cuts{0};
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t target = c * n / chunks;
    const std::size_t b =
        std::lower_bound(po.blocks.begin(), po.blocks.end() - 1, target) -
        po.blocks.begin();
    cuts.push_back(std::max(cuts.back(), b));
  }
  cuts.push_back(nblocks);

  const auto nchunks = static_cast<std::int64_t>(chunks);
  std::vector<std::vector<std::uint32_t>> sorted(chunks);
  std::int64_t discordant = 0;
#pragma omp parallel reduction(+ : discordant)
  {
    std::vector<std::int64_t> fenwick(po.distinct_labels + 1, 0);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < nchunks; ++c) {
      const std::size_t lo = po.blocks[cuts[c]];
      const std::size_t hi = po.blocks[cuts[c + 1]];
      discordant += discordant_within(po, cuts[c], cuts[c + 1], fenwick);
      sorted[c].assign(po.rank.begin() + lo, po.rank.begin() + hi);
      std::sort(sorted[c].begin(), sorted[c].end());
    }
    // Every score in an earlier chunk is below every score in a later one,
    // so a cross pair is discordant iff the earlier label ranks higher.
#pragma omp for collapse(2) schedule(dynamic, 1)
    for (std::int64_t a = 0; a < nchunks; ++a) {
      for (std::int64_t b = 0; b < nchunks; ++b) {
        if (a >= b) continue;
        const auto& early = sorted[a];
        const auto& late = sorted[b];
        std::size_t i = 0;
        for (std::uint32_t r : late) {
          while (i < early.size() && early[i] <= r) ++i;
          discordant += static_cast<std::int64_t>(early.size() - i);
        }
      }
    }
  }
  return pair_counts_from(po, discordant);
}

}  // namespace detail

namespace parallel {

PairCounts pair_counts(std::span<const double> scores,
                       std::span<const double> labels) {
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(4 * omp_get_max_threads(),
                                                     scores.size() / 2048));
  return detail::pair_counts_chunked(scores, labels, chunks);
}

TripleCounts triple_counts(std::span<const double> scores,
                           std::span<const double> labels) {
  const std::int64_t n = static_cast<std::int64_t>(scores.size());
  std::vector<std::int64_t> below(n);
  std::vector<std::int64_t> at_or_below(n);
  detail::label_ranks(labels, below, at_or_below);
  std::int64_t concordant = 0;
  std::int64_t ties = 0;
#pragma omp parallel for schedule(static) reduction(+ : concordant, ties)
  for (std::int64_t i = 0; i < n; ++i) {
    const double si = scores[i];
    const double yi = labels[i];
    const std::int64_t floor = at_or_below[i];
    for (std::int64_t k = 0; k < n; ++k) {
      if (!(yi < labels[k])) continue;
      const std::int64_t between = below[k] - floor;
      if (between <= 0) continue;
      if (si < scores[k]) {
        concordant += between;
      } else if (si == scores[k]) {
        ties += between;
      }
    }
  }
  return {concordant, ties};
}

void roc_batch(std::span<const double> scores, std::span<const double> labels,
               std::span<const double> thresholds,
               std::span<const double> alphas, std::span<double> out) {
  const auto blocks = detail::tie_blocks(scores);
  const std::int64_t rows = static_cast<std::int64_t>(thresholds.size());
  const std::size_t width = alphas.size();
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t t = 0; t < rows; ++t) {
    detail::roc_row(blocks, labels, thresholds[t], alphas,
                    out.subspan(static_cast<std::size_t>(t) * width, width));
  }
}

}  // namespace parallel

}  // namespace crank::kernels
