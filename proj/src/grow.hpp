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

#ifndef CRANK_SRC_GROW_HPP_
#define CRANK_SRC_GROW_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "crank/dataset.hpp"
#include "crank/tree.hpp"

namespace crank::internal {

using SplitFinder = std::function<std::optional<NodeRule>(
    const Dataset& data, std::span<const std::size_t> rows)>;

// Breadth-first growth shared by the ranking-tree learners. A cell is split
// only if it has at least 2 * min_leaf rows, two distinct labels, depth below
// `depth`, and the finder's rule leaves both children nonempty.
RankingTree grow_ranking_tree(const Dataset& data, int depth,
                              std::size_t min_leaf,
                              const SplitFinder& find_split);

bool has_two_distinct(const Dataset& data, std::span<const std::size_t> rows);

}  // namespace crank::internal

#endif  // CRANK_SRC_GROW_HPP_
