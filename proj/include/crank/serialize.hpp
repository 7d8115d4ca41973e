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

#ifndef CRANK_SERIALIZE_HPP_
#define CRANK_SERIALIZE_HPP_

#include <string>
#include <string_view>

#include "crank/model.hpp"

namespace crank {

inline constexpr int kModelFormatVersion = 1;

// JSON model document:
//
//   {
//     "format_version": 1,
//     "model": "ranking_tree" | "regression_tree" | "table",
//     "depth_budget": J,            (trees)
//     "dim": d,
//     "min_leaf": m,                (regression_tree)
//     "nodes": {                    (trees)
//       "j,k": {"kind": "internal", "feature": f, "threshold": t,
//               "polarity": 1 | -1},
//       "j,k": {"kind": "leaf"}     ("value": v for regression_tree)
//     },
//     "fallback": v,                (table)
//     "entries": [{"x": [...], "score": v}, ...]   (table)
//   }
//
// Reals are written with 17 significant digits, so parsing recovers the
// exact doubles.
std::string serialize(const ScoringModel& model);

// Throws ParseError naming the offending field on malformed input.
ScoringModel deserialize(std::string_view text);

void save_model(const std::string& path, const ScoringModel& model);
ScoringModel load_model(const std::string& path);

}  // namespace crank

#endif  // CRANK_SERIALIZE_HPP_
