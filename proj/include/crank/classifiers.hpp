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

#ifndef CRANK_CLASSIFIERS_HPP_
#define CRANK_CLASSIFIERS_HPP_

#include <cstddef>
#include <span>

#include "crank/dataset.hpp"
#include "crank/tree.hpp"

namespace crank {

struct StumpFit {
  Stump stump;
  std::size_t errors = 0;  // 0-1 training errors on the fitted rows
};

// Exhaustive 0-1 error minimizer over (feature, threshold, polarity) on the
// given rows of `data`, with z[i] in {-1, +1} the target of rows[i].
// Thresholds are midpoints between consecutive distinct feature values, plus
// the feature maximum, which sends every row to one side. Ties go to the
// lower feature, then the lower threshold, then polarity +1.
// Throws if z holds a single class.
StumpFit fit_stump(const Dataset& data, std::span<const std::size_t> rows,
                   std::span<const int> z);
// All rows of `data`.
StumpFit fit_stump(const Dataset& data, std::span<const int> z);

// Midpoint of a < b that still satisfies a <= t < b.
double split_point(double a, double b);

// Axis-aligned classification tree on the given rows, grown greedily by Gini
// impurity decrease up to `max_depth` levels. A split uses a Stump with
// polarity +1, so x[feature] > threshold goes left. Leaves predict the
// majority class (+1 on a tie). Sibling leaves with equal labels are merged
// afterwards. Split ties go to the lower feature, then the lower threshold.
ClassifierTree fit_classifier_tree(const Dataset& data,
                                   std::span<const std::size_t> rows,
                                   std::span<const int> z, int max_depth);

}  // namespace crank

#endif  // CRANK_CLASSIFIERS_HPP_
