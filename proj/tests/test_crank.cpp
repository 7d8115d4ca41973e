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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "crank/classifiers.hpp"
#include "crank/crank.hpp"
#include "crank/error.hpp"
#include "crank/metrics.hpp"
#include "crank/serialize.hpp"
#include "crank/synthgen.hpp"
#include "test_util.hpp"

namespace crank {
namespace {

using V = std::vector<double>;

Dataset increasing_1d(std::size_t n) {
  V x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>((i * 7) % n);  // shuffled order
    y[i] = 2.0 * x[i] + 1.0;
  }
  return Dataset(1, x, y);
}

CrankConfig with_classifier(NodeClassifier classifier, int depth) {
  CrankConfig cfg;
  cfg.depth = depth;
  cfg.classifier = std::move(classifier);
  return cfg;
}

TEST(Median, LowerMedianConvention) {
  EXPECT_EQ(lower_median(V{4, 1, 3, 2}), 2.0);
  EXPECT_EQ(lower_median(V{5, 1, 3}), 3.0);
  EXPECT_EQ(lower_median(V{7}), 7.0);
  EXPECT_THROW(lower_median(V{}), Error);
  EXPECT_EQ(median_dichotomy(V{1, 2, 2, 3}, 2.0), (std::vector<int>{-1, -1, -1, 1}));
}

TEST(Median, DichotomyBalance) {
  testing::Rng rng(41);
  for (std::size_t m = 1; m < 60; ++m) {
    const V y = testing::random_values(rng, m, 0);
    const auto z = median_dichotomy(y, lower_median(y));
    const auto pos = static_cast<std::size_t>(std::count(z.begin(), z.end(), 1));
    const std::size_t neg = m - pos;
    if (m % 2 == 0) {
      EXPECT_EQ(pos, m / 2);
      EXPECT_EQ(neg, m / 2);
    } else {
      EXPECT_EQ(neg, pos + 1);
    }
  }
}

TEST(Stump, SeparatedFeature) {
  const Dataset data(1, V{0.1, 0.9, 0.2, 0.8}, V{0, 0, 0, 0});
  const std::vector<int> z{-1, 1, -1, 1};
  const StumpFit fit = fit_stump(data, z);
  EXPECT_EQ(fit.errors, 0u);
  EXPECT_EQ(fit.stump.feature, 0u);
  EXPECT_EQ(fit.stump.threshold, 0.5);
  EXPECT_EQ(fit.stump.polarity, 1);
}

TEST(Stump, NegativePolarity) {
  const Dataset data(1, V{0.1, 0.9, 0.2, 0.8}, V{0, 0, 0, 0});
  const StumpFit fit = fit_stump(data, std::vector<int>{1, -1, 1, -1});
  EXPECT_EQ(fit.errors, 0u);
  EXPECT_EQ(fit.stump.polarity, -1);
  EXPECT_EQ(fit.stump.threshold, 0.5);
}

TEST(Stump, UninformativeFeatures) {
  const Dataset data(2, V{1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, V{0, 0, 0, 0, 0});
  const std::vector<int> z{1, -1, 1, -1, -1};
  const StumpFit a = fit_stump(data, z);
  const StumpFit b = fit_stump(data, z);
  EXPECT_EQ(a.errors, 2u);
  EXPECT_EQ(a.stump, b.stump);
  EXPECT_EQ(a.stump.feature, 0u);
}

TEST(Stump, PicksTheInformativeFeature) {
  // Feature 0 is noise, feature 1 separates.
  const Dataset data(2, V{0.3, 0.1, 0.1, 0.2, 0.4, 0.8, 0.2, 0.9}, V{0, 0, 0, 0});
  const StumpFit fit = fit_stump(data, std::vector<int>{-1, -1, 1, 1});
  EXPECT_EQ(fit.stump.feature, 1u);
  EXPECT_EQ(fit.errors, 0u);
}

TEST(Stump, MatchesExhaustiveSearch) {
  testing::Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 15;
    const Dataset data = testing::random_dataset(rng, n, 2, t % 2 ? 4 : 0);
    std::vector<int> z(n);
    for (auto& v : z) v = rng() % 2 ? 1 : -1;
    z[0] = 1;
    z[1] = -1;
    const StumpFit fit = fit_stump(data, z);
    std::size_t best = n;
    for (std::size_t f = 0; f < 2; ++f) {
      for (std::size_t i = 0; i < n; ++i) {
        for (int pol : {1, -1}) {
          const Stump s{f, data.feature(i, f), pol};
          std::size_t err = 0;
          for (std::size_t r = 0; r < n; ++r) err += s.predict(data.row(r)) != z[r];
          best = std::min(best, err);
        }
      }
    }
    std::size_t err = 0;
    for (std::size_t r = 0; r < n; ++r) err += fit.stump.predict(data.row(r)) != z[r];
    ASSERT_EQ(fit.errors, err);
    ASSERT_EQ(fit.errors, best);
  }
}

TEST(Stump, SingleClassIsAnError) {
  const Dataset data(1, V{1, 2}, V{0, 0});
  EXPECT_THROW(fit_stump(data, std::vector<int>{1, 1}), Error);
}

TEST(ClassifierTree, FitsAnInterval) {
  V x;
  std::vector<int> z;
  for (int i = 0; i < 30; ++i) {
    x.push_back(i);
    z.push_back(i >= 10 && i < 20 ? 1 : -1);
  }
  const Dataset data(1, x, V(30, 0.0));
  std::vector<std::size_t> rows(30);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  const ClassifierTree tree = fit_classifier_tree(data, rows, z, 3);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(tree.predict(data.row(i)), z[i]);
  EXPECT_LE(tree.max_depth(), 3);
}

TEST(Crank, MonotoneLabelsDepthOne) {
  for (const auto& classifier : {stump_classifier(), tree_classifier()}) {
    const Dataset data = increasing_1d(10);
    const RankingTree tree = fit_crank(data, with_classifier(classifier, 1));
    ASSERT_EQ(tree.leaf_count(), 2u);
    const Stump* stump = tree.nodes()[0].rule->stump();
    ASSERT_NE(stump, nullptr);
    EXPECT_GT(stump->threshold, 4.0);  // sorted x: 0..9; 5th value 4, 6th 5
    EXPECT_LT(stump->threshold, 5.0);
    EXPECT_EQ(stump->polarity, 1);
    EXPECT_GT(kendall_tau(score_all(tree, data), data.labels()), 0.5);
  }
}

TEST(Crank, ConstantLabelsGiveASingleLeaf) {
  const Dataset data(1, V{1, 2, 3, 4}, V{5, 5, 5, 5});
  EXPECT_EQ(fit_crank(data, with_classifier(tree_classifier(), 2)).leaf_count(), 1u);
  EXPECT_EQ(fit_crank(data, with_classifier(stump_classifier(), 2)).leaf_count(), 1u);
}

TEST(Crank, ConstantFeaturesGiveASingleLeaf) {
  const Dataset data(1, V{1, 1, 1, 1}, V{1, 2, 3, 4});
  EXPECT_EQ(fit_crank(data, with_classifier(stump_classifier(), 2)).leaf_count(), 1u);
  EXPECT_EQ(fit_crank(data, with_classifier(tree_classifier(), 2)).leaf_count(), 1u);
}

TEST(Crank, ClassifierFailureBecomesLeaf) {
  const NodeClassifier failing = [](const Dataset&, std::span<const std::size_t>,
                                    std::span<const int>) -> std::optional<NodeRule> {
    throw Error("no split");
  };
  const Dataset data = increasing_1d(8);
  EXPECT_EQ(fit_crank(data, with_classifier(failing, 2)).leaf_count(), 1u);
}

TEST(Crank, ConfigValidation) {
  const Dataset data = increasing_1d(8);
  EXPECT_THROW(fit_crank(data, with_classifier(stump_classifier(), 4)), Error);
  EXPECT_THROW(fit_crank(data, with_classifier(stump_classifier(), 0)), Error);
  CrankConfig cfg;
  cfg.depth = 2;
  cfg.min_leaf = 0;
  EXPECT_THROW(fit_crank(data, cfg), Error);
  EXPECT_NO_THROW(fit_crank(data, with_classifier(stump_classifier(), 3)));
  EXPECT_THROW(fit_crank(Dataset(1, V{1}, V{1}), CrankConfig{}), Error);
  EXPECT_THROW(tree_classifier(0), Error);
}

TEST(Crank, MinLeafStopsSplitting) {
  const Dataset data = increasing_1d(16);
  CrankConfig cfg = with_classifier(stump_classifier(), 4);
  cfg.min_leaf = 4;  // cells of 8 split once more, cells of 4 do not
  const RankingTree tree = fit_crank(data, cfg);
  EXPECT_EQ(tree.max_depth(), 2);
  EXPECT_EQ(tree.leaf_count(), 4u);
}

TEST(Crank, DeterministicFits) {
  const Dataset data = generate({GenKind::kPolynomialExperiment, 100, 4});
  for (const auto& classifier : {stump_classifier(), tree_classifier()}) {
    const auto cfg = with_classifier(classifier, 3);
    EXPECT_EQ(serialize(fit_crank(data, cfg)), serialize(fit_crank(data, cfg)));
  }
}

TEST(CrankProperty, TrainingKendallNondecreasingInDepth) {
  for (const auto& classifier : {stump_classifier(), tree_classifier()}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Dataset data = generate({GenKind::kPolynomialExperiment, 100, seed});
      double previous = 0.0;
      for (int depth = 1; depth <= 6; ++depth) {
        const RankingTree tree = fit_crank(data, with_classifier(classifier, depth));
        const double tau = kendall_tau(score_all(tree, data), data.labels());
        EXPECT_GE(tau, previous) << "seed " << seed << " depth " << depth;
        previous = tau;
      }
    }
  }
}

TEST(CrankProperty, LeftChildHasHigherMeanLabel) {
  for (const auto& classifier : {stump_classifier(), tree_classifier()}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Dataset data = generate({GenKind::kPolynomialExperiment, 100, seed});
      const RankingTree tree = fit_crank(data, with_classifier(classifier, 4));
      SCOPED_TRACE(::testing::Message() << "seed " << seed);
      std::vector<NodeId> leaf(data.size());
      for (std::size_t i = 0; i < data.size(); ++i) leaf[i] = tree.leaf_of(data.row(i));
      for (const auto& node : tree.nodes()) {
        if (node.is_leaf()) continue;
        double sums[2] = {0, 0};
        int counts[2] = {0, 0};
        for (std::size_t i = 0; i < data.size(); ++i) {
          for (int side = 0; side < 2; ++side) {
            const NodeId child = side == 0 ? node.id.left() : node.id.right();
            if (leaf[i] == child || child.is_ancestor_of(leaf[i])) {
              sums[side] += data.label(i);
              ++counts[side];
            }
          }
        }
        ASSERT_GT(counts[0], 0);
        ASSERT_GT(counts[1], 0);
        EXPECT_GE(sums[0] / counts[0], sums[1] / counts[1]) << node_key(node.id);
      }
    }
  }
}

}  // namespace
}  // namespace crank
