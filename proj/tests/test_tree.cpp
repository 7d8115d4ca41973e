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

#include <cmath>
#include <vector>

#include "crank/error.hpp"
#include "crank/tree.hpp"
#include "test_util.hpp"

namespace crank {
namespace {

// Root splits on x0 > 0; right child splits on x0 > -1.
RankingTree two_level_tree() {
  RankingTree::NodeMap nodes{
      {{0, 0}, NodeRule(Stump{0, 0.0, 1})},
      {{1, 0}, EmptyLeaf{}},
      {{1, 1}, NodeRule(Stump{0, -1.0, 1})},
      {{2, 2}, EmptyLeaf{}},
      {{2, 3}, EmptyLeaf{}},
  };
  return RankingTree(1, 2, nodes);
}

TEST(Tree, LeftmostLeafScoresTwoToTheJ) {
  const RankingTree tree = two_level_tree();
  const std::vector<double> x{0.5};
  EXPECT_EQ(tree.leaf_of(x), (NodeId{1, 0}));
  EXPECT_EQ(tree.score(x), 4.0);
}

TEST(Tree, RightmostLeafAtDepthTwo) {
  const RankingTree tree = two_level_tree();
  const std::vector<double> x{-3.0};
  EXPECT_EQ(tree.leaf_of(x), (NodeId{2, 3}));
  EXPECT_EQ(tree.score(x), 1.0);
  EXPECT_EQ(tree.score(std::vector<double>{-0.5}), 2.0);
}

TEST(Tree, SubtractionRuleAtDepthThree) {
  RankingTree::NodeMap nodes{{{0, 0}, NodeRule(Stump{0, 0.0, 1})},
                             {{1, 0}, EmptyLeaf{}},
                             {{1, 1}, NodeRule(Stump{0, -1.0, 1})},
                             {{2, 2}, EmptyLeaf{}},
                             {{2, 3}, NodeRule(Stump{0, -2.0, 1})},
                             {{3, 6}, EmptyLeaf{}},
                             {{3, 7}, EmptyLeaf{}}};
  const RankingTree tree(1, 3, nodes);
  const std::vector<double> x{-5.0};
  EXPECT_EQ(tree.leaf_of(x), (NodeId{3, 7}));
  EXPECT_EQ(tree.score(x), 1.0);
  EXPECT_EQ(tree.closed_form_score(x), 8.0 * (1.0 - 7.0 / 8.0));
}

TEST(Tree, SingleLeaf) {
  const RankingTree tree = RankingTree::single_leaf(2, 3);
  const std::vector<double> x{1.0, 2.0};
  EXPECT_EQ(tree.leaf_of(x), (NodeId{0, 0}));
  EXPECT_EQ(tree.score(x), 8.0);
  EXPECT_EQ(tree.leaf_count(), 1u);
}

TEST(Tree, StumpRoutesPositiveLeft) {
  RankingTree::NodeMap nodes{{{0, 0}, NodeRule(Stump{0, 0.5, 1})},
                             {{1, 0}, EmptyLeaf{}},
                             {{1, 1}, EmptyLeaf{}}};
  const RankingTree tree(1, 1, nodes);
  EXPECT_EQ(tree.leaf_of(std::vector<double>{0.7}), (NodeId{1, 0}));
  EXPECT_EQ(tree.leaf_of(std::vector<double>{0.2}), (NodeId{1, 1}));
  EXPECT_EQ(tree.leaf_of(std::vector<double>{0.5}), (NodeId{1, 1}));
}

TEST(Tree, NegativePolarityFlipsRouting) {
  RankingTree::NodeMap nodes{{{0, 0}, NodeRule(Stump{0, 0.5, -1})},
                             {{1, 0}, EmptyLeaf{}},
                             {{1, 1}, EmptyLeaf{}}};
  const RankingTree tree(1, 1, nodes);
  EXPECT_EQ(tree.leaf_of(std::vector<double>{0.7}), (NodeId{1, 1}));
  EXPECT_EQ(tree.leaf_of(std::vector<double>{0.2}), (NodeId{1, 0}));
}

TEST(Tree, DimensionMismatchThrows) {
  const RankingTree tree = two_level_tree();
  EXPECT_THROW(tree.score(std::vector<double>{1.0, 2.0}), Error);
  EXPECT_THROW(tree.leaf_of(std::vector<double>{}), Error);
}

TEST(Tree, RejectsMalformedStructure) {
  // Missing right child.
  EXPECT_THROW(RankingTree(1, 1, {{{0, 0}, NodeRule(Stump{0, 0.0, 1})},
                                  {{1, 0}, EmptyLeaf{}}}),
               Error);
  // Leaf deeper than the budget.
  EXPECT_THROW(RankingTree(1, 1, {{{0, 0}, NodeRule(Stump{0, 0.0, 1})},
                                  {{1, 0}, NodeRule(Stump{0, 0.0, 1})},
                                  {{1, 1}, EmptyLeaf{}},
                                  {{2, 0}, EmptyLeaf{}},
                                  {{2, 1}, EmptyLeaf{}}}),
               Error);
  // Unreachable node below a leaf.
  EXPECT_THROW(RankingTree(1, 2, {{{0, 0}, EmptyLeaf{}}, {{1, 0}, EmptyLeaf{}}}),
               Error);
  // No root.
  EXPECT_THROW(RankingTree(1, 2, {{{1, 0}, EmptyLeaf{}}}), Error);
  // Feature out of range.
  EXPECT_THROW(RankingTree(1, 1, {{{0, 0}, NodeRule(Stump{3, 0.0, 1})},
                                  {{1, 0}, EmptyLeaf{}},
                                  {{1, 1}, EmptyLeaf{}}}),
               Error);
  // Zero depth budget.
  EXPECT_THROW(RankingTree::single_leaf(1, 0), Error);
  // Non-finite threshold.
  EXPECT_THROW(RankingTree(1, 1, {{{0, 0}, NodeRule(Stump{0, NAN, 1})},
                                  {{1, 0}, EmptyLeaf{}},
                                  {{1, 1}, EmptyLeaf{}}}),
               Error);
}

TEST(Tree, NodeKeys) {
  EXPECT_EQ(node_key({3, 5}), "3,5");
  EXPECT_EQ(parse_node_key("3,5"), (NodeId{3, 5}));
  EXPECT_THROW(parse_node_key("1,2"), Error);
  EXPECT_THROW(parse_node_key("1"), Error);
  EXPECT_THROW(parse_node_key("a,b"), Error);
  EXPECT_THROW(parse_node_key("-1,0"), Error);
}

TEST(Tree, NodeIdFamily) {
  const NodeId id{2, 1};
  EXPECT_EQ(id.left(), (NodeId{3, 2}));
  EXPECT_EQ(id.right(), (NodeId{3, 3}));
  EXPECT_EQ(id.right().parent(), id);
  EXPECT_TRUE(id.is_ancestor_of({4, 7}));
  EXPECT_FALSE(id.is_ancestor_of({4, 8}));
  EXPECT_FALSE(id.is_ancestor_of(id));
}

TEST(TreeProperty, TopDownEqualsClosedForm) {
  testing::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const RankingTree tree = testing::random_ranking_tree(rng, 3, 1 + t % 6);
    for (int p = 0; p < 20; ++p) {
      const auto x = testing::random_point(rng, 3);
      ASSERT_EQ(tree.score(x), tree.closed_form_score(x));
      ASSERT_EQ(tree.score(x), leaf_score(tree.leaf_of(x), tree.depth_budget()));
    }
  }
}

TEST(TreeProperty, LeafScoresStrictlyDecreaseLeftToRight) {
  testing::Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const RankingTree tree = testing::random_ranking_tree(rng, 2, 1 + t % 8);
    const auto leaves = tree.leaves();
    ASSERT_EQ(leaves.size(), tree.leaf_count());
    for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
      ASSERT_GT(leaf_score(leaves[i], tree.depth_budget()),
                leaf_score(leaves[i + 1], tree.depth_budget()));
    }
    for (const auto& leaf : leaves) {
      const double s = leaf_score(leaf, tree.depth_budget());
      ASSERT_GT(s, 0.0);
      ASSERT_LE(s, std::ldexp(1.0, tree.depth_budget()));
    }
  }
}

TEST(TreeProperty, ScoreIsPure) {
  testing::Rng rng(13);
  const RankingTree tree = testing::random_ranking_tree(rng, 2, 5);
  const auto x = testing::random_point(rng, 2);
  const double first = tree.score(x);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(tree.score(x), first);
}

TEST(Tree, ClassifierTreeRule) {
  ClassifierTree::NodeMap inner{{{0, 0}, Stump{0, 0.0, 1}},
                                {{1, 0}, 1},
                                {{1, 1}, Stump{1, 0.0, 1}},
                                {{2, 2}, 1},
                                {{2, 3}, -1}};
  const ClassifierTree rule(2, 2, inner);
  EXPECT_EQ(rule.predict(std::vector<double>{1.0, -1.0}), 1);
  EXPECT_EQ(rule.predict(std::vector<double>{-1.0, 1.0}), 1);
  EXPECT_EQ(rule.predict(std::vector<double>{-1.0, -1.0}), -1);
  EXPECT_EQ(rule.max_feature(), 1u);
  RankingTree::NodeMap nodes{{{0, 0}, NodeRule(rule)},
                             {{1, 0}, EmptyLeaf{}},
                             {{1, 1}, EmptyLeaf{}}};
  const RankingTree tree(2, 1, nodes);
  EXPECT_EQ(tree.score(std::vector<double>{-1.0, 1.0}), 2.0);
  EXPECT_EQ(tree.score(std::vector<double>{-1.0, -1.0}), 1.0);
  EXPECT_THROW(RankingTree(1, 1, nodes), Error);  // rule reads feature 1
  EXPECT_THROW(ClassifierTree(1, 1, {{{0, 0}, 0}}), Error);  // label not +-1
}

TEST(Tree, RegressionTreePredicts) {
  RegressionTree::NodeMap nodes{{{0, 0}, Stump{0, 0.5, 1}},
                                {{1, 0}, 1.0},
                                {{1, 1}, 0.0}};
  const RegressionTree tree(1, 1, 1, nodes);
  EXPECT_EQ(tree.predict(std::vector<double>{0.7}), 1.0);
  EXPECT_EQ(tree.predict(std::vector<double>{0.2}), 0.0);
  EXPECT_THROW(RegressionTree(1, 0, 1, {{{0, 0}, INFINITY}}), Error);
}

}  // namespace
}  // namespace crank
