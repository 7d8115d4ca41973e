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

#ifndef CRANK_TREE_HPP_
#define CRANK_TREE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "crank/error.hpp"

namespace crank {

// Heap position of a node: depth j and index k in [0, 2^j). Children of
// (j, k) are (j+1, 2k) on the left and (j+1, 2k+1) on the right.
struct NodeId {
  int depth = 0;
  std::uint64_t index = 0;

  NodeId left() const { return {depth + 1, 2 * index}; }
  NodeId right() const { return {depth + 1, 2 * index + 1}; }
  NodeId parent() const { return {depth - 1, index / 2}; }
  bool is_root() const { return depth == 0; }
  // True if `other` lies strictly below this node.
  bool is_ancestor_of(NodeId other) const {
    return other.depth > depth && (other.index >> (other.depth - depth)) == index;
  }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

// "j,k"
std::string node_key(NodeId id);
NodeId parse_node_key(const std::string& key);

// Axis-aligned rule: predicts `polarity` when x[feature] > threshold and
// -polarity otherwise.
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;

  int predict(std::span<const double> x) const {
    return x[feature] > threshold ? polarity : -polarity;
  }
  std::size_t max_feature() const { return feature; }
  // Throws unless the threshold is finite and polarity is +-1.
  void check() const;

  friend bool operator==(const Stump&, const Stump&) = default;
};

// Largest depth budget for which every leaf score is an exact double.
inline constexpr int kMaxDepthBudget = 52;

// Closed-form score of leaf (j, k) in a tree of depth budget J:
// 2^J * (1 - k / 2^j).
double leaf_score(NodeId leaf, int depth_budget);

struct EmptyLeaf {
  friend bool operator==(const EmptyLeaf&, const EmptyLeaf&) = default;
};

// Binary tree over heap-indexed nodes. Internal nodes hold a Rule (anything
// with predict(x) -> +-1, max_feature() and check()); a point the rule
// predicts +1 goes to the left child. Leaves hold a LeafValue. Immutable once
// built; the constructor checks every structural invariant (root present,
// both children of each internal node present, no orphan nodes, depth within
// the budget, rule features < dim).
template <typename Rule, typename LeafValue>
class BinaryTree {
 public:
  using Payload = std::variant<Rule, LeafValue>;
  using NodeMap = std::map<NodeId, Payload>;

  struct Node {
    NodeId id;
    std::optional<Rule> rule;
    LeafValue leaf{};
    std::int32_t left = -1;
    std::int32_t right = -1;

    bool is_leaf() const { return !rule.has_value(); }

    friend bool operator==(const Node&, const Node&) = default;
  };

  BinaryTree(std::size_t dim, int depth_budget, const NodeMap& nodes);

  std::size_t dim() const { return dim_; }
  int depth_budget() const { return depth_budget_; }
  // Nodes in breadth-first order; nodes()[0] is the root.
  const std::vector<Node>& nodes() const { return nodes_; }
  NodeMap node_map() const;

  std::size_t leaf_count() const;
  int max_depth() const;
  // Terminal leaves in left-to-right order.
  std::vector<NodeId> leaves() const;

  const Node& route(std::span<const double> x) const;
  NodeId leaf_of(std::span<const double> x) const { return route(x).id; }

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

 protected:
  void check_dim(std::span<const double> x) const;

  std::size_t dim_;
  int depth_budget_;
  std::vector<Node> nodes_;
};

// Axis-aligned classification tree with +-1 leaves. Used as a node rule of a
// ranking tree, so that a cell's split can be a union of boxes.
class ClassifierTree : public BinaryTree<Stump, int> {
 public:
  ClassifierTree(std::size_t dim, int depth_budget, const NodeMap& nodes);

  int predict(std::span<const double> x) const { return route(x).leaf; }
  std::size_t max_feature() const;
  void check() const {}

  friend bool operator==(const ClassifierTree&, const ClassifierTree&) =
      default;
};

// Decision rule of a ranking-tree node: a stump or a classification tree.
class NodeRule {
 public:
  NodeRule(Stump stump) : rule_(stump) {}  // NOLINT(google-explicit-constructor)
  NodeRule(ClassifierTree tree) : rule_(std::move(tree)) {}  // NOLINT(google-explicit-constructor)

  int predict(std::span<const double> x) const {
    return std::visit([&](const auto& r) { return r.predict(x); }, rule_);
  }
  std::size_t max_feature() const {
    return std::visit([](const auto& r) { return r.max_feature(); }, rule_);
  }
  void check() const {
    std::visit([](const auto& r) { r.check(); }, rule_);
  }

  // Same split with the two sides exchanged.
  NodeRule negated() const;

  const Stump* stump() const { return std::get_if<Stump>(&rule_); }
  const ClassifierTree* classifier_tree() const {
    return std::get_if<ClassifierTree>(&rule_);
  }

  friend bool operator==(const NodeRule&, const NodeRule&) = default;

 private:
  std::variant<Stump, ClassifierTree> rule_;
};

// Oriented ranking tree: leaf (j, k) scores 2^J (1 - k/2^j), so leaves read
// left to right carry strictly decreasing scores.
class RankingTree : public BinaryTree<NodeRule, EmptyLeaf> {
 public:
  RankingTree(std::size_t dim, int depth_budget, const NodeMap& nodes);

  // A tree with only the root leaf.
  static RankingTree single_leaf(std::size_t dim, int depth_budget);

  // Top-down evaluation: start at 2^J and subtract 2^(J-(j+1)) for every
  // move from (j, k) to its right child.
  double score(std::span<const double> x) const;
  // Same value computed from the reached leaf's (j, k).
  double closed_form_score(std::span<const double> x) const;
  // score / 2^J, in (0, 1].
  double normalized_score(std::span<const double> x) const;

  friend bool operator==(const RankingTree&, const RankingTree&) = default;
};

// CART-style tree whose leaves hold the mean training label of their cell.
class RegressionTree : public BinaryTree<Stump, double> {
 public:
  RegressionTree(std::size_t dim, int depth_budget, std::size_t min_leaf,
                 const NodeMap& nodes);

  std::size_t min_leaf() const { return min_leaf_; }
  double predict(std::span<const double> x) const;

  friend bool operator==(const RegressionTree&, const RegressionTree&) =
      default;

 private:
  std::size_t min_leaf_;
};

extern template class BinaryTree<Stump, int>;
extern template class BinaryTree<NodeRule, EmptyLeaf>;
extern template class BinaryTree<Stump, double>;

}  // namespace crank

#endif  // CRANK_TREE_HPP_
