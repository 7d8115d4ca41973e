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

#include "crank/tree.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>

namespace crank {

std::string node_key(NodeId id) {
  return fmt::format("{},{}", id.depth, id.index);
}

NodeId parse_node_key(const std::string& key) {
  auto comma = key.find(',');
  if (comma == std::string::npos) {
    throw ParseError(fmt::format("node key '{}': expected \"j,k\"", key));
  }
  NodeId id;
  const char* begin = key.data();
  const char* mid = begin + comma;
  const char* end = begin + key.size();
  auto [p1, e1] = std::from_chars(begin, mid, id.depth);
  auto [p2, e2] = std::from_chars(mid + 1, end, id.index);
  if (e1 != std::errc() || p1 != mid || e2 != std::errc() || p2 != end ||
      id.depth < 0) {
    throw ParseError(fmt::format("node key '{}': expected \"j,k\"", key));
  }
  if (id.depth > kMaxDepthBudget || (id.index >> id.depth) != 0) {
    throw ParseError(
        fmt::format("node key '{}': need j <= {} and k < 2^j", key, kMaxDepthBudget));
  }
  return id;
}

double leaf_score(NodeId leaf, int depth_budget) {
  const double width = std::ldexp(1.0, leaf.depth);
  return std::ldexp(1.0, depth_budget) *
         (1.0 - static_cast<double>(leaf.index) / width);
}

namespace {

template <typename LeafValue>
void check_leaf_value(const LeafValue&, NodeId) {}

template <>
void check_leaf_value<double>(const double& value, NodeId id) {
  if (!std::isfinite(value)) {
    throw Error(fmt::format("tree: leaf {} has a non-finite value",
                            node_key(id)));
  }
}

template <>
void check_leaf_value<int>(const int& value, NodeId id) {
  if (value != 1 && value != -1) {
    throw Error(fmt::format("tree: leaf {} label must be +1 or -1",
                            node_key(id)));
  }
}

}  // namespace

template <typename Rule, typename LeafValue>
BinaryTree<Rule, LeafValue>::BinaryTree(std::size_t dim, int depth_budget,
                                const NodeMap& nodes)
    : dim_(dim), depth_budget_(depth_budget) {
  if (dim_ == 0) throw Error("tree: dimension must be at least 1");
  if (depth_budget_ < 0 || depth_budget_ > kMaxDepthBudget) {
    throw Error(fmt::format("tree: depth budget {} outside [0, {}]",
                            depth_budget_, kMaxDepthBudget));
  }
  if (!nodes.contains(NodeId{})) throw Error("tree: root node 0,0 missing");

  std::map<NodeId, std::int32_t> position;
  nodes_.reserve(nodes.size());
  for (const auto& [id, payload] : nodes) {
    if (id.depth < 0 || id.depth > depth_budget_) {
      throw Error(fmt::format("tree: node {} deeper than budget {}",
                              node_key(id), depth_budget_));
    }
    if (id.index >= (std::uint64_t{1} << id.depth)) {
      throw Error(fmt::format("tree: node {} index out of range",
                              node_key(id)));
    }
    if (!id.is_root()) {
      auto parent = nodes.find(id.parent());
      if (parent == nodes.end() ||
          !std::holds_alternative<Rule>(parent->second)) {
        throw Error(fmt::format("tree: node {} is not reachable from the root",
                                node_key(id)));
      }
    }
    Node node;
    node.id = id;
    if (const auto* rule = std::get_if<Rule>(&payload)) {
      if (rule->max_feature() >= dim_) {
        throw Error(fmt::format("tree: node {} uses feature {} but dim is {}",
                                node_key(id), rule->max_feature(), dim_));
      }
      try {
        rule->check();
      } catch (const Error& e) {
        throw Error(fmt::format("tree: node {}: {}", node_key(id), e.what()));
      }
      if (!nodes.contains(id.left()) || !nodes.contains(id.right())) {
        throw Error(fmt::format("tree: internal node {} lacks a child",
                                node_key(id)));
      }
      node.rule = *rule;
    } else {
      node.leaf = std::get<LeafValue>(payload);
      check_leaf_value(node.leaf, id);
    }
    position[id] = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(std::move(node));
  }
  for (auto& node : nodes_) {
    if (!node.is_leaf()) {
      node.left = position.at(node.id.left());
      node.right = position.at(node.id.right());
    }
  }
}

template <typename Rule, typename LeafValue>
typename BinaryTree<Rule, LeafValue>::NodeMap BinaryTree<Rule, LeafValue>::node_map() const {
  NodeMap map;
  for (const auto& node : nodes_) {
    if (node.rule) {
      map.emplace(node.id, *node.rule);
    } else {
      map.emplace(node.id, node.leaf);
    }
  }
  return map;
}

template <typename Rule, typename LeafValue>
std::size_t BinaryTree<Rule, LeafValue>::leaf_count() const {
  std::size_t count = 0;
  for (const auto& node : nodes_) count += node.is_leaf() ? 1 : 0;
  return count;
}

template <typename Rule, typename LeafValue>
int BinaryTree<Rule, LeafValue>::max_depth() const {
  int depth = 0;
  for (const auto& node : nodes_) depth = std::max(depth, node.id.depth);
  return depth;
}

template <typename Rule, typename LeafValue>
std::vector<NodeId> BinaryTree<Rule, LeafValue>::leaves() const {
  std::vector<NodeId> out;
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (node.is_leaf()) {
      out.push_back(node.id);
    } else {
      stack.push_back(node.right);
      stack.push_back(node.left);
    }
  }
  return out;
}

template <typename Rule, typename LeafValue>
void BinaryTree<Rule, LeafValue>::check_dim(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw Error(fmt::format("dimension mismatch: point has {} features, "
                            "model expects {}",
                            x.size(), dim_));
  }
}

template <typename Rule, typename LeafValue>
const typename BinaryTree<Rule, LeafValue>::Node& BinaryTree<Rule, LeafValue>::route(
    std::span<const double> x) const {
  check_dim(x);
  const Node* node = &nodes_[0];
  while (!node->is_leaf()) {
    node = &nodes_[node->rule->predict(x) == 1 ? node->left : node->right];
  }
  return *node;
}

template class BinaryTree<Stump, int>;
template class BinaryTree<NodeRule, EmptyLeaf>;
template class BinaryTree<Stump, double>;

void Stump::check() const {
  if (!std::isfinite(threshold)) throw Error("stump threshold is not finite");
  if (polarity != 1 && polarity != -1) {
    throw Error("stump polarity must be +1 or -1");
  }
}

ClassifierTree::ClassifierTree(std::size_t dim, int depth_budget,
                               const NodeMap& nodes)
    : BinaryTree<Stump, int>(dim, depth_budget, nodes) {}

std::size_t ClassifierTree::max_feature() const {
  std::size_t f = 0;
  for (const auto& node : nodes_) {
    if (node.rule) f = std::max(f, node.rule->feature);
  }
  return f;
}

NodeRule NodeRule::negated() const {
  if (const Stump* s = stump()) return Stump{s->feature, s->threshold, -s->polarity};
  const ClassifierTree& tree = *classifier_tree();
  auto nodes = tree.node_map();
  for (auto& [id, payload] : nodes) {
    if (int* label = std::get_if<int>(&payload)) *label = -*label;
  }
  return ClassifierTree(tree.dim(), tree.depth_budget(), nodes);
}

RankingTree::RankingTree(std::size_t dim, int depth_budget,
                         const NodeMap& nodes)
    : BinaryTree<NodeRule, EmptyLeaf>(dim, depth_budget, nodes) {
  if (depth_budget < 1) throw Error("ranking tree: depth budget must be >= 1");
}

RankingTree RankingTree::single_leaf(std::size_t dim, int depth_budget) {
  return RankingTree(dim, depth_budget, {{NodeId{}, EmptyLeaf{}}});
}

double RankingTree::score(std::span<const double> x) const {
  check_dim(x);
  double value = std::ldexp(1.0, depth_budget_);
  const Node* node = &nodes_[0];
  while (!node->is_leaf()) {
    if (node->rule->predict(x) == 1) {
      node = &nodes_[node->left];
    } else {
      value -= std::ldexp(1.0, depth_budget_ - (node->id.depth + 1));
      node = &nodes_[node->right];
    }
  }
  return value;
}

double RankingTree::closed_form_score(std::span<const double> x) const {
  return leaf_score(leaf_of(x), depth_budget_);
}

double RankingTree::normalized_score(std::span<const double> x) const {
  return std::ldexp(score(x), -depth_budget_);
}

RegressionTree::RegressionTree(std::size_t dim, int depth_budget,
                               std::size_t min_leaf, const NodeMap& nodes)
    : BinaryTree<Stump, double>(dim, depth_budget, nodes), min_leaf_(min_leaf) {
  if (min_leaf_ == 0) throw Error("regression tree: min_leaf must be >= 1");
}

double RegressionTree::predict(std::span<const double> x) const {
  return route(x).leaf;
}

}  // namespace crank
