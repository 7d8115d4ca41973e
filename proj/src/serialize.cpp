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

#include "crank/serialize.hpp"

#include <fmt/format.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "crank/error.hpp"

namespace crank {

namespace {

using nlohmann::json;

std::string real(double v) { return fmt::format("{:.16e}", v); }

std::string stump_fields(const Stump& stump) {
  return fmt::format("\"feature\": {}, \"threshold\": {}, \"polarity\": {}",
                     stump.feature, real(stump.threshold), stump.polarity);
}

// Node objects of `tree`, one per line at `indent`, joined with commas.
template <typename Rule, typename LeafValue, typename RuleFn, typename LeafFn>
std::string node_entries(const BinaryTree<Rule, LeafValue>& tree,
                         const std::string& indent, RuleFn rule_fields,
                         LeafFn leaf_fields) {
  std::string out;
  const auto& nodes = tree.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    out += fmt::format("{}\"{}\": {{", indent, node_key(node.id));
    if (node.rule) {
      out += "\"kind\": \"internal\", " + rule_fields(*node.rule) + "}";
    } else {
      out += "\"kind\": \"leaf\"" + leaf_fields(node.leaf) + "}";
    }
    out += i + 1 < nodes.size() ? ",\n" : "\n";
  }
  return out;
}

std::string classifier_tree_fields(const ClassifierTree& tree) {
  std::string out = fmt::format("\"rule\": {{\"depth_budget\": {}, \"nodes\": {{\n",
                                tree.depth_budget());
  out += node_entries(
      tree, "      ", [](const Stump& s) { return stump_fields(s); },
      [](int label) { return fmt::format(", \"label\": {}", label); });
  out += "    }}";
  return out;
}

std::string rule_fields(const NodeRule& rule) {
  if (const Stump* stump = rule.stump()) return stump_fields(*stump);
  return classifier_tree_fields(*rule.classifier_tree());
}

std::string write_ranking(const RankingTree& tree) {
  std::string out = "{\n";
  out += fmt::format("  \"format_version\": {},\n", kModelFormatVersion);
  out += "  \"model\": \"ranking_tree\",\n";
  out += fmt::format("  \"depth_budget\": {},\n", tree.depth_budget());
  out += fmt::format("  \"dim\": {},\n", tree.dim());
  out += "  \"nodes\": {\n";
  out += node_entries(tree, "    ", rule_fields,
                      [](const EmptyLeaf&) { return std::string(); });
  out += "  }\n}\n";
  return out;
}

std::string write_regression(const RegressionTree& tree) {
  std::string out = "{\n";
  out += fmt::format("  \"format_version\": {},\n", kModelFormatVersion);
  out += "  \"model\": \"regression_tree\",\n";
  out += fmt::format("  \"depth_budget\": {},\n", tree.depth_budget());
  out += fmt::format("  \"dim\": {},\n", tree.dim());
  out += fmt::format("  \"min_leaf\": {},\n", tree.min_leaf());
  out += "  \"nodes\": {\n";
  out += node_entries(
      tree, "    ", [](const Stump& s) { return stump_fields(s); },
      [](double v) { return fmt::format(", \"value\": {}", real(v)); });
  out += "  }\n}\n";
  return out;
}

std::string write_table(const TableScorer& table) {
  std::string out = "{\n";
  out += fmt::format("  \"format_version\": {},\n", kModelFormatVersion);
  out += "  \"model\": \"table\",\n";
  out += fmt::format("  \"dim\": {},\n", table.dim());
  out += fmt::format("  \"fallback\": {},\n", real(table.fallback()));
  out += "  \"entries\": [";
  bool first = true;
  for (const auto& [x, value] : table.table()) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"x\": [";
    for (std::size_t f = 0; f < x.size(); ++f) {
      if (f) out += ", ";
      out += real(x[f]);
    }
    out += fmt::format("], \"score\": {}}}", real(value));
  }
  out += first ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

const json& field(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw ParseError(fmt::format("model: missing field '{}{}'", where, name));
  }
  return *it;
}

std::int64_t int_field(const json& obj, const char* name,
                       const std::string& where = "") {
  const json& v = field(obj, name, where);
  if (!v.is_number_integer()) {
    throw ParseError(
        fmt::format("model: field '{}{}' must be an integer", where, name));
  }
  return v.get<std::int64_t>();
}

double real_field(const json& obj, const char* name,
                  const std::string& where = "") {
  const json& v = field(obj, name, where);
  if (!v.is_number()) {
    throw ParseError(
        fmt::format("model: field '{}{}' must be a number", where, name));
  }
  return v.get<double>();
}

std::string string_field(const json& obj, const char* name,
                         const std::string& where = "") {
  const json& v = field(obj, name, where);
  if (!v.is_string()) {
    throw ParseError(
        fmt::format("model: field '{}{}' must be a string", where, name));
  }
  return v.get<std::string>();
}

Stump read_stump(const json& node, const std::string& where) {
  Stump stump;
  const std::int64_t feature = int_field(node, "feature", where);
  if (feature < 0) {
    throw ParseError(fmt::format("model: field '{}feature' is negative", where));
  }
  stump.feature = static_cast<std::size_t>(feature);
  stump.threshold = real_field(node, "threshold", where);
  const std::int64_t polarity = int_field(node, "polarity", where);
  if (polarity != 1 && polarity != -1) {
    throw ParseError(
        fmt::format("model: field '{}polarity' must be 1 or -1", where));
  }
  stump.polarity = static_cast<int>(polarity);
  return stump;
}

// Reads a "nodes" object; `prefix` locates it in error messages.
template <typename Map, typename RuleFn, typename LeafFn>
Map read_node_map(const json& nodes, const std::string& prefix,
                  RuleFn read_rule, LeafFn read_leaf) {
  if (!nodes.is_object()) {
    throw ParseError(fmt::format("model: field '{}' must be an object", prefix));
  }
  Map map;
  for (const auto& [key, node] : nodes.items()) {
    const std::string where = fmt::format("{}.{}.", prefix, key);
    NodeId id;
    try {
      id = parse_node_key(key);
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("model: field '{}': {}", prefix, e.what()));
    }
    if (!node.is_object()) {
      throw ParseError(fmt::format("model: field '{}.{}' must be an object",
                                   prefix, key));
    }
    const std::string kind = string_field(node, "kind", where);
    if (kind == "internal") {
      map.emplace(id, read_rule(node, where));
    } else if (kind == "leaf") {
      map.emplace(id, read_leaf(node, where));
    } else {
      throw ParseError(fmt::format(
          "model: field '{}kind' must be \"internal\" or \"leaf\"", where));
    }
  }
  return map;
}

ClassifierTree read_classifier_tree(const json& rule, const std::string& where,
                                    std::size_t dim) {
  const std::string prefix = where + "rule.";
  if (!rule.is_object()) {
    throw ParseError(fmt::format("model: field '{}rule' must be an object", where));
  }
  const std::int64_t depth = int_field(rule, "depth_budget", prefix);
  if (depth < 0 || depth > kMaxDepthBudget) {
    throw ParseError(
        fmt::format("model: field '{}depth_budget' out of range", prefix));
  }
  auto map = read_node_map<ClassifierTree::NodeMap>(
      field(rule, "nodes", prefix), prefix + "nodes", read_stump,
      [](const json& node, const std::string& at) {
        const std::int64_t label = int_field(node, "label", at);
        if (label != 1 && label != -1) {
          throw ParseError(fmt::format("model: field '{}label' must be 1 or -1", at));
        }
        return static_cast<int>(label);
      });
  try {
    return ClassifierTree(dim, static_cast<int>(depth), map);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(fmt::format("model: field '{}nodes': {}", prefix, e.what()));
  }
}

// Structural errors from the tree constructor are reported against 'nodes'.
template <typename Fn>
auto build_checked(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(fmt::format("model: field 'nodes': {}", e.what()));
  }
}

int depth_budget_field(const json& doc) {
  const std::int64_t depth = int_field(doc, "depth_budget");
  if (depth < 0 || depth > kMaxDepthBudget) {
    throw ParseError(fmt::format("model: field 'depth_budget' outside [0, {}]",
                                 kMaxDepthBudget));
  }
  return static_cast<int>(depth);
}

std::size_t dim_field(const json& doc) {
  const std::int64_t dim = int_field(doc, "dim");
  if (dim < 1) throw ParseError("model: field 'dim' must be >= 1");
  return static_cast<std::size_t>(dim);
}

}  // namespace

std::string serialize(const ScoringModel& model) {
  if (const auto* t = std::get_if<RankingTree>(&model)) return write_ranking(*t);
  if (const auto* t = std::get_if<RegressionTree>(&model)) {
    return write_regression(*t);
  }
  return write_table(std::get<TableScorer>(model));
}

ScoringModel deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("model: malformed document: {}", e.what()));
  }
  if (!doc.is_object()) throw ParseError("model: document must be an object");
  const std::int64_t version = int_field(doc, "format_version");
  if (version != kModelFormatVersion) {
    throw ParseError(fmt::format("model: field 'format_version' is {}, "
                                 "expected {}",
                                 version, kModelFormatVersion));
  }
  const std::string kind = string_field(doc, "model");
  const std::size_t dim = dim_field(doc);
  if (kind == "ranking_tree") {
    const int depth = depth_budget_field(doc);
    if (depth < 1) throw ParseError("model: field 'depth_budget' must be >= 1");
    auto nodes = read_node_map<RankingTree::NodeMap>(
        field(doc, "nodes", ""), "nodes",
        [dim](const json& node, const std::string& where) -> NodeRule {
          if (node.contains("rule")) {
            return read_classifier_tree(node["rule"], where, dim);
          }
          return read_stump(node, where);
        },
        [](const json&, const std::string&) { return EmptyLeaf{}; });
    return build_checked([&] { return RankingTree(dim, depth, nodes); });
  }
  if (kind == "regression_tree") {
    const int depth = depth_budget_field(doc);
    const std::int64_t min_leaf = int_field(doc, "min_leaf");
    if (min_leaf < 1) throw ParseError("model: field 'min_leaf' must be >= 1");
    auto nodes = read_node_map<RegressionTree::NodeMap>(
        field(doc, "nodes", ""), "nodes", read_stump,
        [](const json& node, const std::string& where) {
          return real_field(node, "value", where);
        });
    return build_checked([&] {
      return RegressionTree(dim, depth, static_cast<std::size_t>(min_leaf),
                            nodes);
    });
  }
  if (kind == "table") {
    const double fallback = real_field(doc, "fallback");
    const json& entries = field(doc, "entries", "");
    if (!entries.is_array()) {
      throw ParseError("model: field 'entries' must be an array");
    }
    TableScorer::Table table;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string where = fmt::format("entries[{}].", i);
      const json& x = field(entries[i], "x", where);
      if (!x.is_array() || x.size() != dim) {
        throw ParseError(fmt::format(
            "model: field '{}x' must be an array of {} numbers", where, dim));
      }
      std::vector<double> point;
      for (const auto& v : x) {
        if (!v.is_number()) {
          throw ParseError(fmt::format("model: field '{}x' must hold numbers", where));
        }
        point.push_back(v.get<double>());
      }
      table.emplace(std::move(point), real_field(entries[i], "score", where));
    }
    try {
      return TableScorer(dim, std::move(table), fallback);
    } catch (const Error& e) {
      throw ParseError(fmt::format("model: field 'entries': {}", e.what()));
    }
  }
  throw ParseError(fmt::format(
      "model: field 'model' has unknown kind '{}'", kind));
}

void save_model(const std::string& path, const ScoringModel& model) {
  write_file_atomic(path, serialize(model));
}

ScoringModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

}  // namespace crank
