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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "crank/crank.hpp"
#include "crank/error.hpp"
#include "crank/baselines.hpp"
#include "crank/serialize.hpp"
#include "crank/synthgen.hpp"
#include "test_util.hpp"

namespace crank {
namespace {

using ::testing::HasSubstr;

void expect_same_scores(const ScoringModel& a, const ScoringModel& b,
                        std::size_t dim, testing::Rng& rng) {
  for (int p = 0; p < 50; ++p) {
    const auto x = testing::random_point(rng, dim);
    ASSERT_EQ(score(a, x), score(b, x));
    ASSERT_EQ(predict(a, x), predict(b, x));
  }
}

std::string replace_once(std::string text, const std::string& from,
                         const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

std::string parse_error_of(const std::string& text) {
  try {
    deserialize(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return {};
}

TEST(Serialize, SingleLeafRoundTrip) {
  const ScoringModel model = RankingTree::single_leaf(2, 3);
  const ScoringModel back = deserialize(serialize(model));
  EXPECT_EQ(std::get<RankingTree>(back), std::get<RankingTree>(model));
  EXPECT_EQ(score(back, std::vector<double>{5.0, -1.0}), 8.0);
}

TEST(Serialize, CrankTreeRoundTripOnTrainingPoints) {
  const Dataset data = generate({GenKind::kPolynomialExperiment, 20, 3});
  for (const auto& classifier : {stump_classifier(), tree_classifier()}) {
    CrankConfig cfg;
    cfg.depth = 2;
    cfg.classifier = classifier;
    const ScoringModel model = fit_crank(data, cfg);
    const ScoringModel back = deserialize(serialize(model));
    for (std::size_t i = 0; i < data.size(); ++i) {
      EXPECT_EQ(score(back, data.row(i)), score(model, data.row(i)));
    }
    EXPECT_EQ(serialize(back), serialize(model));
  }
}

TEST(Serialize, HeaderFields) {
  const std::string text = serialize(RankingTree::single_leaf(1, 2));
  EXPECT_THAT(text, HasSubstr("\"format_version\": 1"));
  EXPECT_THAT(text, HasSubstr("\"depth_budget\": 2"));
  EXPECT_THAT(text, HasSubstr("\"dim\": 1"));
  EXPECT_THAT(text, HasSubstr("\"0,0\": {\"kind\": \"leaf\"}"));
}

TEST(Serialize, StumpFieldsAndRealPrecision) {
  const double threshold = std::nextafter(0.1, 1.0);
  RankingTree::NodeMap nodes{{{0, 0}, NodeRule(Stump{0, threshold, -1})},
                             {{1, 0}, EmptyLeaf{}},
                             {{1, 1}, EmptyLeaf{}}};
  const ScoringModel model = RankingTree(1, 1, nodes);
  const std::string text = serialize(model);
  EXPECT_THAT(text, HasSubstr("\"kind\": \"internal\", \"feature\": 0, "
                              "\"threshold\": 1.0000000000000002e-01, "
                              "\"polarity\": -1"));
  const auto& back = std::get<RankingTree>(deserialize(text));
  EXPECT_EQ(back.nodes()[0].rule->stump()->threshold, threshold);
}

TEST(Serialize, RegressionAndTableRoundTrip) {
  testing::Rng rng(5);
  const Dataset data = generate({GenKind::kPolynomialExperiment, 64, 1});
  const ScoringModel cart = fit_cart(data, 3, 2);
  const ScoringModel cart_back = deserialize(serialize(cart));
  EXPECT_EQ(std::get<RegressionTree>(cart_back), std::get<RegressionTree>(cart));
  EXPECT_THAT(serialize(cart), HasSubstr("\"value\": "));
  expect_same_scores(cart, cart_back, 1, rng);

  const ScoringModel table = TableScorer::from_labels(data);
  const ScoringModel table_back = deserialize(serialize(table));
  EXPECT_EQ(std::get<TableScorer>(table_back), std::get<TableScorer>(table));
}

TEST(Serialize, RandomModelsRoundTrip) {
  testing::Rng rng(6);
  for (int t = 0; t < 60; ++t) {
    const ScoringModel models[] = {
        testing::random_ranking_tree(rng, 3, 1 + t % 5),
        testing::random_regression_tree(rng, 3, t % 5),
        testing::random_table(rng, 3, 5)};
    for (const auto& m : models) {
      expect_same_scores(m, deserialize(serialize(m)), 3, rng);
    }
  }
}

TEST(Serialize, TruncatedInputIsParseError) {
  const Dataset data = generate({GenKind::kPolynomialExperiment, 40, 1});
  const std::string text = serialize(fit_crank(data, CrankConfig{}));
  for (std::size_t len : {std::size_t{0}, std::size_t{1}, text.size() / 3,
                          text.size() / 2, text.size() - 3}) {
    EXPECT_THROW(deserialize(text.substr(0, len)), ParseError) << len;
  }
}

TEST(Serialize, ErrorsNameTheField) {
  RankingTree::NodeMap nodes{{{0, 0}, NodeRule(Stump{0, 0.25, 1})},
                             {{1, 0}, EmptyLeaf{}},
                             {{1, 1}, EmptyLeaf{}}};
  const std::string good = serialize(ScoringModel(RankingTree(1, 1, nodes)));

  EXPECT_THAT(parse_error_of(replace_once(good, "\"threshold\"", "\"thr\"")),
              HasSubstr("'nodes.0,0.threshold'"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"polarity\": 1", "\"polarity\": 2")),
              HasSubstr("'nodes.0,0.polarity'"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"feature\": 0", "\"feature\": 1.5")),
              HasSubstr("'nodes.0,0.feature'"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"kind\": \"leaf\"", "\"kind\": \"twig\"")),
              HasSubstr("kind"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"format_version\": 1", "\"format_version\": 9")),
              HasSubstr("'format_version'"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"dim\": 1", "\"dim\": 0")),
              HasSubstr("'dim'"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"depth_budget\": 1", "\"depth\": 1")),
              HasSubstr("'depth_budget'"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"ranking_tree\"", "\"forest\"")),
              HasSubstr("'model'"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"1,1\"", "\"1,2\"")),
              HasSubstr("nodes"));
  // Missing child: structural error reported against 'nodes'.
  EXPECT_THAT(parse_error_of(replace_once(good, ",\n    \"1,1\": {\"kind\": \"leaf\"}", "")),
              HasSubstr("'nodes'"));
  EXPECT_THAT(parse_error_of("[1, 2]"), HasSubstr("object"));
}

TEST(Serialize, NestedRuleErrorsNameTheField) {
  testing::Rng rng(8);
  ClassifierTree::NodeMap inner{{{0, 0}, Stump{0, 0.0, 1}}, {{1, 0}, 1}, {{1, 1}, -1}};
  RankingTree::NodeMap nodes{{{0, 0}, NodeRule(ClassifierTree(1, 1, inner))},
                             {{1, 0}, EmptyLeaf{}},
                             {{1, 1}, EmptyLeaf{}}};
  const std::string good = serialize(ScoringModel(RankingTree(1, 1, nodes)));
  EXPECT_THAT(good, HasSubstr("\"label\": -1"));
  EXPECT_THAT(parse_error_of(replace_once(good, "\"label\": -1", "\"label\": 0")),
              HasSubstr("'nodes.0,0.rule.nodes.1,1.label'"));
}

TEST(Serialize, SaveAndLoadFile) {
  const auto dir = std::filesystem::temp_directory_path() / "crank_serialize_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "model.json").string();
  const ScoringModel model = RankingTree::single_leaf(1, 4);
  save_model(path, model);
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_EQ(std::get<RankingTree>(load_model(path)), std::get<RankingTree>(model));
  EXPECT_THROW(load_model((dir / "missing.json").string()), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace crank
