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

#include "crank/model.hpp"

#include <fmt/format.h>

#include <cmath>

#include "crank/error.hpp"

namespace crank {

TableScorer::TableScorer(std::size_t dim, Table table, double fallback)
    : dim_(dim), table_(std::move(table)), fallback_(fallback) {
  if (dim_ == 0) throw Error("table scorer: dimension must be at least 1");
  if (!std::isfinite(fallback_)) {
    throw Error("table scorer: fallback must be finite");
  }
  for (const auto& [x, value] : table_) {
    if (x.size() != dim_) {
      throw Error(fmt::format("table scorer: entry has {} features, expected {}",
                              x.size(), dim_));
    }
    if (!std::isfinite(value)) {
      throw Error("table scorer: entry has a non-finite score");
    }
  }
}

TableScorer TableScorer::from_function(
    const Dataset& data,
    const std::function<double(std::span<const double>)>& fn) {
  Table table;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto x = data.row(i);
    table.try_emplace(std::vector<double>(x.begin(), x.end()), fn(x));
  }
  return TableScorer(data.dim(), std::move(table));
}

TableScorer TableScorer::from_labels(const Dataset& data) {
  Table table;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto x = data.row(i);
    table.try_emplace(std::vector<double>(x.begin(), x.end()), data.label(i));
  }
  return TableScorer(data.dim(), std::move(table));
}

double TableScorer::score(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw Error(fmt::format("dimension mismatch: point has {} features, "
                            "model expects {}",
                            x.size(), dim_));
  }
  auto it = table_.find(std::vector<double>(x.begin(), x.end()));
  return it == table_.end() ? fallback_ : it->second;
}

std::size_t model_dim(const ScoringModel& model) {
  return std::visit([](const auto& m) { return m.dim(); }, model);
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void check_data_dim(const ScoringModel& model, const Dataset& data) {
  if (model_dim(model) != data.dim()) {
    throw Error(fmt::format("dimension mismatch: data has {} features, "
                            "model expects {}",
                            data.dim(), model_dim(model)));
  }
}

}  // namespace

double score(const ScoringModel& model, std::span<const double> x) {
  return std::visit(
      Overloaded{[&](const RankingTree& t) { return t.score(x); },
                 [&](const RegressionTree& t) { return t.predict(x); },
                 [&](const TableScorer& t) { return t.score(x); }},
      model);
}

double predict(const ScoringModel& model, std::span<const double> x) {
  return std::visit(
      Overloaded{[&](const RankingTree& t) { return t.normalized_score(x); },
                 [&](const RegressionTree& t) { return t.predict(x); },
                 [&](const TableScorer& t) { return t.score(x); }},
      model);
}

std::vector<double> score_all(const ScoringModel& model, const Dataset& data) {
  check_data_dim(model, data);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = score(model, data.row(i));
  return out;
}

std::vector<double> predict_all(const ScoringModel& model,
                                const Dataset& data) {
  check_data_dim(model, data);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[i] = predict(model, data.row(i));
  }
  return out;
}

}  // namespace crank
