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

#include "crank/experiment.hpp"

#include <fmt/format.h>

#include <exception>
#include <ostream>

#include "crank/baselines.hpp"
#include "crank/crank.hpp"
#include "crank/error.hpp"
#include "crank/prune.hpp"
#include "crank/synthgen.hpp"

namespace crank {

namespace {

constexpr Method kMethods[] = {Method::kCrank, Method::kKendall, Method::kCart};

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "crank") return Method::kCrank;
  if (name == "kendall") return Method::kKendall;
  if (name == "cart") return Method::kCart;
  throw Error(fmt::format("unknown model kind '{}'", name));
}

std::string method_name(Method method) {
  switch (method) {
    case Method::kCrank:
      return "crank";
    case Method::kKendall:
      return "kendall";
    case Method::kCart:
      return "cart";
  }
  return "unknown";
}

ClassifierKind parse_classifier_kind(const std::string& name) {
  if (name == "tree") return ClassifierKind::kTree;
  if (name == "stump") return ClassifierKind::kStump;
  throw Error(fmt::format("unknown classifier '{}'", name));
}

std::string classifier_kind_name(ClassifierKind kind) {
  return kind == ClassifierKind::kTree ? "tree" : "stump";
}

ScoringModel fit_model(const Dataset& train, const FitOptions& options) {
  switch (options.method) {
    case Method::kCrank: {
      CrankConfig cfg;
      cfg.depth = options.depth;
      cfg.min_leaf = options.min_leaf;
      cfg.seed = options.seed;
      cfg.classifier = options.classifier == ClassifierKind::kStump
                           ? stump_classifier()
                           : tree_classifier(options.classifier_depth);
      RankingTree tree = fit_crank(train, cfg);
      if (options.prune) tree = prune(tree, train, cfg, options.folds);
      return tree;
    }
    case Method::kKendall: {
      RankingTree tree =
          fit_kendall_tree(train, options.depth, options.min_leaf);
      if (options.prune) {
        PruneOptions prune_options;
        prune_options.folds = options.folds;
        prune_options.seed = options.seed;
        prune_options.criterion = PruneCriterion::kKendall;
        const int depth = options.depth;
        const std::size_t min_leaf = options.min_leaf;
        tree = prune(
            tree, train,
            [depth, min_leaf](const Dataset& d) {
              return fit_kendall_tree(d, depth, min_leaf);
            },
            prune_options);
      }
      return tree;
    }
    case Method::kCart:
      if (options.prune) throw Error("pruning is not available for cart");
      return fit_cart(train, options.depth, options.min_leaf);
  }
  throw Error("fit_model: unknown method");
}

CompareResult run_comparison(const CompareConfig& cfg) {
  if (cfg.seeds.empty()) throw Error("compare: at least one seed is required");
  const std::size_t per_seed = std::size(kMethods);
  CompareResult result;
  result.per_seed.resize(cfg.seeds.size() * per_seed);
  std::vector<std::exception_ptr> failures(cfg.seeds.size());

  const auto count = static_cast<std::int64_t>(cfg.seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < count; ++s) {
    try {
      const std::uint64_t seed = cfg.seeds[s];
      GenSpec train_spec{GenKind::kPolynomialExperiment, cfg.n_train, 2 * seed};
      GenSpec test_spec{GenKind::kPolynomialExperiment, cfg.n_test,
                        2 * seed + 1};
      const Dataset train = generate(train_spec);
      const Dataset test = generate(test_spec);
      for (std::size_t m = 0; m < per_seed; ++m) {
        FitOptions options;
        options.method = kMethods[m];
        options.depth = cfg.depth;
        options.min_leaf = cfg.min_leaf;
        options.prune = cfg.prune && kMethods[m] != Method::kCart;
        options.folds = cfg.folds;
        options.seed = seed;
        options.classifier = cfg.classifier;
        options.classifier_depth = cfg.classifier_depth;
        const ScoringModel model = fit_model(train, options);
        result.per_seed[s * per_seed + m] = {seed, kMethods[m],
                                             evaluate(model, test)};
      }
    } catch (...) {
      failures[s] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  for (std::size_t m = 0; m < per_seed; ++m) {
    CompareRow mean{0, kMethods[m], {}};
    for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
      const auto& r = result.per_seed[s * per_seed + m].report;
      mean.report.iauc += r.iauc;
      mean.report.kendall += r.kendall;
      mean.report.mse += r.mse;
    }
    const double k = static_cast<double>(cfg.seeds.size());
    mean.report.iauc /= k;
    mean.report.kendall /= k;
    mean.report.mse /= k;
    result.mean.push_back(mean);
  }
  return result;
}

void write_comparison_csv(std::ostream& out, const CompareResult& result) {
  out << "seed,method,iauc,kendall,mse\n";
  auto row = [&](const std::string& seed, const CompareRow& r) {
    out << seed << ',' << method_name(r.method) << ','
        << format_real(r.report.iauc) << ',' << format_real(r.report.kendall)
        << ',' << format_real(r.report.mse) << '\n';
  };
  for (const auto& r : result.per_seed) row(std::to_string(r.seed), r);
  for (const auto& r : result.mean) row("mean", r);
}

}  // namespace crank
