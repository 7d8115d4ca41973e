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

// Command-line front end: generate, fit, evaluate, curve, compare.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crank/dataset.hpp"
#include "crank/error.hpp"
#include "crank/experiment.hpp"
#include "crank/metrics.hpp"
#include "crank/model.hpp"
#include "crank/serialize.hpp"
#include "crank/synthgen.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown for invalid flag combinations detected after parsing.
struct UsageError : crank::Error {
  using crank::Error::Error;
};

void emit(const std::string& path, const std::string& contents) {
  if (path.empty()) {
    std::cout << contents;
    std::cout.flush();
  } else {
    crank::write_file_atomic(path, contents);
  }
}

struct GenerateArgs {
  std::string kind = "polynomial_experiment";
  std::size_t n = 100;
  std::uint64_t seed = 0;
  double noise_sd = 0.0;
  std::size_t dim = 1;
  std::string out;
};

struct FitArgs {
  std::string in;
  std::string out;
  std::string model = "crank";
  int depth = 3;
  std::size_t min_leaf = 1;
  bool prune = false;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::string classifier = "tree";
  int classifier_depth = crank::kDefaultClassifierDepth;
};

struct EvalArgs {
  std::string model_file;
  std::string in;
  std::string out;
  std::string scores_out;
  std::size_t alphas = 101;
};

struct CompareArgs {
  std::size_t n_train = 100;
  std::size_t n_test = 2000;
  int depth = 3;
  std::size_t min_leaf = 1;
  bool prune = false;
  std::size_t folds = 5;
  std::size_t seeds = 10;
  std::uint64_t seed = 0;
  std::string classifier = "tree";
  int classifier_depth = crank::kDefaultClassifierDepth;
  std::string out;
};

void check_depth(int depth, std::size_t n, bool allow_zero) {
  if (depth < (allow_zero ? 0 : 1)) {
    throw UsageError(fmt::format("--depth must be >= {}", allow_zero ? 0 : 1));
  }
  if (depth >= 63 || (std::uint64_t{1} << depth) > n) {
    throw UsageError(
        fmt::format("--depth {} requires 2^depth <= n, but n is {}", depth, n));
  }
}

int run_generate(const GenerateArgs& a) {
  if (a.n < 1) throw UsageError("--n must be >= 1");
  if (a.dim < 1) throw UsageError("--dim must be >= 1");
  if (a.noise_sd < 0.0) throw UsageError("--noise-sd must be >= 0");
  crank::GenSpec spec;
  try {
    spec.kind = crank::parse_gen_kind(a.kind);
  } catch (const crank::Error& e) {
    throw UsageError(e.what());
  }
  spec.n = a.n;
  spec.seed = a.seed;
  spec.noise_sd = a.noise_sd;
  spec.dim = a.dim;
  std::ostringstream csv;
  crank::write_csv(csv, crank::generate(spec));
  emit(a.out, csv.str());
  return 0;
}

int run_fit(const FitArgs& a) {
  crank::FitOptions options;
  try {
    options.method = crank::parse_method(a.model);
    options.classifier = crank::parse_classifier_kind(a.classifier);
  } catch (const crank::Error& e) {
    throw UsageError(e.what());
  }
  if (a.min_leaf < 1) throw UsageError("--min-leaf must be >= 1");
  if (a.folds < 2) throw UsageError("--folds must be >= 2");
  if (a.classifier_depth < 1) throw UsageError("--classifier-depth must be >= 1");
  if (a.prune && options.method == crank::Method::kCart) {
    throw UsageError("--prune is not available for --model cart");
  }
  const crank::Dataset train = crank::read_csv_file(a.in);
  check_depth(a.depth, train.size(), options.method == crank::Method::kCart);
  if (a.prune && a.folds > train.size()) {
    throw UsageError(fmt::format("--folds {} exceeds n = {}", a.folds,
                                 train.size()));
  }
  options.depth = a.depth;
  options.min_leaf = a.min_leaf;
  options.prune = a.prune;
  options.folds = a.folds;
  options.seed = a.seed;
  options.classifier_depth = a.classifier_depth;
  emit(a.out, crank::serialize(crank::fit_model(train, options)));
  return 0;
}

std::pair<crank::ScoringModel, crank::Dataset> load_pair(const EvalArgs& a) {
  crank::ScoringModel model = crank::load_model(a.model_file);
  crank::Dataset data = crank::read_csv_file(a.in);
  if (crank::model_dim(model) != data.dim()) {
    throw crank::Error(fmt::format("model dimension {} does not match data dimension {}",
                                   crank::model_dim(model), data.dim()));
  }
  return {std::move(model), std::move(data)};
}

int run_evaluate(const EvalArgs& a) {
  const auto [model, data] = load_pair(a);
  if (data.size() < 3) throw crank::Error("evaluate needs at least 3 rows");
  std::ostringstream csv;
  crank::write_report_csv(csv, crank::evaluate(model, data));
  emit(a.out, csv.str());
  return 0;
}

double plot_score(const crank::ScoringModel& model, std::span<const double> x) {
  if (const auto* tree = std::get_if<crank::RankingTree>(&model)) {
    return tree->normalized_score(x);
  }
  return crank::score(model, x);
}

int run_curve(const EvalArgs& a) {
  if (a.alphas < 2) throw UsageError("--alphas must be >= 2");
  const auto [model, data] = load_pair(a);
  if (!a.scores_out.empty() && data.dim() != 1) {
    throw UsageError("--scores-out needs 1-dimensional data");
  }
  const std::vector<double> grid = crank::uniform_grid(a.alphas);
  std::ostringstream curve;
  crank::write_curve_csv(curve, crank::iroc_curve(model, data, grid));

  std::string scores;
  if (!a.scores_out.empty()) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
      return data.feature(i, 0) < data.feature(j, 0);
    });
    scores = "x,score\n";
    for (std::size_t i : order) {
      scores += crank::format_real(data.feature(i, 0)) + ',' +
                crank::format_real(plot_score(model, data.row(i))) + '\n';
    }
  }
  emit(a.out, curve.str());
  if (!a.scores_out.empty()) crank::write_file_atomic(a.scores_out, scores);
  return 0;
}

int run_compare(const CompareArgs& a) {
  if (a.seeds < 1) throw UsageError("--seeds must be >= 1");
  if (a.n_train < 2) throw UsageError("--n-train must be >= 2");
  if (a.n_test < 3) throw UsageError("--n-test must be >= 3");
  if (a.min_leaf < 1) throw UsageError("--min-leaf must be >= 1");
  if (a.folds < 2 || (a.prune && a.folds > a.n_train)) {
    throw UsageError("--folds must be in [2, n-train]");
  }
  check_depth(a.depth, a.n_train, false);
  crank::CompareConfig cfg;
  try {
    cfg.classifier = crank::parse_classifier_kind(a.classifier);
  } catch (const crank::Error& e) {
    throw UsageError(e.what());
  }
  cfg.n_train = a.n_train;
  cfg.n_test = a.n_test;
  cfg.depth = a.depth;
  cfg.min_leaf = a.min_leaf;
  cfg.prune = a.prune;
  cfg.folds = a.folds;
  cfg.classifier_depth = a.classifier_depth;
  cfg.seeds.clear();
  for (std::size_t i = 0; i < a.seeds; ++i) cfg.seeds.push_back(a.seed + i);
  std::ostringstream csv;
  crank::write_comparison_csv(csv, crank::run_comparison(cfg));
  emit(a.out, csv.str());
  return 0;
}

// Applies a flat key=value file to `sub`; flags given on the command line win.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot read config file '{}'", path));
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error& e) {
    throw UsageError(fmt::format("config file '{}': {}", path, e.what()));
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (!item.parents.empty() || opt == nullptr) {
      throw UsageError(fmt::format("config file '{}': unknown key '{}'", path,
                                   item.fullname()));
    }
    if (opt->count() > 0) continue;
    try {
      opt->add_result(item.inputs);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError(fmt::format("config file '{}': key '{}': {}", path,
                                   item.name, e.what()));
    }
  }
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous ranking: CRank, Kendall and CART trees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "crank 1.0.0");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
  std::string generate_config;
  generate->add_option("--config", generate_config, "Flat key=value file of flag defaults");
  generate->add_option("--kind", gen.kind,
                       "polynomial_experiment | regression_model | gaussian_counterexample")
      ->capture_default_str();
  generate->add_option("--n", gen.n, "Number of rows")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--noise-sd", gen.noise_sd, "Label noise (regression_model)")
      ->capture_default_str();
  generate->add_option("--dim", gen.dim, "Feature dimension (regression_model)")
      ->capture_default_str();
  generate->add_option("--out", gen.out, "Output CSV (default: standard output)");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model and write the model file");
  std::string fit_cmd_config;
  fit_cmd->add_option("--config", fit_cmd_config, "Flat key=value file of flag defaults");
  fit_cmd->add_option("--in", fit.in, "Training CSV")->required();
  fit_cmd->add_option("--out", fit.out, "Model file (default: standard output)");
  fit_cmd->add_option("--model", fit.model, "crank | kendall | cart")->capture_default_str();
  fit_cmd->add_option("--depth", fit.depth, "Depth budget J")->capture_default_str();
  fit_cmd->add_option("--min-leaf", fit.min_leaf, "Minimum cell size")->capture_default_str();
  fit_cmd->add_flag("--prune", fit.prune, "Cross-validated pruning (crank, kendall)");
  fit_cmd->add_option("--folds", fit.folds, "Pruning folds")->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed, "Fold partition seed")->capture_default_str();
  fit_cmd->add_option("--classifier", fit.classifier, "CRank node learner: tree | stump")
      ->capture_default_str();
  fit_cmd->add_option("--classifier-depth", fit.classifier_depth,
                      "Depth of the node classification tree")
      ->capture_default_str();

  EvalArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Print iauc,kendall,mse of a model on a dataset");
  std::string evaluate_config;
  evaluate->add_option("--config", evaluate_config, "Flat key=value file of flag defaults");
  evaluate->add_option("--model-file", eval.model_file, "Model file")->required();
  evaluate->add_option("--in", eval.in, "Test CSV")->required();
  evaluate->add_option("--out", eval.out, "Report CSV (default: standard output)");

  EvalArgs curve_args;
  auto* curve = app.add_subcommand("curve", "Write the IROC curve and per-point scores");
  std::string curve_config;
  curve->add_option("--config", curve_config, "Flat key=value file of flag defaults");
  curve->add_option("--model-file", curve_args.model_file, "Model file")->required();
  curve->add_option("--in", curve_args.in, "Test CSV")->required();
  curve->add_option("--out", curve_args.out, "IROC CSV (default: standard output)");
  curve->add_option("--scores-out", curve_args.scores_out,
                    "Sorted x,score CSV with tree scores divided by 2^J (1-D data)");
  curve->add_option("--alphas", curve_args.alphas, "Grid points on [0,1]")
      ->capture_default_str();

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare the three learners over a seed sweep");
  std::string compare_config;
  compare->add_option("--config", compare_config, "Flat key=value file of flag defaults");
  compare->add_option("--n-train", cmp.n_train, "Training rows")->capture_default_str();
  compare->add_option("--n-test", cmp.n_test, "Test rows")->capture_default_str();
  compare->add_option("--depth", cmp.depth, "Shared depth cap")->capture_default_str();
  compare->add_option("--min-leaf", cmp.min_leaf, "Minimum cell size")->capture_default_str();
  compare->add_flag("--prune", cmp.prune, "Prune crank and kendall trees");
  compare->add_option("--folds", cmp.folds, "Pruning folds")->capture_default_str();
  compare->add_option("--seeds", cmp.seeds, "Number of seeds")->capture_default_str();
  compare->add_option("--seed", cmp.seed, "First seed of the sweep")->capture_default_str();
  compare->add_option("--classifier", cmp.classifier, "CRank node learner: tree | stump")
      ->capture_default_str();
  compare->add_option("--classifier-depth", cmp.classifier_depth,
                      "Depth of the node classification tree")
      ->capture_default_str();
  compare->add_option("--out", cmp.out, "Output CSV (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "crank: usage error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    apply_config(generate, generate_config);
    apply_config(fit_cmd, fit_cmd_config);
    apply_config(evaluate, evaluate_config);
    apply_config(curve, curve_config);
    apply_config(compare, compare_config);
    if (generate->parsed()) return run_generate(gen);
    if (fit_cmd->parsed()) return run_fit(fit);
    if (evaluate->parsed()) return run_evaluate(eval);
    if (curve->parsed()) return run_curve(curve_args);
    if (compare->parsed()) return run_compare(cmp);
  } catch (const UsageError& e) {
    std::cerr << "crank: usage error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "crank: error: " << one_line(e.what()) << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
