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

#include "crank/synthgen.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>
#include <vector>

#include "crank/error.hpp"

namespace crank {

namespace {

double poly(double x) {
  const double z = 25.0 * (x - 0.5);
  return z * z * (z + 1.0) * (z + 1.5) * (z + 2.0);
}

}  // namespace

GenKind parse_gen_kind(const std::string& name) {
  if (name == "polynomial_experiment") return GenKind::kPolynomialExperiment;
  if (name == "regression_model") return GenKind::kRegressionModel;
  if (name == "gaussian_counterexample") return GenKind::kGaussianCounterexample;
  throw Error(fmt::format("unknown generator kind '{}'", name));
}

std::string gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::kPolynomialExperiment:
      return "polynomial_experiment";
    case GenKind::kRegressionModel:
      return "regression_model";
    case GenKind::kGaussianCounterexample:
      return "gaussian_counterexample";
  }
  return "unknown";
}

double m_poly(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(fmt::format("m_poly: x = {} outside [0, 1]", x));
  }
  static const double p0 = poly(0.0);
  static const double p1 = poly(1.0);
  return (poly(x) - p0) / (p1 - p0);
}

double counterexample_feature(double y, double standard_normal) {
  const double center = std::abs(2.0 * y - 1.0);
  if (center == 0.0) return 0.0;  // point mass at the degenerate y = 1/2
  return center + center * standard_normal;
}

Dataset generate(const GenSpec& spec) {
  if (spec.n < 1) throw Error("generate: n must be >= 1");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> features;
  std::vector<double> labels;
  labels.reserve(spec.n);

  switch (spec.kind) {
    case GenKind::kPolynomialExperiment: {
      const double lo[3] = {0.0, kMixtureBreak1, kMixtureBreak2};
      const double hi[3] = {kMixtureBreak1, kMixtureBreak2, 1.0};
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = unit(rng);
        const int c = u < kMixtureWeights[0]
                          ? 0
                          : (u < kMixtureWeights[0] + kMixtureWeights[1] ? 1 : 2);
        const double x = lo[c] + (hi[c] - lo[c]) * unit(rng);
        features.push_back(x);
        labels.push_back(m_poly(x));
      }
      return Dataset(1, std::move(features), std::move(labels));
    }
    case GenKind::kRegressionModel: {
      if (spec.dim < 1) throw Error("generate: dim must be >= 1");
      if (!(spec.noise_sd >= 0.0) || !std::isfinite(spec.noise_sd)) {
        throw Error("generate: noise_sd must be finite and nonnegative");
      }
      for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t f = 0; f < spec.dim; ++f) features.push_back(unit(rng));
        const double noise = spec.noise_sd > 0.0 ? spec.noise_sd * gauss(rng) : 0.0;
        labels.push_back(m_poly(features[i * spec.dim]) + noise);
      }
      return Dataset(spec.dim, std::move(features), std::move(labels));
    }
    case GenKind::kGaussianCounterexample: {
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double y = unit(rng);
        features.push_back(counterexample_feature(y, gauss(rng)));
        labels.push_back(y);
      }
      return Dataset(1, std::move(features), std::move(labels));
    }
  }
  throw Error("generate: unknown kind");
}

}  // namespace crank
