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

#ifndef CRANK_SYNTHGEN_HPP_
#define CRANK_SYNTHGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include "crank/dataset.hpp"

namespace crank {

enum class GenKind {
  // 1-D X from a three-interval mixture, Y = m_poly(X) with no noise.
  kPolynomialExperiment,
  // X uniform on [0,1]^dim, Y = m_poly(X_0) + N(0, noise_sd^2).
  kRegressionModel,
  // Y uniform on [0,1], X | Y = y ~ N(|2y - 1|, (2y - 1)^2); X = 0 at y = 1/2.
  kGaussianCounterexample,
};

GenKind parse_gen_kind(const std::string& name);
std::string gen_kind_name(GenKind kind);

struct GenSpec {
  GenKind kind = GenKind::kPolynomialExperiment;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  double noise_sd = 0.0;  // kRegressionModel only
  std::size_t dim = 1;    // kRegressionModel only
};

// Mixture components of the polynomial experiment: X is uniform on
// [0, 0.415], [0.415, 0.51] or [0.51, 1] with probabilities 0.1, 0.8, 0.1.
inline constexpr double kMixtureBreak1 = 0.415;
inline constexpr double kMixtureBreak2 = 0.51;
inline constexpr double kMixtureWeights[3] = {0.1, 0.8, 0.1};

// m(x) = (P(x) - P(0)) / (P(1) - P(0)) with
// P(x) = z^2 (z + 1)(z + 1.5)(z + 2), z = 25 (x - 0.5). Throws outside [0, 1].
double m_poly(double x);

// Deterministic given the spec: draws come from std::mt19937_64 seeded with
// spec.seed.
// X given Y = y in the Gaussian counterexample, from a standard normal draw:
// mean |2y - 1|, standard deviation |2y - 1|, exactly 0 at y = 1/2.
double counterexample_feature(double y, double standard_normal);

Dataset generate(const GenSpec& spec);

}  // namespace crank

#endif  // CRANK_SYNTHGEN_HPP_
