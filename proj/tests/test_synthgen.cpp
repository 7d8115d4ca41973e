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
#include "crank/synthgen.hpp"

namespace crank {
namespace {

TEST(MPoly, EndpointsAndCenter) {
  EXPECT_EQ(m_poly(0.0), 0.0);
  EXPECT_EQ(m_poly(1.0), 1.0);
  // z = 0 at x = 1/2: -P(0) / (P(1) - P(0)) with P(0) = -207539.0625 and
  // P(1) = 428203.125.
  EXPECT_DOUBLE_EQ(m_poly(0.5), 207539.0625 / 635742.1875);
  EXPECT_DOUBLE_EQ(m_poly(0.5), 0.32645161290322583);
  EXPECT_THROW(m_poly(-1e-9), Error);
  EXPECT_THROW(m_poly(1.0 + 1e-9), Error);
  EXPECT_THROW(m_poly(NAN), Error);
}

TEST(MPoly, MapsTheUnitIntervalIntoItself) {
  for (int i = 0; i <= 100000; ++i) {
    const double v = m_poly(i / 100000.0);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(Generate, PolynomialMixtureWeights) {
  const Dataset data = generate({GenKind::kPolynomialExperiment, 10000, 1});
  int middle = 0, low = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double x = data.feature(i, 0);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
    middle += x >= kMixtureBreak1 && x <= kMixtureBreak2;
    low += x < kMixtureBreak1;
  }
  EXPECT_NEAR(middle / 10000.0, 0.8, 0.02);
  EXPECT_NEAR(low / 10000.0, 0.1, 0.02);
}

TEST(Generate, PolynomialLabelsAreExact) {
  const Dataset data = generate({GenKind::kPolynomialExperiment, 2000, 2});
  for (std::size_t i = 0; i < data.size(); ++i) {
    ASSERT_EQ(data.label(i), m_poly(data.feature(i, 0)));
    ASSERT_GE(data.label(i), 0.0);
    ASSERT_LE(data.label(i), 1.0);
  }
}

TEST(Generate, Deterministic) {
  for (GenKind kind : {GenKind::kPolynomialExperiment, GenKind::kRegressionModel,
                       GenKind::kGaussianCounterexample}) {
    const GenSpec spec{kind, 500, 77, 0.1, 2};
    const Dataset a = generate(spec);
    const Dataset b = generate(spec);
    ASSERT_TRUE(std::equal(a.features().begin(), a.features().end(), b.features().begin()));
    ASSERT_TRUE(std::equal(a.labels().begin(), a.labels().end(), b.labels().begin()));
    const Dataset c = generate({kind, 500, 78, 0.1, 2});
    EXPECT_FALSE(std::equal(a.labels().begin(), a.labels().end(), c.labels().begin()));
  }
}

TEST(Generate, RegressionModel) {
  const Dataset clean = generate({GenKind::kRegressionModel, 1000, 3, 0.0, 3});
  EXPECT_EQ(clean.dim(), 3u);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    ASSERT_EQ(clean.label(i), m_poly(clean.feature(i, 0)));
  }
  const Dataset noisy = generate({GenKind::kRegressionModel, 20000, 3, 0.5, 1});
  double sum = 0, sq = 0;
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    const double e = noisy.label(i) - m_poly(noisy.feature(i, 0));
    sum += e;
    sq += e * e;
  }
  EXPECT_NEAR(sum / 20000.0, 0.0, 0.02);
  EXPECT_NEAR(std::sqrt(sq / 20000.0), 0.5, 0.02);
  EXPECT_THROW(generate({GenKind::kRegressionModel, 10, 3, -1.0, 1}), Error);
  EXPECT_THROW(generate({GenKind::kRegressionModel, 0, 3, 0.0, 1}), Error);
}

TEST(Generate, KindNames) {
  for (GenKind kind : {GenKind::kPolynomialExperiment, GenKind::kRegressionModel,
                       GenKind::kGaussianCounterexample}) {
    EXPECT_EQ(parse_gen_kind(gen_kind_name(kind)), kind);
  }
  EXPECT_THROW(parse_gen_kind("poly"), Error);
}

TEST(Counterexample, PointMassAtOneHalf) {
  for (double z : {-3.0, 0.0, 0.7, 10.0}) EXPECT_EQ(counterexample_feature(0.5, z), 0.0);
  EXPECT_EQ(counterexample_feature(0.0, 0.0), 1.0);
  EXPECT_EQ(counterexample_feature(1.0, 1.0), 2.0);
  EXPECT_EQ(counterexample_feature(0.25, -1.0), 0.0);
}

// Mirrored label bins [1/2 - (k+1)w, 1/2 - kw) and (1/2 + kw, 1/2 + (k+1)w]
// must carry the same X law. Tolerances sit above the 99.9% quantiles (3.9
// and 0.10) of 2000 simulated replicates of this exact check.
TEST(Counterexample, MirrorSymmetry) {
  const Dataset data = generate({GenKind::kGaussianCounterexample, 20000, 4});
  const double w = 0.05;
  for (int k = 0; k < 10; ++k) {
    std::vector<double> lo, hi;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double y = data.label(i);
      if (y >= 0.5 - w * (k + 1) && y < 0.5 - w * k) lo.push_back(data.feature(i, 0));
      if (y > 0.5 + w * k && y <= 0.5 + w * (k + 1)) hi.push_back(data.feature(i, 0));
    }
    auto moments = [](const std::vector<double>& v) {
      double m = 0, s = 0;
      for (double x : v) m += x;
      m /= static_cast<double>(v.size());
      for (double x : v) s += (x - m) * (x - m);
      return std::pair{m, std::sqrt(s / static_cast<double>(v.size()))};
    };
    const auto [m1, s1] = moments(lo);
    const auto [m2, s2] = moments(hi);
    const double se = std::sqrt(s1 * s1 / static_cast<double>(lo.size()) +
                                s2 * s2 / static_cast<double>(hi.size()));
    EXPECT_LE(std::abs(m1 - m2) / se, 4.5) << "bin " << k;
    EXPECT_LE(std::abs(s1 - s2), 0.12) << "bin " << k;
    // Location and scale match |2y - 1| at the bin centre to first order.
    const double centre = w * (k + 0.5) * 2.0;
    EXPECT_NEAR(m1, centre, 0.02 + 4.0 * se);
  }
}

}  // namespace
}  // namespace crank
