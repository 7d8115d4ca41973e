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

// Serial reference versus OpenMP kernels. Run with
//   OMP_NUM_THREADS=k ./build/bench/crank_bench

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "crank/kernels.hpp"

namespace {

struct Sample {
  std::vector<double> scores;
  std::vector<double> labels;
};

Sample make_sample(std::size_t n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  Sample s{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    s.labels[i] = normal(rng);
    // Coarse scores so tie handling is exercised.
    s.scores[i] = std::round(4.0 * (s.labels[i] + normal(rng))) / 4.0;
  }
  return s;
}

template <auto Kernel>
void BM_pairs(benchmark::State& state) {
  const Sample s = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s.scores, s.labels));
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void BM_triples(benchmark::State& state) {
  const Sample s = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s.scores, s.labels));
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void BM_roc(benchmark::State& state) {
  const Sample s = make_sample(static_cast<std::size_t>(state.range(0)));
  std::vector<double> sorted = s.labels;
  std::sort(sorted.begin(), sorted.end());
  // Interior labels as thresholds, as the IROC estimator uses them.
  const std::vector<double> thresholds(sorted.begin() + 1, sorted.end() - 1);
  std::vector<double> alphas(101);
  for (std::size_t i = 0; i < alphas.size(); ++i) alphas[i] = i / 100.0;
  std::vector<double> out(thresholds.size() * alphas.size());
  for (auto _ : state) {
    Kernel(s.scores, s.labels, thresholds, alphas, out);
    benchmark::ClobberMemory();
  }
  state.SetComplexityN(state.range(0));
}

BENCHMARK(BM_pairs<crank::kernels::serial::pair_counts>)->Name("pair_counts/serial")->RangeMultiplier(8)->Range(512, 1 << 21);
BENCHMARK(BM_pairs<crank::kernels::parallel::pair_counts>)->Name("pair_counts/parallel")->RangeMultiplier(8)->Range(512, 1 << 21);
BENCHMARK(BM_triples<crank::kernels::serial::triple_counts>)->Name("triple_counts/serial")->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK(BM_triples<crank::kernels::parallel::triple_counts>)->Name("triple_counts/parallel")->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK(BM_roc<crank::kernels::serial::roc_batch>)->Name("roc_batch/serial")->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK(BM_roc<crank::kernels::parallel::roc_batch>)->Name("roc_batch/parallel")->RangeMultiplier(2)->Range(256, 4096);

}  // namespace

BENCHMARK_MAIN();
