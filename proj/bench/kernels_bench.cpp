// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial vs OpenMP kernels, and lazy vs naive greedy.

#include <benchmark/benchmark.h>

#include "libags/geometry.hpp"
#include "libags/kernels.hpp"
#include "libags/rng.hpp"
#include "libags/select.hpp"

using namespace libags;

namespace {

Matrix points(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.normal();
  return m;
}

void BM_KnnSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix refs = points(n, 16, 1);
  const Matrix qs = points(n, 16, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::knn_distances(qs, refs, 10, false));
  }
}

void BM_KnnParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix refs = points(n, 16, 1);
  const Matrix qs = points(n, 16, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::knn_distances(qs, refs, 10, false));
  }
}

void BM_PairwiseSerial(benchmark::State& state) {
  const Matrix pts = points(static_cast<std::size_t>(state.range(0)), 32, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::pairwise_squared_distances(pts));
  }
}

void BM_PairwiseParallel(benchmark::State& state) {
  const Matrix pts = points(static_cast<std::size_t>(state.range(0)), 32, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::pairwise_squared_distances(pts));
  }
}

void BM_SoftmaxSerial(benchmark::State& state) {
  const Matrix x = points(static_cast<std::size_t>(state.range(0)), 200, 4);
  const Matrix w = points(2, 200, 5);
  const std::vector<double> b = {0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::affine_softmax(x, w, b));
  }
}

void BM_SoftmaxParallel(benchmark::State& state) {
  const Matrix x = points(static_cast<std::size_t>(state.range(0)), 200, 4);
  const Matrix w = points(2, 200, 5);
  const std::vector<double> b = {0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::affine_softmax(x, w, b));
  }
}

struct GreedyInput {
  std::vector<double> values;
  Matrix sim;
  RegionTable regions;
};

GreedyInput greedy_input(std::size_t m) {
  Rng rng(6);
  GreedyInput in;
  const FeatureMatrix pts(points(m, 4, 7));
  in.sim = build_similarity(pts, 0.5).values;
  in.values.resize(m);
  for (double& v : in.values) v = rng.uniform();
  in.regions.assignment.assign(m, 0);
  in.regions.c = {10.0};
  in.regions.t = {0};
  in.regions.r_region = {0.5};
  in.regions.centroids = Matrix(1, 4);
  return in;
}

void BM_GreedyLazy(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const GreedyInput in = greedy_input(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_select(in.values, in.sim, in.regions, 0.0, m / 4));
  }
}

void BM_GreedyNaive(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const GreedyInput in = greedy_input(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        naive_greedy_select(in.values, in.sim, in.regions, 0.0, m / 4));
  }
}

}  // namespace

BENCHMARK(BM_KnnSerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnnParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PairwiseSerial)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseParallel)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SoftmaxSerial)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SoftmaxParallel)->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GreedyLazy)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreedyNaive)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
