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

#ifndef LIBAGS_BENCH_HPP_
#define LIBAGS_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "libags/data.hpp"
#include "libags/model.hpp"
#include "libags/pipeline.hpp"

namespace libags {

inline const std::vector<std::string> kBenchMethods = {
    "erm", "random", "noise", "uncertainty_only", "libags"};

struct BenchResult {
  std::string method;
  std::vector<std::uint64_t> seeds;
  std::vector<double> accuracy;
  std::vector<double> auroc;
  std::vector<std::size_t> m_hat;       // synthetic rows added per seed
  std::vector<std::size_t> train_size;  // n + m_hat (n for erm)
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;  // sample standard deviation
  double auroc_mean = 0.0;
  double auroc_std = 0.0;
};

// Pipeline settings used by the bench and the demo: the defaults with the
// RFF representation.
PipelineConfig bench_default_config();

// For each seed: generate two-moons with `data` (its seed replaced), run the
// pipeline to learn m_hat, then give every fixed-count baseline exactly m_hat
// rows. One result per requested method, in request order. Throws
// ValidationError on an unknown method name.
std::vector<BenchResult> run_bench(std::span<const std::string> methods,
                                   std::span<const std::uint64_t> seeds,
                                   const PipelineConfig& config,
                                   const TwoMoonsConfig& data = {});

// Probability that a random positive outscores a random negative, ties
// counting one half, via average ranks. Labels are 0/1 with both present.
double auroc(std::span<const double> scores, std::span<const ClassIndex> labels);

double accuracy(std::span<const ClassIndex> predicted,
                std::span<const ClassIndex> truth);

struct Box {
  double x_min = -1.5;
  double x_max = 2.5;
  double y_min = -1.25;
  double y_max = 1.75;
};

// CSV x1,x2,p_class1 over a resolution x resolution grid spanning `bounds`
// (x1 outer loop, both ascending). Inputs are encoded first when an encoder
// is given.
void export_boundary_grid(const LogisticModel& model,
                          const std::optional<RffEncoder>& encoder,
                          const Box& bounds, std::size_t resolution,
                          const std::filesystem::path& path);

// method,seed,accuracy,auroc,m_hat,train_size
void write_bench_csv(const std::filesystem::path& path,
                     std::span<const BenchResult> results);
std::string bench_summary(std::span<const BenchResult> results);

}  // namespace libags

#endif  // LIBAGS_BENCH_HPP_
