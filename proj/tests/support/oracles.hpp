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

// Brute-force and independent reference computations used by the unit and
// acceptance tests. None of these call into the library code they check.

#ifndef LIBAGS_TESTS_ORACLES_HPP_
#define LIBAGS_TESTS_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "libags/matrix.hpp"
#include "libags/rng.hpp"

namespace oracle {

// All pairwise distances, full sort by (distance, index), first k kept.
libags::Matrix knn(const libags::Matrix& queries, const libags::Matrix& refs,
                   std::size_t k, bool exclude_self);

// Counts every (positive, negative) pair; ties count one half.
double auroc_pairs(std::span<const double> scores,
                   std::span<const std::size_t> labels);

// Best facility value over all subsets of exactly `size` candidates.
double best_subset_value(std::span<const double> values,
                         const libags::Matrix& similarity, std::size_t size);

struct AllocationResult {
  std::vector<double> q;  // density per bin, sum_i width * q_i = 1
  double objective = 0.0;
  int iterations = 0;
  double kkt_residual = 0.0;
};

// Minimizes sum_i width * r_i / (n p_i + m q_i) over q >= 0 with
// sum_i width * q_i = 1 by projected gradient descent with backtracking.
// Stops when the projected-gradient residual falls below `tol`; throws
// std::runtime_error after `max_iter` iterations.
AllocationResult continuous_allocation(std::span<const double> r,
                                       std::span<const double> p, double n,
                                       double m, double width,
                                       double tol = 1e-12,
                                       int max_iter = 2000000);

// Euclidean projection onto {s >= 0, sum s = 1}.
std::vector<double> project_simplex(std::span<const double> v);

// Central differences of f at x with step h.
std::vector<double> numeric_gradient(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x, double h = 1e-5);

// Random probability vector of length k (normalized exponentials).
std::vector<double> random_distribution(libags::Rng& rng, std::size_t k);

libags::Matrix random_matrix(libags::Rng& rng, std::size_t rows,
                             std::size_t cols, double lo, double hi);

}  // namespace oracle

#endif  // LIBAGS_TESTS_ORACLES_HPP_
