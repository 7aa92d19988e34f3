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

#ifndef LIBAGS_ALLOC_HPP_
#define LIBAGS_ALLOC_HPP_

#include <span>
#include <vector>

namespace libags {

// G = max(0, sqrt(r / lambda) - coverage).
double gap_score(double r, double coverage, double lambda);

struct AllocationSolution {
  double lambda = 0.0;
  std::vector<double> gap_scores;
  double total_mass = 0.0;
  double target_mass = 0.0;
  int iterations = 0;
};

inline constexpr double kLambdaRelTol = 1e-6;
inline constexpr int kLambdaMaxIter = 200;

// Finds lambda with sum_j gap_score(r_j, coverage_j, lambda) = target_mass
// (relative tolerance kLambdaRelTol) by bisection on log(lambda). The total is
// continuous and non-increasing in lambda and strictly decreasing wherever
// some candidate is active, starting from the bracket
//   [min_{r>0} r / (max coverage + target)^2,  max r * 1e6]
// (the upper end is widened if the total there still exceeds the target).
// Throws NoPositiveImportance when every r_j is zero.
AllocationSolution solve_lambda(std::span<const double> r,
                                std::span<const double> coverage,
                                double target_mass);

}  // namespace libags

#endif  // LIBAGS_ALLOC_HPP_
