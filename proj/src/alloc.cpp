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

#include "libags/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "libags/error.hpp"

namespace libags {

double gap_score(double r, double coverage, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("lambda must be positive");
  return std::max(0.0, std::sqrt(r / lambda) - coverage);
}

namespace {

double total_mass(std::span<const double> r, std::span<const double> coverage,
                  double lambda) {
  double total = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    total += gap_score(r[j], coverage[j], lambda);
  }
  return total;
}

}  // namespace

AllocationSolution solve_lambda(std::span<const double> r,
                                std::span<const double> coverage,
                                double target_mass) {
  if (r.size() != coverage.size()) {
    throw DimensionError("importance and coverage lengths differ");
  }
  if (!(target_mass > 0.0) || !std::isfinite(target_mass)) {
    throw PreconditionError("target mass must be positive and finite");
  }
  double r_min = INFINITY;
  double r_max = 0.0;
  double cov_max = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (!(r[j] >= 0.0) || !std::isfinite(r[j])) {
      throw PreconditionError("importance must be finite and >= 0 (index " +
                              std::to_string(j) + ")");
    }
    if (!(coverage[j] >= 0.0) || !std::isfinite(coverage[j])) {
      throw PreconditionError("coverage must be finite and >= 0 (index " +
                              std::to_string(j) + ")");
    }
    cov_max = std::max(cov_max, coverage[j]);
    if (r[j] > 0.0) {
      r_min = std::min(r_min, r[j]);
      r_max = std::max(r_max, r[j]);
    }
  }
  if (r_max == 0.0) {
    throw NoPositiveImportance("every candidate has zero importance");
  }

  double lo = r_min / ((cov_max + target_mass) * (cov_max + target_mass));
  double hi = r_max * 1e6;
  while (total_mass(r, coverage, hi) > target_mass && hi < 1e300) hi *= 1e6;

  AllocationSolution sol;
  sol.target_mass = target_mass;
  double lambda = hi;
  double mass = total_mass(r, coverage, lambda);
  for (int it = 1; it <= kLambdaMaxIter; ++it) {
    lambda = std::sqrt(lo) * std::sqrt(hi);
    mass = total_mass(r, coverage, lambda);
    sol.iterations = it;
    if (std::abs(mass - target_mass) <= kLambdaRelTol * target_mass) break;
    if (mass > target_mass) {
      lo = lambda;
    } else {
      hi = lambda;
    }
  }
  sol.lambda = lambda;
  sol.gap_scores.resize(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    sol.gap_scores[j] = gap_score(r[j], coverage[j], lambda);
  }
  sol.total_mass = mass;
  return sol;
}

}  // namespace libags
