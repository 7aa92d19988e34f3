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

#ifndef LIBAGS_SELECT_HPP_
#define LIBAGS_SELECT_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "libags/matrix.hpp"

namespace libags {

// Partition of the candidate space used for the diminishing-returns term.
// Region j has real coverage c[j] (real points assigned to it, plus one),
// t[j] candidates selected so far, and mean candidate importance r_region[j].
struct RegionTable {
  std::vector<std::size_t> assignment;  // region of each candidate
  std::vector<double> c;
  std::vector<std::size_t> t;
  std::vector<double> r_region;
  Matrix centroids;

  std::size_t n_regions() const { return c.size(); }
};

inline constexpr int kKMeansIterations = 50;

// k-means (k-means++ seeding, at most kKMeansIterations Lloyd steps, stops
// early at a fixed point) on the candidate features. Real points are assigned
// to their nearest centroid; ties go to the lower region index.
RegionTable build_regions(const FeatureMatrix& real_features,
                          const FeatureMatrix& candidate_features,
                          std::span<const double> importance,
                          std::size_t n_regions, std::uint64_t seed);

// Default region count: max(8, ceil(sqrt(M))), capped at M.
std::size_t default_region_count(std::size_t n_candidates);

// r / ((c + t)(c + t + 1)): the drop in r / (c + t) from one more sample.
double marginal_gain(double r, double c, std::size_t t);

// Threshold at the knee of a descending gain curve: the value at the interior
// index with the largest second difference g[i-1] - 2 g[i] + g[i+1] (earliest
// index on ties). Curves shorter than 3 give 0.
double select_eta(std::span<const double> sorted_gains_desc);

struct GainStep {
  std::size_t step = 0;
  std::size_t candidate = 0;
  double facility_gain = 0.0;
  double region_gain = 0.0;
  double combined_gain = 0.0;
};

enum class StopReason { kBelowThreshold, kBudget, kExhausted };

struct SelectionState {
  std::vector<std::size_t> selected;  // in selection order
  std::vector<double> cover;          // max_{j in S} k(u, j) per candidate
  std::vector<GainStep> gains_log;
  double eta = 0.0;
  StopReason stop_reason = StopReason::kExhausted;
  // Best remaining combined gain when the threshold stopped the loop.
  std::optional<double> rejected_gain;
  RegionTable regions;  // with final t counts
  std::size_t evaluations = 0;
};

// Facility-location objective F(S) = sum_u v_u max_{j in S} K(u, j), F({}) = 0.
double facility_value(std::span<const double> values, const Matrix& similarity,
                      std::span<const std::size_t> subset);

// F(S + j) - F(S) given cover = max_{l in S} K(u, l).
double facility_gain(std::span<const double> values, const Matrix& similarity,
                     std::span<const double> cover, std::size_t j);

// Combined gain of every candidate at S = {}: sum_u v_u K(u, j) plus the
// region term at t = 0. Sorting these descending gives the curve for
// select_eta.
std::vector<double> initial_gains(std::span<const double> values,
                                  const Matrix& similarity,
                                  const RegionTable& regions);

// Greedy maximization of facility gain + region marginal gain. Each step adds
// the candidate with the largest combined gain (lowest index on ties) and
// increments its region's t. Stops when the best gain is below `eta` or not
// positive, when `max_budget` candidates are selected, or when none remain.
// Lazy evaluation with a max-heap of stale upper bounds; both terms only
// shrink as S grows, so the result equals naive_greedy_select exactly.
SelectionState greedy_select(std::span<const double> values,
                             const Matrix& similarity, RegionTable regions,
                             double eta, std::size_t max_budget);

// Reference implementation: re-evaluates every remaining candidate each step.
SelectionState naive_greedy_select(std::span<const double> values,
                                   const Matrix& similarity,
                                   RegionTable regions, double eta,
                                   std::size_t max_budget);

const char* to_string(StopReason reason);

}  // namespace libags

#endif  // LIBAGS_SELECT_HPP_
