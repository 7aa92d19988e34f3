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

#include "libags/select.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "libags/error.hpp"
#include "libags/kernels.hpp"
#include "libags/rng.hpp"

namespace libags {

namespace {

std::size_t nearest_centroid(std::span<const double> point,
                             const Matrix& centroids) {
  std::size_t best = 0;
  double best_d = INFINITY;
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double d = kernels::squared_euclidean(point, centroids.row(c));
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

Matrix kmeans_plus_plus(const Matrix& points, std::size_t k, Rng& rng) {
  const std::size_t m = points.rows();
  Matrix centroids(k, points.cols());
  std::vector<double> min_d2(m, INFINITY);
  std::size_t pick = rng.below(m);
  for (std::size_t c = 0; c < k; ++c) {
    const auto src = points.row(pick);
    std::copy(src.begin(), src.end(), centroids.row(c).begin());
    if (c + 1 == k) break;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      min_d2[i] =
          std::min(min_d2[i], kernels::squared_euclidean(points.row(i), src));
      total += min_d2[i];
    }
    if (!(total > 0.0)) {
      pick = rng.below(m);
      continue;
    }
    const double target = rng.uniform() * total;
    double acc = 0.0;
    pick = m - 1;
    for (std::size_t i = 0; i < m; ++i) {
      acc += min_d2[i];
      if (acc > target && min_d2[i] > 0.0) {
        pick = i;
        break;
      }
    }
  }
  return centroids;
}

void assign_all(const Matrix& points, const Matrix& centroids,
                std::vector<std::size_t>& out) {
  out.resize(points.rows());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < points.rows(); ++i) {
    out[i] = nearest_centroid(points.row(i), centroids);
  }
}

// Orders heap entries by bound (largest first), then index (smallest first).
struct HeapEntry {
  double bound;
  std::size_t candidate;
  std::size_t stamp;
};

struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.candidate > b.candidate;
  }
};

void check_selection_args(std::span<const double> values,
                          const Matrix& similarity,
                          const RegionTable& regions) {
  const std::size_t m = values.size();
  if (similarity.rows() != m || similarity.cols() != m) {
    throw DimensionError("similarity matrix must be M x M");
  }
  if (regions.assignment.size() != m) {
    throw DimensionError("region assignment must cover every candidate");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw PreconditionError("candidate values must be finite and >= 0");
    }
  }
}

struct GainParts {
  double facility;
  double region;
  double combined;
};

GainParts evaluate(std::span<const double> values, const Matrix& similarity,
                   const SelectionState& state, std::size_t j) {
  const RegionTable& reg = state.regions;
  const std::size_t region = reg.assignment[j];
  GainParts g{};
  g.facility = facility_gain(values, similarity, state.cover, j);
  g.region = marginal_gain(reg.r_region[region], reg.c[region], reg.t[region]);
  g.combined = g.facility + g.region;
  return g;
}

void accept(const Matrix& similarity, SelectionState& state, std::size_t j,
            const GainParts& g) {
  state.gains_log.push_back(
      {state.selected.size(), j, g.facility, g.region, g.combined});
  state.selected.push_back(j);
  const auto row = similarity.row(j);
  for (std::size_t u = 0; u < state.cover.size(); ++u) {
    state.cover[u] = std::max(state.cover[u], row[u]);
  }
  ++state.regions.t[state.regions.assignment[j]];
}

SelectionState start_state(std::span<const double> values, RegionTable regions,
                           double eta) {
  SelectionState state;
  state.cover.assign(values.size(), 0.0);
  state.eta = eta;
  std::fill(regions.t.begin(), regions.t.end(), 0);
  state.regions = std::move(regions);
  return state;
}

bool passes(double gain, double eta) { return gain > 0.0 && gain >= eta; }

}  // namespace

std::size_t default_region_count(std::size_t n_candidates) {
  const auto root = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n_candidates))));
  return std::min(n_candidates, std::max<std::size_t>(8, root));
}

RegionTable build_regions(const FeatureMatrix& real_features,
                          const FeatureMatrix& candidate_features,
                          std::span<const double> importance,
                          std::size_t n_regions, std::uint64_t seed) {
  const std::size_t m = candidate_features.n_rows();
  if (n_regions < 1 || n_regions > m) {
    throw PreconditionError("n_regions must lie in [1, " + std::to_string(m) +
                            "]");
  }
  if (importance.size() != m) {
    throw DimensionError("importance length does not match candidates");
  }
  if (real_features.n_cols() != candidate_features.n_cols()) {
    throw DimensionError("real and candidate dimensions differ");
  }
  const Matrix& points = candidate_features.matrix();
  Rng rng(seed, streams::kRegions);
  RegionTable table;
  table.centroids = kmeans_plus_plus(points, n_regions, rng);

  std::vector<std::size_t> prev;
  for (int iter = 0; iter < kKMeansIterations; ++iter) {
    assign_all(points, table.centroids, table.assignment);
    if (table.assignment == prev) break;
    prev = table.assignment;
    Matrix sums(n_regions, points.cols());
    std::vector<std::size_t> counts(n_regions, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t c = table.assignment[i];
      ++counts[c];
      auto s = sums.row(c);
      const auto p = points.row(i);
      for (std::size_t f = 0; f < p.size(); ++f) s[f] += p[f];
    }
    for (std::size_t c = 0; c < n_regions; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its centroid
      auto dst = table.centroids.row(c);
      const auto s = sums.row(c);
      for (std::size_t f = 0; f < s.size(); ++f) {
        dst[f] = s[f] / static_cast<double>(counts[c]);
      }
    }
  }
  assign_all(points, table.centroids, table.assignment);

  std::vector<std::size_t> real_assignment;
  assign_all(real_features.matrix(), table.centroids, real_assignment);
  table.c.assign(n_regions, 1.0);
  for (std::size_t a : real_assignment) table.c[a] += 1.0;

  table.r_region.assign(n_regions, 0.0);
  std::vector<std::size_t> counts(n_regions, 0);
  for (std::size_t i = 0; i < m; ++i) {
    table.r_region[table.assignment[i]] += importance[i];
    ++counts[table.assignment[i]];
  }
  for (std::size_t c = 0; c < n_regions; ++c) {
    if (counts[c] > 0) table.r_region[c] /= static_cast<double>(counts[c]);
  }
  table.t.assign(n_regions, 0);
  return table;
}

double marginal_gain(double r, double c, std::size_t t) {
  if (!(c > 0.0)) throw PreconditionError("region coverage must be positive");
  const double n = c + static_cast<double>(t);
  return r / (n * (n + 1.0));
}

double select_eta(std::span<const double> g) {
  if (g.empty()) throw PreconditionError("gain curve is empty");
  if (g.size() < 3) return 0.0;
  std::size_t knee = 1;
  double best = -INFINITY;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double second_diff = g[i - 1] - 2.0 * g[i] + g[i + 1];
    if (second_diff > best) {
      best = second_diff;
      knee = i;
    }
  }
  return std::max(g[knee], 0.0);
}

double facility_value(std::span<const double> values, const Matrix& similarity,
                      std::span<const std::size_t> subset) {
  if (subset.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t u = 0; u < values.size(); ++u) {
    double best = 0.0;
    for (std::size_t j : subset) best = std::max(best, similarity(u, j));
    total += values[u] * best;
  }
  return total;
}

double facility_gain(std::span<const double> values, const Matrix& similarity,
                     std::span<const double> cover, std::size_t j) {
  const auto row = similarity.row(j);
  double gain = 0.0;
  for (std::size_t u = 0; u < values.size(); ++u) {
    gain += values[u] * std::max(0.0, row[u] - cover[u]);
  }
  return gain;
}

std::vector<double> initial_gains(std::span<const double> values,
                                  const Matrix& similarity,
                                  const RegionTable& regions) {
  std::vector<double> gains = kernels::weighted_row_sums(similarity, values);
  for (std::size_t j = 0; j < gains.size(); ++j) {
    const std::size_t r = regions.assignment[j];
    gains[j] += marginal_gain(regions.r_region[r], regions.c[r], 0);
  }
  return gains;
}

SelectionState greedy_select(std::span<const double> values,
                             const Matrix& similarity, RegionTable regions,
                             double eta, std::size_t max_budget) {
  check_selection_args(values, similarity, regions);
  SelectionState state = start_state(values, std::move(regions), eta);

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;
  for (std::size_t j = 0; j < values.size(); ++j) {
    heap.push({evaluate(values, similarity, state, j).combined, j, 0});
    ++state.evaluations;
  }
  while (true) {
    if (state.selected.size() >= max_budget) {
      state.stop_reason = StopReason::kBudget;
      break;
    }
    if (heap.empty()) {
      state.stop_reason = StopReason::kExhausted;
      break;
    }
    const HeapEntry top = heap.top();
    heap.pop();
    const std::size_t step = state.selected.size();
    if (top.stamp != step) {
      const GainParts g = evaluate(values, similarity, state, top.candidate);
      ++state.evaluations;
      heap.push({g.combined, top.candidate, step});
      continue;
    }
    const GainParts g = evaluate(values, similarity, state, top.candidate);
    if (!passes(g.combined, eta)) {
      state.stop_reason = StopReason::kBelowThreshold;
      state.rejected_gain = g.combined;
      break;
    }
    accept(similarity, state, top.candidate, g);
  }
  return state;
}

SelectionState naive_greedy_select(std::span<const double> values,
                                   const Matrix& similarity,
                                   RegionTable regions, double eta,
                                   std::size_t max_budget) {
  check_selection_args(values, similarity, regions);
  SelectionState state = start_state(values, std::move(regions), eta);
  std::vector<bool> taken(values.size(), false);
  while (true) {
    if (state.selected.size() >= max_budget) {
      state.stop_reason = StopReason::kBudget;
      break;
    }
    std::optional<std::size_t> best;
    GainParts best_gain{};
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (taken[j]) continue;
      const GainParts g = evaluate(values, similarity, state, j);
      ++state.evaluations;
      if (!best || g.combined > best_gain.combined) {
        best = j;
        best_gain = g;
      }
    }
    if (!best) {
      state.stop_reason = StopReason::kExhausted;
      break;
    }
    if (!passes(best_gain.combined, eta)) {
      state.stop_reason = StopReason::kBelowThreshold;
      state.rejected_gain = best_gain.combined;
      break;
    }
    taken[*best] = true;
    accept(similarity, state, *best, best_gain);
  }
  return state;
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kBelowThreshold:
      return "below_threshold";
    case StopReason::kBudget:
      return "budget";
    case StopReason::kExhausted:
      return "exhausted";
  }
  return "unknown";
}

}  // namespace libags
