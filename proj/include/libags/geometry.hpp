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

#ifndef LIBAGS_GEOMETRY_HPP_
#define LIBAGS_GEOMETRY_HPP_

#include <optional>
#include <span>
#include <vector>

#include "libags/matrix.hpp"

namespace libags {

// Brute-force Euclidean neighbor search over a fixed reference set.
class NeighborIndex {
 public:
  explicit NeighborIndex(FeatureMatrix reference)
      : reference_(std::move(reference)) {}

  const FeatureMatrix& reference() const { return reference_; }
  std::size_t size() const { return reference_.n_rows(); }
  std::size_t dim() const { return reference_.n_cols(); }

 private:
  FeatureMatrix reference_;
};

// k smallest distances from every query row to the reference set, ascending.
Matrix knn_distances(const NeighborIndex& index, const FeatureMatrix& query,
                     std::size_t k);

// Same, querying the reference set against itself with each point's own row
// excluded.
Matrix knn_self_distances(const NeighborIndex& index, std::size_t k);

// ln of the volume of the unit ball in `dim` dimensions.
double unit_ball_log_volume(std::size_t dim);

// Log densities are clamped to this magnitude so densities stay finite for any
// dimension.
inline constexpr double kMaxLogDensity = 700.0;
// Used in place of a zero k-th distance when the batch has no positive
// neighbor distance at all.
inline constexpr double kMinRadius = 1e-9;

// density(z) = k / (n V_dim R_k(z)^dim), evaluated in log space. `dim` is the
// dimension the density lives in; it may be smaller than the ambient feature
// dimension when the features are an embedding of lower-dimensional data.
// A zero R_k is replaced by the smallest positive neighbor distance in the
// batch.
std::vector<double> knn_density(const NeighborIndex& index,
                                const FeatureMatrix& query, std::size_t k,
                                std::size_t dim);

// Density of the reference points themselves, self excluded.
std::vector<double> knn_density_self(const NeighborIndex& index, std::size_t k,
                                     std::size_t dim);

// Converts a k-nearest-neighbor distance matrix into densities; exposed for
// callers that already hold the distances.
std::vector<double> density_from_knn(const Matrix& knn, std::size_t n_reference,
                                     std::size_t dim);

// Support validity calibrated on real-to-real k-th neighbor distances:
//   b = exp(-max(0, d_k - rho)^2 / (2 sigma^2)),
// rho = median(calibration), sigma = max(p90(calibration) - rho, 1e-9).
struct SupportCalibration {
  double rho = 0.0;
  double sigma = 1.0;

  static SupportCalibration from(std::span<const double> kth_distances);
  double validity(double kth_distance) const;
};

std::vector<double> support_validity(const NeighborIndex& index,
                                     const FeatureMatrix& query, std::size_t k,
                                     std::span<const double> calibration);

// Gaussian similarity k(u, j) = exp(-||u - j||^2 / (2 sigma^2)).
struct KernelSpec {
  double bandwidth = 1.0;
};

double similarity(const KernelSpec& kernel, std::span<const double> u,
                  std::span<const double> j);

// Median of the pairwise distances ||u - j|| over u < j (1.0 for a single
// point, floored at 1e-9).
double median_pairwise_distance(const Matrix& squared_distances);

struct SimilarityMatrix {
  KernelSpec kernel;
  Matrix values;  // M x M, symmetric, unit diagonal
};

// Candidate-candidate similarity. Without an explicit bandwidth the median
// heuristic is used.
SimilarityMatrix build_similarity(const FeatureMatrix& points,
                                  std::optional<double> bandwidth);

}  // namespace libags

#endif  // LIBAGS_GEOMETRY_HPP_
