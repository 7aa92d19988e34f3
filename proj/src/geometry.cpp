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

#include "libags/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "libags/error.hpp"
#include "libags/kernels.hpp"
#include "libags/stats.hpp"

namespace libags {

Matrix knn_distances(const NeighborIndex& index, const FeatureMatrix& query,
                     std::size_t k) {
  return kernels::knn_distances(query.matrix(), index.reference().matrix(), k,
                                /*exclude_self=*/false);
}

Matrix knn_self_distances(const NeighborIndex& index, std::size_t k) {
  const Matrix& ref = index.reference().matrix();
  return kernels::knn_distances(ref, ref, k, /*exclude_self=*/true);
}

double unit_ball_log_volume(std::size_t dim) {
  const double half = 0.5 * static_cast<double>(dim);
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

std::vector<double> density_from_knn(const Matrix& knn, std::size_t n_reference,
                                     std::size_t dim) {
  if (dim < 1) throw PreconditionError("density dimension must be >= 1");
  if (knn.cols() < 1) throw PreconditionError("density needs k >= 1");
  const std::size_t k = knn.cols();

  double fallback = INFINITY;
  for (double d : knn.values()) {
    if (d > 0.0) fallback = std::min(fallback, d);
  }
  if (!std::isfinite(fallback)) fallback = kMinRadius;

  const double log_const = std::log(static_cast<double>(k)) -
                           std::log(static_cast<double>(n_reference)) -
                           unit_ball_log_volume(dim);
  std::vector<double> out(knn.rows());
  for (std::size_t q = 0; q < knn.rows(); ++q) {
    double radius = knn(q, k - 1);
    if (!(radius > 0.0)) radius = fallback;
    const double log_density =
        log_const - static_cast<double>(dim) * std::log(radius);
    out[q] = std::exp(std::clamp(log_density, -kMaxLogDensity, kMaxLogDensity));
  }
  return out;
}

std::vector<double> knn_density(const NeighborIndex& index,
                                const FeatureMatrix& query, std::size_t k,
                                std::size_t dim) {
  return density_from_knn(knn_distances(index, query, k), index.size(), dim);
}

std::vector<double> knn_density_self(const NeighborIndex& index, std::size_t k,
                                     std::size_t dim) {
  return density_from_knn(knn_self_distances(index, k), index.size(), dim);
}

SupportCalibration SupportCalibration::from(
    std::span<const double> kth_distances) {
  if (kth_distances.empty()) {
    throw PreconditionError("support calibration needs at least one distance");
  }
  SupportCalibration cal;
  cal.rho = linear_quantile(kth_distances, 0.5);
  cal.sigma = std::max(linear_quantile(kth_distances, 0.9) - cal.rho, 1e-9);
  return cal;
}

double SupportCalibration::validity(double kth_distance) const {
  const double excess = std::max(0.0, kth_distance - rho);
  return std::exp(-(excess * excess) / (2.0 * sigma * sigma));
}

std::vector<double> support_validity(const NeighborIndex& index,
                                     const FeatureMatrix& query, std::size_t k,
                                     std::span<const double> calibration) {
  const SupportCalibration cal = SupportCalibration::from(calibration);
  const Matrix knn = knn_distances(index, query, k);
  std::vector<double> out(query.n_rows());
  for (std::size_t q = 0; q < out.size(); ++q) {
    out[q] = cal.validity(knn(q, k - 1));
  }
  return out;
}

double similarity(const KernelSpec& kernel, std::span<const double> u,
                  std::span<const double> j) {
  if (u.size() != j.size()) {
    throw DimensionError("similarity of rows with different dimensions");
  }
  if (!(kernel.bandwidth > 0.0)) {
    throw PreconditionError("kernel bandwidth must be positive");
  }
  const double d2 = kernels::squared_euclidean(u, j);
  return std::exp(-d2 / (2.0 * kernel.bandwidth * kernel.bandwidth));
}

double median_pairwise_distance(const Matrix& squared) {
  const std::size_t m = squared.rows();
  if (m < 2) return 1.0;
  std::vector<double> d;
  d.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) d.push_back(std::sqrt(squared(i, j)));
  }
  // Linear-interpolation median from two order statistics.
  const double h = 0.5 * static_cast<double>(d.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(lo),
                   d.end());
  double median = d[lo];
  if (static_cast<double>(lo) < h) {
    const double next = *std::min_element(
        d.begin() + static_cast<std::ptrdiff_t>(lo) + 1, d.end());
    median += (h - static_cast<double>(lo)) * (next - median);
  }
  return std::max(median, 1e-9);
}

SimilarityMatrix build_similarity(const FeatureMatrix& points,
                                  std::optional<double> bandwidth) {
  const Matrix squared = kernels::pairwise_squared_distances(points.matrix());
  KernelSpec kernel;
  if (bandwidth) {
    if (!(*bandwidth > 0.0)) {
      throw PreconditionError("kernel bandwidth must be positive");
    }
    kernel.bandwidth = *bandwidth;
  } else {
    kernel.bandwidth = median_pairwise_distance(squared);
  }
  return {kernel, kernels::gaussian_from_squared(squared, kernel.bandwidth)};
}

}  // namespace libags
