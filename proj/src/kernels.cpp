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

#include "libags/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "libags/error.hpp"

namespace libags::kernels {

namespace {

void check_knn_args(const Matrix& queries, const Matrix& refs, std::size_t k,
                    bool exclude_self) {
  if (queries.cols() != refs.cols()) {
    throw DimensionError("query dimension " + std::to_string(queries.cols()) +
                         " != reference dimension " +
                         std::to_string(refs.cols()));
  }
  if (exclude_self && queries.rows() != refs.rows()) {
    throw PreconditionError("self-excluded query must be the reference set");
  }
  const std::size_t available = refs.rows() - (exclude_self ? 1 : 0);
  if (k < 1 || k > available) {
    throw PreconditionError("k=" + std::to_string(k) + " but only " +
                            std::to_string(available) +
                            " neighbors are available");
  }
}

void knn_row(const Matrix& queries, const Matrix& refs, std::size_t k,
             bool exclude_self, std::size_t q,
             std::vector<std::pair<double, std::size_t>>& scratch,
             std::span<double> out) {
  scratch.clear();
  const auto query = queries.row(q);
  for (std::size_t r = 0; r < refs.rows(); ++r) {
    if (exclude_self && r == q) continue;
    scratch.emplace_back(euclidean(query, refs.row(r)), r);
  }
  std::partial_sort(scratch.begin(), scratch.begin() + k, scratch.end());
  for (std::size_t i = 0; i < k; ++i) out[i] = scratch[i].first;
}

void pairwise_row(const Matrix& points, std::size_t i, Matrix& out) {
  const auto a = points.row(i);
  for (std::size_t j = 0; j < points.rows(); ++j) {
    out(i, j) = squared_euclidean(a, points.row(j));
  }
}

void gaussian_row(const Matrix& squared, double denom, std::size_t i,
                  Matrix& out) {
  for (std::size_t j = 0; j < squared.cols(); ++j) {
    out(i, j) = std::exp(-squared(i, j) / denom);
  }
}

void softmax_row(const Matrix& features, const Matrix& weights,
                 std::span<const double> bias, std::size_t r, Matrix& out) {
  const auto x = features.row(r);
  auto p = out.row(r);
  double max_logit = -INFINITY;
  for (std::size_t k = 0; k < weights.rows(); ++k) {
    double z = bias[k];
    const auto w = weights.row(k);
    for (std::size_t c = 0; c < x.size(); ++c) z += w[c] * x[c];
    p[k] = z;
    max_logit = std::max(max_logit, z);
  }
  double total = 0.0;
  for (double& v : p) {
    v = std::exp(v - max_logit);
    total += v;
  }
  for (double& v : p) v /= total;
}

double row_dot(const Matrix& matrix, std::span<const double> values,
               std::size_t r) {
  double s = 0.0;
  const auto row = matrix.row(r);
  for (std::size_t c = 0; c < row.size(); ++c) s += values[c] * row[c];
  return s;
}

void check_softmax_args(const Matrix& features, const Matrix& weights,
                        std::span<const double> bias) {
  if (features.cols() != weights.cols()) {
    throw DimensionError("feature dimension " +
                         std::to_string(features.cols()) +
                         " != model dimension " +
                         std::to_string(weights.cols()));
  }
  if (bias.size() != weights.rows()) {
    throw DimensionError("bias length does not match class count");
  }
}

}  // namespace

double squared_euclidean(std::span<const double> a,
                         std::span<const double> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double d = a[c] - b[c];
    s += d * d;
  }
  return s;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_euclidean(a, b));
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Matrix knn_distances(const Matrix& queries, const Matrix& refs, std::size_t k,
                     bool exclude_self) {
  check_knn_args(queries, refs, k, exclude_self);
  Matrix out(queries.rows(), k);
#pragma omp parallel
  {
    std::vector<std::pair<double, std::size_t>> scratch;
    scratch.reserve(refs.rows());
#pragma omp for schedule(static)
    for (std::size_t q = 0; q < queries.rows(); ++q) {
      knn_row(queries, refs, k, exclude_self, q, scratch, out.row(q));
    }
  }
  return out;
}

Matrix pairwise_squared_distances(const Matrix& points) {
  Matrix out(points.rows(), points.rows());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < points.rows(); ++i) pairwise_row(points, i, out);
  return out;
}

Matrix gaussian_from_squared(const Matrix& squared, double sigma) {
  Matrix out(squared.rows(), squared.cols());
  const double denom = 2.0 * sigma * sigma;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < squared.rows(); ++i) {
    gaussian_row(squared, denom, i, out);
  }
  return out;
}

Matrix affine_softmax(const Matrix& features, const Matrix& weights,
                      std::span<const double> bias) {
  check_softmax_args(features, weights, bias);
  Matrix out(features.rows(), weights.rows());
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < features.rows(); ++r) {
    softmax_row(features, weights, bias, r, out);
  }
  return out;
}

std::vector<double> weighted_row_sums(const Matrix& matrix,
                                      std::span<const double> values) {
  if (values.size() != matrix.cols()) {
    throw DimensionError("weight vector length does not match matrix");
  }
  std::vector<double> out(matrix.rows());
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out[r] = row_dot(matrix, values, r);
  }
  return out;
}

namespace serial {

Matrix knn_distances(const Matrix& queries, const Matrix& refs, std::size_t k,
                     bool exclude_self) {
  check_knn_args(queries, refs, k, exclude_self);
  Matrix out(queries.rows(), k);
  std::vector<std::pair<double, std::size_t>> scratch;
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    knn_row(queries, refs, k, exclude_self, q, scratch, out.row(q));
  }
  return out;
}

Matrix pairwise_squared_distances(const Matrix& points) {
  Matrix out(points.rows(), points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i) pairwise_row(points, i, out);
  return out;
}

Matrix gaussian_from_squared(const Matrix& squared, double sigma) {
  Matrix out(squared.rows(), squared.cols());
  const double denom = 2.0 * sigma * sigma;
  for (std::size_t i = 0; i < squared.rows(); ++i) {
    gaussian_row(squared, denom, i, out);
  }
  return out;
}

Matrix affine_softmax(const Matrix& features, const Matrix& weights,
                      std::span<const double> bias) {
  check_softmax_args(features, weights, bias);
  Matrix out(features.rows(), weights.rows());
  for (std::size_t r = 0; r < features.rows(); ++r) {
    softmax_row(features, weights, bias, r, out);
  }
  return out;
}

std::vector<double> weighted_row_sums(const Matrix& matrix,
                                      std::span<const double> values) {
  if (values.size() != matrix.cols()) {
    throw DimensionError("weight vector length does not match matrix");
  }
  std::vector<double> out(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out[r] = row_dot(matrix, values, r);
  }
  return out;
}

}  // namespace serial

}  // namespace libags::kernels
