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

#ifndef LIBAGS_KERNELS_HPP_
#define LIBAGS_KERNELS_HPP_

// Data-parallel inner loops. Each kernel has an OpenMP version in
// libags::kernels and a plain loop in libags::kernels::serial. Rows are
// computed independently with the same arithmetic in the same order, so the
// two versions agree bit for bit; the serial ones exist for tests and for the
// benchmark target.

#include <span>

#include "libags/matrix.hpp"

namespace libags::kernels {

// Euclidean distance, summed in coordinate order.
double euclidean(std::span<const double> a, std::span<const double> b);
double squared_euclidean(std::span<const double> a, std::span<const double> b);

// For each query row, the k smallest distances to `refs` in ascending order;
// ties go to the lower reference index. With `exclude_self` the query set is
// the reference set and row i skips reference i.
Matrix knn_distances(const Matrix& queries, const Matrix& refs, std::size_t k,
                     bool exclude_self);

// Full squared-distance matrix between the rows of `points`.
Matrix pairwise_squared_distances(const Matrix& points);

// exp(-d2 / (2 sigma^2)) applied entrywise to a squared-distance matrix.
Matrix gaussian_from_squared(const Matrix& squared, double sigma);

// Row-wise softmax(features * weights^T + bias).
Matrix affine_softmax(const Matrix& features, const Matrix& weights,
                      std::span<const double> bias);

// out[r] = sum_c values[c] * matrix(r, c). `matrix` is square and symmetric
// in practice (the similarity matrix), which makes this the per-candidate
// total facility value sum_u v_u k(u, j).
std::vector<double> weighted_row_sums(const Matrix& matrix,
                                      std::span<const double> values);

namespace serial {

Matrix knn_distances(const Matrix& queries, const Matrix& refs, std::size_t k,
                     bool exclude_self);
Matrix pairwise_squared_distances(const Matrix& points);
Matrix gaussian_from_squared(const Matrix& squared, double sigma);
Matrix affine_softmax(const Matrix& features, const Matrix& weights,
                      std::span<const double> bias);
std::vector<double> weighted_row_sums(const Matrix& matrix,
                                      std::span<const double> values);

}  // namespace serial

// Number of threads OpenMP would use for a parallel region (1 without
// OpenMP).
int max_threads();

}  // namespace libags::kernels

#endif  // LIBAGS_KERNELS_HPP_
