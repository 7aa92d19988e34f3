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

#include "libags/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "libags/error.hpp"

namespace libags {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw DimensionError("matrix storage has " +
                         std::to_string(values_.size()) + " values, expected " +
                         std::to_string(rows_ * cols_));
  }
}

FeatureMatrix::FeatureMatrix(Matrix values) : m_(std::move(values)) {
  if (m_.rows() < 1 || m_.cols() < 1) {
    throw ValidationError("feature matrix needs at least one row and column");
  }
  for (std::size_t r = 0; r < m_.rows(); ++r) {
    for (std::size_t c = 0; c < m_.cols(); ++c) {
      if (!std::isfinite(m_(r, c))) {
        throw ValidationError("non-finite feature at row " +
                              std::to_string(r) + ", column " +
                              std::to_string(c));
      }
    }
  }
}

FeatureMatrix FeatureMatrix::select_rows(
    std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), n_cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= n_rows()) {
      throw PreconditionError("row index " + std::to_string(indices[i]) +
                              " out of range");
    }
    const auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return FeatureMatrix(std::move(out));
}

FeatureMatrix FeatureMatrix::vstack(const FeatureMatrix& other) const {
  if (other.n_cols() != n_cols()) {
    throw DimensionError("cannot stack " + std::to_string(other.n_cols()) +
                         "-column rows under " + std::to_string(n_cols()) +
                         "-column rows");
  }
  std::vector<double> values = m_.values();
  const auto& tail = other.matrix().values();
  values.insert(values.end(), tail.begin(), tail.end());
  return FeatureMatrix(n_rows() + other.n_rows(), n_cols(), std::move(values));
}

void validate_probability_rows(const Matrix& proba, double tol) {
  for (std::size_t r = 0; r < proba.rows(); ++r) {
    double sum = 0.0;
    for (double p : proba.row(r)) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("probability row " + std::to_string(r) +
                              " has an entry outside [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw ValidationError("probability row " + std::to_string(r) +
                            " sums to " + std::to_string(sum));
    }
  }
}

}  // namespace libags
