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

#ifndef LIBAGS_MATRIX_HPP_
#define LIBAGS_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace libags {

using ClassIndex = std::size_t;

// Dense row-major matrix of doubles. Used for probabilities, distances,
// weights and anything else that does not need the feature invariants.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  // Takes ownership of `values`; size must equal rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return values_.empty(); }

  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {values_.data() + r * cols_, cols_};
  }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Validated sample matrix: at least one row and one column, every entry
// finite. Immutable once built.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(Matrix values);
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : FeatureMatrix(Matrix(rows, cols, std::move(values))) {}

  std::size_t n_rows() const { return m_.rows(); }
  std::size_t n_cols() const { return m_.cols(); }
  double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  std::span<const double> row(std::size_t r) const { return m_.row(r); }
  const Matrix& matrix() const { return m_; }

  // Rows `indices` in the given order.
  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;
  // Stacks `other` under this matrix; column counts must agree.
  FeatureMatrix vstack(const FeatureMatrix& other) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  Matrix m_;
};

// Throws ValidationError unless every row is a probability vector: entries
// in [0, 1] summing to one within `tol`.
void validate_probability_rows(const Matrix& proba, double tol = 1e-6);

}  // namespace libags

#endif  // LIBAGS_MATRIX_HPP_
