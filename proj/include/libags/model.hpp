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

#ifndef LIBAGS_MODEL_HPP_
#define LIBAGS_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "libags/matrix.hpp"

namespace libags {

// Fixed random Fourier feature map
//   z = sqrt(2 / d_out) * [cos(x W), sin(x W)],
// with W (d_in x d_out/2) drawn i.i.d. N(0, 1/bandwidth^2) from `seed`.
// Every encoded row has squared norm exactly 1 up to rounding.
class RffEncoder {
 public:
  RffEncoder(std::size_t input_dim, std::size_t output_dim, double bandwidth,
             std::uint64_t seed);

  std::size_t input_dim() const { return projection_.rows(); }
  std::size_t output_dim() const { return 2 * projection_.cols(); }
  double bandwidth() const { return bandwidth_; }
  std::uint64_t seed() const { return seed_; }
  const Matrix& projection() const { return projection_; }

  FeatureMatrix encode(const FeatureMatrix& x) const;

 private:
  Matrix projection_;
  double bandwidth_;
  std::uint64_t seed_;
};

// Multinomial logistic regression: softmax(W x + b).
struct LogisticModel {
  Matrix weights;             // n_classes x d
  std::vector<double> bias;   // n_classes
  double l2 = 0.0;
  std::size_t n_classes = 0;

  std::size_t input_dim() const { return weights.cols(); }

  // Zero weights and bias; predicts the uniform distribution.
  static LogisticModel zeros(std::size_t n_classes, std::size_t dim,
                             double l2);
};

struct LogisticOptions {
  double l2 = 1e-4;
  int epochs = 2000;
  double lr = 0.5;
};

// Full-batch gradient descent from zero weights on
//   (1/N) sum_i -sum_k y_ik ln p_ik + (l2/2) ||W||_F^2
// (bias unregularized). Deterministic: no random initialization and a fixed
// summation order. The loss is non-increasing whenever
// lr <= logistic_step_bound(features, l2). Throws DivergenceError naming the
// epoch if the loss becomes non-finite. If `loss_trace` is given it receives
// the loss at the start of every epoch.
LogisticModel fit_logistic(const FeatureMatrix& features,
                           std::span<const ClassIndex> labels,
                           std::size_t n_classes,
                           const LogisticOptions& options,
                           std::vector<double>* loss_trace = nullptr);

// Same objective with distribution targets (rows of `targets` sum to 1).
LogisticModel fit_logistic_soft(const FeatureMatrix& features,
                                const Matrix& targets,
                                const LogisticOptions& options,
                                std::vector<double>* loss_trace = nullptr);

// 1 / L where L = 0.5 * mean_i(||x_i||^2 + 1) + l2 bounds the curvature of
// the objective above (the softmax Jacobian has spectral norm <= 1/2).
double logistic_step_bound(const FeatureMatrix& features, double l2);

Matrix predict_proba(const LogisticModel& model, const FeatureMatrix& features);

// Index of the largest probability in each row (lowest index on ties).
std::vector<ClassIndex> predict_class(const LogisticModel& model,
                                      const FeatureMatrix& features);

Matrix one_hot(std::span<const ClassIndex> labels, std::size_t n_classes);

struct LossAndGradient {
  double loss = 0.0;
  Matrix grad_weights;
  std::vector<double> grad_bias;
};

// Objective value and analytic gradient at (weights, bias).
LossAndGradient cross_entropy(const FeatureMatrix& features,
                              const Matrix& targets, const Matrix& weights,
                              std::span<const double> bias, double l2);

// JSON: {"weights": [[...]], "bias": [...], "l2": x, "n_classes": k} plus an
// optional "encoder" object {"type": "rff", "input_dim", "output_dim",
// "bandwidth", "seed"} so the representation can be rebuilt.
struct SavedModel {
  LogisticModel model;
  std::optional<RffEncoder> encoder;
};

std::string model_to_json(const LogisticModel& model,
                          const RffEncoder* encoder = nullptr);
SavedModel model_from_json(const std::string& text);
void save_model_json(const std::filesystem::path& path,
                     const LogisticModel& model,
                     const RffEncoder* encoder = nullptr);
SavedModel load_model_json(const std::filesystem::path& path);

}  // namespace libags

#endif  // LIBAGS_MODEL_HPP_
