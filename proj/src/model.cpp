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

#include "libags/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "libags/error.hpp"
#include "libags/kernels.hpp"
#include "libags/rng.hpp"

namespace libags {

using nlohmann::json;

RffEncoder::RffEncoder(std::size_t input_dim, std::size_t output_dim,
                       double bandwidth, std::uint64_t seed)
    : bandwidth_(bandwidth), seed_(seed) {
  if (input_dim < 1) throw PreconditionError("RFF input dimension must be >= 1");
  if (output_dim < 2 || output_dim % 2 != 0) {
    throw PreconditionError("RFF output dimension must be even and >= 2");
  }
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw PreconditionError("RFF bandwidth must be positive");
  }
  projection_ = Matrix(input_dim, output_dim / 2);
  Rng rng(seed, streams::kRff);
  for (double& w : projection_.values()) w = rng.normal() / bandwidth;
}

FeatureMatrix RffEncoder::encode(const FeatureMatrix& x) const {
  if (x.n_cols() != input_dim()) {
    throw DimensionError("RFF encoder expects " + std::to_string(input_dim()) +
                         " input columns, got " + std::to_string(x.n_cols()));
  }
  const std::size_t half = projection_.cols();
  const double scale = std::sqrt(2.0 / static_cast<double>(2 * half));
  Matrix out(x.n_rows(), 2 * half);
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < x.n_rows(); ++r) {
    const auto in = x.row(r);
    auto z = out.row(r);
    for (std::size_t f = 0; f < half; ++f) {
      double proj = 0.0;
      for (std::size_t c = 0; c < in.size(); ++c) {
        proj += in[c] * projection_(c, f);
      }
      z[f] = scale * std::cos(proj);
      z[half + f] = scale * std::sin(proj);
    }
  }
  return FeatureMatrix(std::move(out));
}

LogisticModel LogisticModel::zeros(std::size_t n_classes, std::size_t dim,
                                   double l2) {
  return LogisticModel{Matrix(n_classes, dim), std::vector<double>(n_classes),
                       l2, n_classes};
}

Matrix one_hot(std::span<const ClassIndex> labels, std::size_t n_classes) {
  Matrix out(labels.size(), n_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= n_classes) {
      throw ValidationError("label " + std::to_string(labels[i]) +
                            " out of range");
    }
    out(i, labels[i]) = 1.0;
  }
  return out;
}

LossAndGradient cross_entropy(const FeatureMatrix& features,
                              const Matrix& targets, const Matrix& weights,
                              std::span<const double> bias, double l2) {
  const std::size_t n = features.n_rows();
  const std::size_t d = features.n_cols();
  const std::size_t k_classes = weights.rows();
  if (weights.cols() != d || bias.size() != k_classes ||
      targets.rows() != n || targets.cols() != k_classes) {
    throw DimensionError("cross-entropy arguments have inconsistent shapes");
  }
  LossAndGradient out{0.0, Matrix(k_classes, d),
                      std::vector<double>(k_classes, 0.0)};
  std::vector<double> logits(k_classes);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = features.row(i);
    const auto y = targets.row(i);
    double max_logit = -INFINITY;
    for (std::size_t k = 0; k < k_classes; ++k) {
      double z = bias[k];
      const auto w = weights.row(k);
      for (std::size_t c = 0; c < d; ++c) z += w[c] * x[c];
      logits[k] = z;
      max_logit = std::max(max_logit, z);
    }
    double sum_exp = 0.0;
    for (double z : logits) sum_exp += std::exp(z - max_logit);
    const double log_norm = max_logit + std::log(sum_exp);
    for (std::size_t k = 0; k < k_classes; ++k) {
      const double log_p = logits[k] - log_norm;
      out.loss -= y[k] * log_p;
      const double diff = std::exp(log_p) - y[k];
      out.grad_bias[k] += diff;
      auto g = out.grad_weights.row(k);
      for (std::size_t c = 0; c < d; ++c) g[c] += diff * x[c];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.loss *= inv_n;
  for (double& g : out.grad_bias) g *= inv_n;
  double sq_norm = 0.0;
  for (std::size_t i = 0; i < weights.values().size(); ++i) {
    const double w = weights.values()[i];
    sq_norm += w * w;
    double& g = out.grad_weights.values()[i];
    g = g * inv_n + l2 * w;
  }
  out.loss += 0.5 * l2 * sq_norm;
  return out;
}

double logistic_step_bound(const FeatureMatrix& features, double l2) {
  double total = 0.0;
  for (std::size_t i = 0; i < features.n_rows(); ++i) {
    for (double v : features.row(i)) total += v * v;
    total += 1.0;
  }
  const double curvature =
      0.5 * total / static_cast<double>(features.n_rows()) + l2;
  return 1.0 / curvature;
}

LogisticModel fit_logistic_soft(const FeatureMatrix& features,
                                const Matrix& targets,
                                const LogisticOptions& options,
                                std::vector<double>* loss_trace) {
  if (options.epochs < 1) throw PreconditionError("epochs must be >= 1");
  if (!(options.lr > 0.0)) throw PreconditionError("lr must be positive");
  if (!(options.l2 >= 0.0)) throw PreconditionError("l2 must be >= 0");
  if (targets.rows() != features.n_rows() || targets.cols() < 2) {
    throw DimensionError("targets must have one row per sample and >= 2 "
                         "classes");
  }
  validate_probability_rows(targets, 1e-9);

  LogisticModel model =
      LogisticModel::zeros(targets.cols(), features.n_cols(), options.l2);
  if (loss_trace) loss_trace->clear();
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    const LossAndGradient step = cross_entropy(
        features, targets, model.weights, model.bias, options.l2);
    if (!std::isfinite(step.loss)) {
      throw DivergenceError(
          "logistic regression diverged at epoch " + std::to_string(epoch),
          epoch);
    }
    if (loss_trace) loss_trace->push_back(step.loss);
    auto& w = model.weights.values();
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] -= options.lr * step.grad_weights.values()[i];
    }
    for (std::size_t k = 0; k < model.bias.size(); ++k) {
      model.bias[k] -= options.lr * step.grad_bias[k];
    }
  }
  return model;
}

LogisticModel fit_logistic(const FeatureMatrix& features,
                           std::span<const ClassIndex> labels,
                           std::size_t n_classes,
                           const LogisticOptions& options,
                           std::vector<double>* loss_trace) {
  if (labels.size() != features.n_rows()) {
    throw DimensionError("label count does not match feature rows");
  }
  if (n_classes < 2) throw PreconditionError("n_classes must be >= 2");
  return fit_logistic_soft(features, one_hot(labels, n_classes), options,
                           loss_trace);
}

Matrix predict_proba(const LogisticModel& model,
                     const FeatureMatrix& features) {
  return kernels::affine_softmax(features.matrix(), model.weights, model.bias);
}

std::vector<ClassIndex> predict_class(const LogisticModel& model,
                                      const FeatureMatrix& features) {
  const Matrix proba = predict_proba(model, features);
  std::vector<ClassIndex> out(proba.rows());
  for (std::size_t r = 0; r < proba.rows(); ++r) {
    const auto p = proba.row(r);
    out[r] = static_cast<ClassIndex>(std::max_element(p.begin(), p.end()) -
                                     p.begin());
  }
  return out;
}

std::string model_to_json(const LogisticModel& model,
                          const RffEncoder* encoder) {
  json weights = json::array();
  for (std::size_t k = 0; k < model.weights.rows(); ++k) {
    const auto row = model.weights.row(k);
    weights.push_back(std::vector<double>(row.begin(), row.end()));
  }
  json doc = {{"weights", weights},
              {"bias", model.bias},
              {"l2", model.l2},
              {"n_classes", model.n_classes}};
  if (encoder) {
    doc["encoder"] = {{"type", "rff"},
                      {"input_dim", encoder->input_dim()},
                      {"output_dim", encoder->output_dim()},
                      {"bandwidth", encoder->bandwidth()},
                      {"seed", encoder->seed()}};
  }
  return doc.dump(2) + "\n";
}

SavedModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
  try {
    for (const char* key : {"weights", "bias", "l2", "n_classes"}) {
      if (!doc.contains(key)) {
        throw SchemaError(std::string("model JSON missing '") + key + "'");
      }
    }
    const auto rows = doc.at("weights").get<std::vector<std::vector<double>>>();
    const auto n_classes = doc.at("n_classes").get<std::size_t>();
    if (rows.size() != n_classes || rows.empty() || rows[0].empty()) {
      throw SchemaError("model weights must have n_classes non-empty rows");
    }
    Matrix weights(n_classes, rows[0].size());
    for (std::size_t k = 0; k < n_classes; ++k) {
      if (rows[k].size() != weights.cols()) {
        throw SchemaError("model weight rows have unequal lengths");
      }
      std::copy(rows[k].begin(), rows[k].end(), weights.row(k).begin());
    }
    LogisticModel model{std::move(weights),
                        doc.at("bias").get<std::vector<double>>(),
                        doc.at("l2").get<double>(), n_classes};
    if (model.bias.size() != n_classes) {
      throw SchemaError("model bias length must equal n_classes");
    }
    std::optional<RffEncoder> encoder;
    if (doc.contains("encoder")) {
      const auto& e = doc.at("encoder");
      if (e.at("type").get<std::string>() != "rff") {
        throw SchemaError("unknown encoder type");
      }
      encoder.emplace(e.at("input_dim").get<std::size_t>(),
                      e.at("output_dim").get<std::size_t>(),
                      e.at("bandwidth").get<double>(),
                      e.at("seed").get<std::uint64_t>());
      if (encoder->output_dim() != model.input_dim()) {
        throw DimensionError("encoder output does not match model input");
      }
    }
    return SavedModel{std::move(model), std::move(encoder)};
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model JSON: ") + e.what());
  }
}

void save_model_json(const std::filesystem::path& path,
                     const LogisticModel& model, const RffEncoder* encoder) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << model_to_json(model, encoder);
  if (!out) throw IoError("write failure on " + path.string());
}

SavedModel load_model_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return model_from_json(text.str());
}

}  // namespace libags
