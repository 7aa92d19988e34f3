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

#include "libags/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "libags/error.hpp"
#include "libags/rng.hpp"
#include "libags/stats.hpp"
#include "textio.hpp"

namespace libags {

namespace {

// Real rows plus extra raw rows with distribution targets.
LogisticModel fit_augmented(const LabeledDataset& real,
                            const std::optional<FeatureMatrix>& extra,
                            const Matrix& extra_targets,
                            const PipelineConfig& config) {
  const std::size_t kc = real.n_classes;
  const std::size_t n = real.size();
  FeatureMatrix x = extra ? real.features.vstack(*extra) : real.features;
  Matrix targets(x.n_rows(), kc);
  const Matrix hard = one_hot(real.labels, kc);
  std::copy(hard.values().begin(), hard.values().end(),
            targets.values().begin());
  for (std::size_t i = 0; i < extra_targets.rows(); ++i) {
    const auto src = extra_targets.row(i);
    std::copy(src.begin(), src.end(), targets.row(n + i).begin());
  }
  const auto encoder = make_encoder(config, real.features.n_cols());
  return fit_logistic_soft(represent(encoder, x), targets,
                           config.logistic_options());
}

LogisticModel fit_with_candidates(const LabeledDataset& real,
                                  const CandidatePool& pool,
                                  std::span<const std::size_t> picks,
                                  const PipelineConfig& config) {
  if (picks.empty()) return fit_augmented(real, std::nullopt, Matrix(), config);
  std::vector<ClassIndex> labels;
  for (std::size_t j : picks) labels.push_back(pool.proposed_labels[j]);
  return fit_augmented(real, pool.features.select_rows(picks),
                       one_hot(labels, real.n_classes), config);
}

std::vector<std::size_t> random_subset(std::size_t m, std::size_t count,
                                       Rng& rng) {
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(m - i);
    std::swap(order[i], order[j]);
  }
  order.resize(count);
  return order;
}

LogisticModel fit_noise(const LabeledDataset& real, std::size_t count,
                        const PipelineConfig& config, std::uint64_t seed) {
  if (count == 0) return fit_augmented(real, std::nullopt, Matrix(), config);
  const std::size_t n = real.size();
  const std::size_t d = real.features.n_cols();
  std::vector<double> scale(d);
  for (std::size_t f = 0; f < d; ++f) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = real.features(i, f);
    scale[f] = 0.1 * sample_std(col);
  }
  Rng rng(seed, streams::kNoiseBaseline);
  Matrix x(count, d);
  std::vector<ClassIndex> labels(count);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t i = rng.below(n);
    labels[s] = real.labels[i];
    for (std::size_t f = 0; f < d; ++f) {
      x(s, f) = real.features(i, f) + rng.normal(0.0, scale[f]);
    }
  }
  return fit_augmented(real, FeatureMatrix(std::move(x)),
                       one_hot(labels, real.n_classes), config);
}

std::vector<std::size_t> top_entropy(std::span<const ScoreRecord> scores,
                                     std::size_t count) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a].entropy > scores[b].entropy;
                   });
  order.resize(count);
  return order;
}

void evaluate(const LogisticModel& model, const TwoMoons& data,
              const PipelineConfig& config, BenchResult& out) {
  const auto encoder = make_encoder(config, data.test.features.n_cols());
  const FeatureMatrix x = represent(encoder, data.test.features);
  const Matrix proba = predict_proba(model, x);
  std::vector<ClassIndex> predicted(proba.rows());
  std::vector<double> p1(proba.rows());
  for (std::size_t i = 0; i < proba.rows(); ++i) {
    const auto row = proba.row(i);
    predicted[i] = static_cast<ClassIndex>(
        std::max_element(row.begin(), row.end()) - row.begin());
    p1[i] = row[1];
  }
  out.accuracy.push_back(accuracy(predicted, data.test.labels));
  out.auroc.push_back(auroc(p1, data.test.labels));
}

}  // namespace

PipelineConfig bench_default_config() {
  PipelineConfig c;
  c.representation = "rff";
  return c;
}

std::vector<BenchResult> run_bench(std::span<const std::string> methods,
                                   std::span<const std::uint64_t> seeds,
                                   const PipelineConfig& config,
                                   const TwoMoonsConfig& data) {
  for (const std::string& m : methods) {
    if (std::find(kBenchMethods.begin(), kBenchMethods.end(), m) ==
        kBenchMethods.end()) {
      throw ValidationError("unknown bench method '" + m +
                            "' (expected erm, random, noise, "
                            "uncertainty_only or libags)");
    }
  }
  std::vector<BenchResult> results(methods.size());
  for (std::size_t k = 0; k < methods.size(); ++k) results[k].method = methods[k];

  for (std::uint64_t seed : seeds) {
    TwoMoonsConfig dc = data;
    dc.seed = seed;
    const TwoMoons moons = make_two_moons(dc);
    PipelineConfig pc = config;
    pc.seed = seed;
    const std::size_t n = moons.train.size();

    const SelectionReport report = run_selection(moons.train, moons.candidates, pc);
    const std::size_t m_hat = report.m_hat;

    for (BenchResult& res : results) {
      LogisticModel model;
      std::size_t added = m_hat;
      if (res.method == "erm") {
        added = 0;
        model = fit_with_candidates(moons.train, moons.candidates, {}, pc);
      } else if (res.method == "libags") {
        model = train_final(moons.train, report, moons.candidates, pc);
      } else if (res.method == "random") {
        Rng rng(seed, streams::kRandomBaseline);
        const auto picks = random_subset(moons.candidates.size(), m_hat, rng);
        model = fit_with_candidates(moons.train, moons.candidates, picks, pc);
      } else if (res.method == "noise") {
        model = fit_noise(moons.train, m_hat, pc, seed);
      } else {
        const auto picks = top_entropy(report.scores, m_hat);
        model = fit_with_candidates(moons.train, moons.candidates, picks, pc);
      }
      res.seeds.push_back(seed);
      res.m_hat.push_back(added);
      res.train_size.push_back(n + added);
      evaluate(model, moons, pc, res);
    }
  }
  for (BenchResult& res : results) {
    res.accuracy_mean = mean(res.accuracy);
    res.accuracy_std = sample_std(res.accuracy);
    res.auroc_mean = mean(res.auroc);
    res.auroc_std = sample_std(res.auroc);
  }
  return results;
}

double auroc(std::span<const double> scores, std::span<const ClassIndex> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionError("auroc needs one label per score");
  }
  std::size_t pos = 0;
  for (ClassIndex y : labels) {
    if (y > 1) throw ValidationError("auroc labels must be 0 or 1");
    pos += y;
  }
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) {
    throw ValidationError("auroc needs both positive and negative labels");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Tied blocks share the mean of their 1-based ranks.
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) pos_rank_sum += avg;
    }
    i = j;
  }
  const double p = static_cast<double>(pos);
  const double q = static_cast<double>(neg);
  return (pos_rank_sum - 0.5 * p * (p + 1.0)) / (p * q);
}

double accuracy(std::span<const ClassIndex> predicted,
                std::span<const ClassIndex> truth) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw DimensionError("accuracy needs equal, non-empty label vectors");
  }
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hit += predicted[i] == truth[i];
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

void export_boundary_grid(const LogisticModel& model,
                          const std::optional<RffEncoder>& encoder,
                          const Box& bounds, std::size_t resolution,
                          const std::filesystem::path& path) {
  if (resolution < 2) throw PreconditionError("grid resolution must be >= 2");
  if (model.n_classes < 2) throw PreconditionError("grid needs two classes");
  const double steps = static_cast<double>(resolution - 1);
  Matrix grid(resolution * resolution, 2);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x1 =
        bounds.x_min + (bounds.x_max - bounds.x_min) * static_cast<double>(i) / steps;
    for (std::size_t j = 0; j < resolution; ++j) {
      const double x2 = bounds.y_min +
                        (bounds.y_max - bounds.y_min) * static_cast<double>(j) / steps;
      grid(i * resolution + j, 0) = x1;
      grid(i * resolution + j, 1) = x2;
    }
  }
  const FeatureMatrix points(grid);
  const Matrix proba = predict_proba(model, represent(encoder, points));
  std::ostringstream out;
  out << "x1,x2,p_class1\n";
  for (std::size_t r = 0; r < proba.rows(); ++r) {
    out << format_double(grid(r, 0)) << ',' << format_double(grid(r, 1)) << ','
        << format_double(proba(r, 1)) << '\n';
  }
  detail::write_text_file(path, out.str());
}

void write_bench_csv(const std::filesystem::path& path,
                     std::span<const BenchResult> results) {
  std::ostringstream out;
  out << "method,seed,accuracy,auroc,m_hat,train_size\n";
  for (const BenchResult& r : results) {
    for (std::size_t s = 0; s < r.seeds.size(); ++s) {
      out << r.method << ',' << r.seeds[s] << ',' << format_double(r.accuracy[s])
          << ',' << format_double(r.auroc[s]) << ',' << r.m_hat[s] << ','
          << r.train_size[s] << '\n';
    }
  }
  detail::write_text_file(path, out.str());
}

std::string bench_summary(std::span<const BenchResult> results) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-18s %8s %8s %8s %8s %8s\n", "method",
                "acc", "acc_sd", "auroc", "auroc_sd", "m_hat");
  out << line;
  for (const BenchResult& r : results) {
    std::vector<double> m(r.m_hat.begin(), r.m_hat.end());
    std::snprintf(line, sizeof line, "%-18s %8.4f %8.4f %8.4f %8.4f %8.1f\n",
                  r.method.c_str(), r.accuracy_mean, r.accuracy_std,
                  r.auroc_mean, r.auroc_std, m.empty() ? 0.0 : mean(m));
    out << line;
  }
  return out.str();
}

}  // namespace libags
