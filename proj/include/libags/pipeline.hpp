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

#ifndef LIBAGS_PIPELINE_HPP_
#define LIBAGS_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "libags/data.hpp"
#include "libags/label.hpp"
#include "libags/matrix.hpp"
#include "libags/model.hpp"
#include "libags/score.hpp"
#include "libags/select.hpp"

namespace libags {

inline constexpr const char* kReportFormat = "libags-report/1";

struct PipelineConfig {
  double tau_quantile = 0.25;
  std::size_t knn_k = 10;
  std::optional<double> kernel_bandwidth;   // empty: median heuristic
  double coverage_ratio = 1.0;
  std::optional<std::size_t> n_regions;     // empty: default_region_count
  std::optional<std::size_t> max_budget;    // empty: no cap
  // "identity" treats input features as the representation; "rff" maps
  // them through an RffEncoder seeded from `seed`.
  std::string representation = "identity";
  std::size_t rff_dim = 200;
  double rff_bandwidth = 1.0;
  // Dimension used in the kNN density formula. Empty: the raw input feature
  // dimension, which keeps densities meaningful when an RFF embedding lifts
  // low-dimensional data into many coordinates.
  std::optional<std::size_t> density_dim;
  double l2 = 1e-4;
  int epochs = 2000;
  double lr = 0.5;
  std::uint64_t seed = 0;

  // Throws PreconditionError naming the first field out of range.
  void validate() const;
  LogisticOptions logistic_options() const { return {l2, epochs, lr}; }
};

// JSON object with any subset of the field names above. Unknown keys raise
// SchemaError, bad types ParseError. "median", "auto" and "none" select the
// empty optionals.
PipelineConfig parse_config(std::string_view json_text);
PipelineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const PipelineConfig& config);

// The representation map for `input_dim`-column inputs; empty for identity.
std::optional<RffEncoder> make_encoder(const PipelineConfig& config,
                                       std::size_t input_dim);
FeatureMatrix represent(const std::optional<RffEncoder>& encoder,
                        const FeatureMatrix& x);

// Probability matrices supplied by an external scoring model instead of the
// internal fit. `real` is optional and only validated.
struct ExternalProba {
  std::optional<Matrix> real;
  Matrix candidates;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

// Steps up to the candidate values v = G b.
struct ScoredPool {
  std::vector<ScoreRecord> scores;
  Matrix proba;  // candidate class probabilities
  double tau = 0.0;
  double lambda = 0.0;  // 0 when no candidate has positive importance
  bool no_positive_importance = false;
  std::optional<RffEncoder> encoder;
  FeatureMatrix real_repr;
  FeatureMatrix candidate_repr;
  std::vector<StageTiming> timings;
};

struct SelectionReport {
  std::vector<std::size_t> selected;
  std::vector<std::string> selected_ids;
  std::vector<SoftLabel> soft_labels;
  std::size_t m_hat = 0;
  double eta = 0.0;
  double lambda = 0.0;
  double tau = 0.0;
  double kernel_bandwidth = 0.0;
  std::size_t n_regions = 0;
  std::vector<ScoreRecord> scores;
  std::vector<GainStep> gains_log;
  std::optional<StopReason> stop_reason;  // empty when scoring found nothing
  std::vector<std::string> warnings;
  PipelineConfig config;
  std::vector<StageTiming> timings;
};

ScoredPool score_pool(const LabeledDataset& real,
                      const CandidatePool& candidates,
                      const PipelineConfig& config,
                      const std::optional<ExternalProba>& external = {});

// Scoring, allocation, threshold, greedy selection and soft labels. All
// candidates with zero importance give an empty selection and a warning, not
// an error.
SelectionReport run_selection(const LabeledDataset& real,
                              const CandidatePool& candidates,
                              const PipelineConfig& config,
                              const std::optional<ExternalProba>& external = {});

// Final classifier on the real rows (one-hot) followed by the selected
// candidates (soft labels), in the configured representation.
LogisticModel train_final(const LabeledDataset& real,
                          const SelectionReport& report,
                          const CandidatePool& candidates,
                          const PipelineConfig& config);

// Versioned JSON. Timings go under "metadata" only when requested.
std::string report_to_json(const SelectionReport& report,
                           bool include_timings);

// Per-candidate score table: index, source_id, then the ScoreRecord fields.
void write_scores_csv(const std::filesystem::path& path,
                      const CandidatePool& candidates,
                      std::span<const ScoreRecord> scores);
// step, candidate, facility_gain, region_gain, combined_gain
void write_gains_csv(const std::filesystem::path& path,
                     std::span<const GainStep> gains);

}  // namespace libags

#endif  // LIBAGS_PIPELINE_HPP_
