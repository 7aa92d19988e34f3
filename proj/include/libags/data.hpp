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

#ifndef LIBAGS_DATA_HPP_
#define LIBAGS_DATA_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "libags/matrix.hpp"

namespace libags {

// Real training data: features with 0-based class labels.
struct LabeledDataset {
  LabeledDataset(FeatureMatrix features, std::vector<ClassIndex> labels,
                 std::size_t n_classes);

  FeatureMatrix features;
  std::vector<ClassIndex> labels;
  std::size_t n_classes;

  std::size_t size() const { return labels.size(); }
};

// Generator output: candidate features with the class the generator meant to
// produce, plus an opaque id per row.
struct CandidatePool {
  CandidatePool(FeatureMatrix features, std::vector<ClassIndex> proposed_labels,
                std::vector<std::string> source_ids, std::size_t n_classes);

  FeatureMatrix features;
  std::vector<ClassIndex> proposed_labels;
  std::vector<std::string> source_ids;
  std::size_t n_classes;

  std::size_t size() const { return proposed_labels.size(); }
};

// CSV with a header row: feature columns, then a final `label` column.
LabeledDataset load_labeled_csv(const std::filesystem::path& path,
                                std::size_t n_classes);
void write_labeled_csv(const std::filesystem::path& path,
                       const LabeledDataset& dataset);

// CSV with a header row: feature columns, then `proposed_label`, then an
// optional `source_id`. Missing ids become the row index.
CandidatePool load_candidate_csv(const std::filesystem::path& path,
                                 std::size_t n_classes);
void write_candidate_csv(const std::filesystem::path& path,
                         const CandidatePool& pool);

// Numeric CSV whose header names are ignored. Used for externally supplied
// probability matrices.
Matrix load_numeric_csv(const std::filesystem::path& path);

// 17 significant digits, enough to read back the identical double.
std::string format_double(double value);

struct TwoMoonsConfig {
  std::size_t n_per_class = 300;
  double noise_sd = 0.2;
  double gap_halfwidth = 0.3;
  double gap_center = 0.5;
  std::uint64_t seed = 0;
  // Candidate strata sizes. Boundary and support counts are per class; the
  // off-support count is for the whole pool. Zero means n_per_class / 2.
  std::size_t boundary_per_class = 0;
  std::size_t support_per_class = 0;
  std::size_t off_support = 0;
};

struct TwoMoons {
  LabeledDataset train;
  LabeledDataset test;
  CandidatePool candidates;
};

// Horizontal coordinate where the two half circles interlock. It is the
// default gap_center; the gap is the band |x - gap_center| < gap_halfwidth.
inline constexpr double kTwoMoonsGapCenter = 0.5;

// Two interleaved half circles (class 0 on top, class 1 underneath) with
// Gaussian noise. Training rows inside the gap band are dropped; the test set
// keeps its exact class balance and has no gap. Candidate source ids carry
// the stratum: "boundary-<i>", "support-<i>" or "offsupport-<i>".
TwoMoons make_two_moons(const TwoMoonsConfig& config);

bool in_two_moons_gap(double x, const TwoMoonsConfig& config);

}  // namespace libags

#endif  // LIBAGS_DATA_HPP_
