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

#ifndef LIBAGS_SCORE_HPP_
#define LIBAGS_SCORE_HPP_

#include <span>

namespace libags {

// Per-candidate scoring quantities.
struct ScoreRecord {
  double margin = 0.0;           // top-two probability gap, [0, 1]
  double boundary_weight = 0.0;  // exp(-margin^2 / (2 tau^2)), (0, 1]
  double entropy = 0.0;          // predictive entropy in nats
  double density = 0.0;          // kNN estimate of the real-data density
  double support = 0.0;          // support validity, [0, 1]
  double importance = 0.0;       // boundary_weight * entropy * support
  double gap_score = 0.0;        // allocation score at the solved lambda
  double value = 0.0;            // gap_score * support
};

inline constexpr double kTauFloor = 1e-3;

// pi_(1) - pi_(2) for a probability vector of length >= 2.
double top_two_margin(std::span<const double> pi);

// max(linear_quantile(margins, quantile), kTauFloor).
double select_tau(std::span<const double> margins, double quantile);

double boundary_weight(double delta, double tau);

// -sum p ln p with 0 ln 0 = 0.
double entropy(std::span<const double> pi);

inline double importance(double a_tau, double u, double b) {
  return a_tau * u * b;
}

}  // namespace libags

#endif  // LIBAGS_SCORE_HPP_
