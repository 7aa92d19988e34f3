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

#include "libags/score.hpp"

#include <algorithm>
#include <cmath>

#include "libags/error.hpp"
#include "libags/stats.hpp"

namespace libags {

double top_two_margin(std::span<const double> pi) {
  if (pi.size() < 2) {
    throw PreconditionError("top-two margin needs at least two classes");
  }
  double first = -INFINITY;
  double second = -INFINITY;
  for (double p : pi) {
    if (p > first) {
      second = first;
      first = p;
    } else if (p > second) {
      second = p;
    }
  }
  return std::clamp(first - second, 0.0, 1.0);
}

double select_tau(std::span<const double> margins, double quantile) {
  if (margins.empty()) throw PreconditionError("select_tau needs margins");
  if (!(quantile > 0.0 && quantile < 1.0)) {
    throw PreconditionError("tau quantile must lie in (0, 1)");
  }
  return std::max(linear_quantile(margins, quantile), kTauFloor);
}

double boundary_weight(double delta, double tau) {
  if (!(tau > 0.0)) throw PreconditionError("tau must be positive");
  return std::exp(-(delta * delta) / (2.0 * tau * tau));
}

double entropy(std::span<const double> pi) {
  double u = 0.0;
  for (double p : pi) {
    if (p > 0.0) u -= p * std::log(p);
  }
  return std::max(u, 0.0);
}

}  // namespace libags
