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

#include "libags/label.hpp"

#include <cmath>
#include <string>

#include "libags/error.hpp"

namespace libags {

namespace {

double l1(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

void check_weight(double a_tau) {
  if (!(a_tau >= 0.0 && a_tau <= 1.0)) {
    throw PreconditionError("boundary weight must lie in [0, 1]");
  }
}

}  // namespace

SoftLabel soft_label(ClassIndex proposed_class, std::span<const double> pi,
                     double a_tau) {
  if (proposed_class >= pi.size()) {
    throw ValidationError("proposed class " + std::to_string(proposed_class) +
                          " out of range for " + std::to_string(pi.size()) +
                          " classes");
  }
  check_weight(a_tau);
  SoftLabel out;
  out.distribution.resize(pi.size());
  for (std::size_t k = 0; k < pi.size(); ++k) {
    const double e = k == proposed_class ? 1.0 : 0.0;
    out.distribution[k] = (1.0 - a_tau) * e + a_tau * pi[k];
  }
  return out;
}

std::pair<double, double> soft_label_bound_check(std::span<const double> e_c,
                                                 std::span<const double> pi,
                                                 std::span<const double> rho,
                                                 double a_tau) {
  if (pi.size() != e_c.size() || rho.size() != e_c.size()) {
    throw DimensionError("bound check needs vectors of equal length");
  }
  std::vector<double> y(e_c.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    y[k] = (1.0 - a_tau) * e_c[k] + a_tau * pi[k];
  }
  const double lhs = l1(y, rho);
  const double rhs = (1.0 - a_tau) * l1(e_c, rho) + a_tau * l1(pi, rho);
  return {lhs, rhs};
}

}  // namespace libags
