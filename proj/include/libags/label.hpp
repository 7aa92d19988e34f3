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

#ifndef LIBAGS_LABEL_HPP_
#define LIBAGS_LABEL_HPP_

#include <span>
#include <utility>
#include <vector>

#include "libags/matrix.hpp"

namespace libags {

struct SoftLabel {
  std::vector<double> distribution;
};

// (1 - a_tau) e_c + a_tau pi. Near the boundary (a_tau -> 1) the label leans
// on the scoring model, far from it on the generator's class.
SoftLabel soft_label(ClassIndex proposed_class, std::span<const double> pi,
                     double a_tau);

// Returns (||y - rho||_1, (1 - a) ||e_c - rho||_1 + a ||pi - rho||_1) where
// y = (1 - a) e_c + a pi. The first never exceeds the second.
std::pair<double, double> soft_label_bound_check(std::span<const double> e_c,
                                                 std::span<const double> pi,
                                                 std::span<const double> rho,
                                                 double a_tau);

}  // namespace libags

#endif  // LIBAGS_LABEL_HPP_
