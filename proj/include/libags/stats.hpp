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

#ifndef LIBAGS_STATS_HPP_
#define LIBAGS_STATS_HPP_

#include <span>
#include <vector>

namespace libags {

// Linear-interpolation quantile: sort, h = (n - 1) q, interpolate between
// floor(h) and ceil(h). q in [0, 1]; throws on empty input.
double linear_quantile(std::span<const double> values, double q);

double mean(std::span<const double> values);

// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_std(std::span<const double> values);

}  // namespace libags

#endif  // LIBAGS_STATS_HPP_
