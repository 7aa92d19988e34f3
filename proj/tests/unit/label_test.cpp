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


#include <vector>

#include "doctest.h"
#include "libags/error.hpp"
#include "libags/label.hpp"
#include "libags/rng.hpp"
#include "oracles.hpp"

using namespace libags;
using V = std::vector<double>;

TEST_CASE("soft label limits and arithmetic") {
  const V pi = {0.6, 0.4};
  CHECK(soft_label(0, pi, 0.0).distribution == V{1.0, 0.0});
  CHECK(soft_label(0, pi, 1.0).distribution == pi);
  const V y = soft_label(0, pi, 0.5).distribution;
  CHECK(y[0] == doctest::Approx(0.8));
  CHECK(y[1] == doctest::Approx(0.2));
  CHECK_THROWS_AS(soft_label(2, pi, 0.5), ValidationError);
  CHECK_THROWS_AS(soft_label(0, pi, 1.5), PreconditionError);
}

TEST_CASE("soft labels are distributions") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 2 + rng.below(5);
    const V pi = oracle::random_distribution(rng, k);
    const V y = soft_label(rng.below(k), pi, rng.uniform()).distribution;
    double s = 0.0;
    for (double v : y) {
      CHECK(v >= 0.0);
      s += v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bound check cases") {
  const V e = {0.0, 1.0, 0.0};
  const V pi = {0.2, 0.5, 0.3};
  const V y = soft_label(1, pi, 0.4).distribution;
  const auto [lhs0, rhs0] = soft_label_bound_check(e, pi, y, 0.4);
  CHECK(lhs0 == doctest::Approx(0.0));
  CHECK(lhs0 <= rhs0);
  const V rho = {0.1, 0.1, 0.8};
  const auto [lhs1, rhs1] = soft_label_bound_check(e, pi, rho, 0.0);
  CHECK(lhs1 == rhs1);
  CHECK_THROWS_AS(soft_label_bound_check(e, V{0.5, 0.5}, rho, 0.2), DimensionError);
}

TEST_CASE("bound holds on random triples") {
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t k = 2 + rng.below(4);
    V e(k, 0.0);
    e[rng.below(k)] = 1.0;
    const auto [lhs, rhs] =
        soft_label_bound_check(e, oracle::random_distribution(rng, k),
                               oracle::random_distribution(rng, k), rng.uniform());
    CHECK(lhs <= rhs + 1e-12);
  }
}
