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


#include <cmath>
#include <set>

#include "doctest.h"
#include "libags/data.hpp"
#include "libags/error.hpp"
#include "libags/matrix.hpp"
#include "testing.hpp"

using namespace libags;

TEST_CASE("labeled csv parses rows and labels") {
  testing::TempDir dir;
  testing::write_file(dir / "a.csv", "x0,x1,label\n1,2,0\n3,4,1\n5,6,0\n");
  const LabeledDataset d = load_labeled_csv(dir / "a.csv", 2);
  CHECK(d.features.n_rows() == 3);
  CHECK(d.features.n_cols() == 2);
  CHECK(d.labels == std::vector<ClassIndex>{0, 1, 0});
  CHECK(d.features(2, 1) == 6.0);
}

TEST_CASE("labeled csv rejects out-of-range labels and empty files") {
  testing::TempDir dir;
  testing::write_file(dir / "bad.csv", "x0,label\n1,2\n");
  CHECK_THROWS_AS(load_labeled_csv(dir / "bad.csv", 2), ValidationError);
  testing::write_file(dir / "empty.csv", "");
  CHECK_THROWS_AS(load_labeled_csv(dir / "empty.csv", 2), ParseError);
  CHECK_THROWS_AS(load_labeled_csv(dir / "missing.csv", 2), IoError);
}

TEST_CASE("labeled csv round trip") {
  testing::TempDir dir;
  TwoMoonsConfig cfg;
  cfg.n_per_class = 40;
  const TwoMoons m = make_two_moons(cfg);
  write_labeled_csv(dir / "t.csv", m.train);
  const LabeledDataset back = load_labeled_csv(dir / "t.csv", 2);
  REQUIRE(back.size() == m.train.size());
  CHECK(back.labels == m.train.labels);
  for (std::size_t r = 0; r < back.size(); ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      CHECK(std::abs(back.features(r, c) - m.train.features(r, c)) <= 1e-12);
    }
  }
}

TEST_CASE("candidate csv fills ids and validates") {
  testing::TempDir dir;
  testing::write_file(dir / "c.csv",
                      "x0,x1,proposed_label\n0,0,0\n1,1,1\n2,2,0\n3,3,1\n4,4,0\n");
  const CandidatePool pool = load_candidate_csv(dir / "c.csv", 2);
  CHECK(pool.size() == 5);
  CHECK(pool.source_ids[3] == "3");

  testing::write_file(dir / "ids.csv", "x0,proposed_label,source_id\n0.5,1,gen-7\n");
  CHECK(load_candidate_csv(dir / "ids.csv", 2).source_ids[0] == "gen-7");

  testing::write_file(dir / "nolabel.csv", "x0,x1\n0,0\n");
  CHECK_THROWS_AS(load_candidate_csv(dir / "nolabel.csv", 2), SchemaError);

  testing::write_file(dir / "nan.csv", "x0,x1,proposed_label\nnan,0,0\n");
  CHECK_THROWS_AS(load_candidate_csv(dir / "nan.csv", 2), ValidationError);
}

TEST_CASE("candidate csv round trip keeps ids") {
  testing::TempDir dir;
  const TwoMoons m = make_two_moons({});
  write_candidate_csv(dir / "c.csv", m.candidates);
  const CandidatePool back = load_candidate_csv(dir / "c.csv", 2);
  CHECK(back.source_ids == m.candidates.source_ids);
  CHECK(back.proposed_labels == m.candidates.proposed_labels);
  CHECK(back.features == m.candidates.features);
}

TEST_CASE("feature matrix rejects non-finite values") {
  CHECK_THROWS_AS(FeatureMatrix(1, 2, {1.0, NAN}), ValidationError);
  CHECK_THROWS_AS(FeatureMatrix(1, 1, {INFINITY}), ValidationError);
}

TEST_CASE("two moons is deterministic") {
  testing::TempDir dir;
  const TwoMoons a = make_two_moons({});
  const TwoMoons b = make_two_moons({});
  write_candidate_csv(dir / "a.csv", a.candidates);
  write_candidate_csv(dir / "b.csv", b.candidates);
  write_labeled_csv(dir / "ta.csv", a.train);
  write_labeled_csv(dir / "tb.csv", b.train);
  CHECK(testing::read_file(dir / "a.csv") == testing::read_file(dir / "b.csv"));
  CHECK(testing::read_file(dir / "ta.csv") == testing::read_file(dir / "tb.csv"));
}

TEST_CASE("two moons gap removes training rows only") {
  TwoMoonsConfig cfg;
  cfg.gap_halfwidth = 0.3;
  const TwoMoons m = make_two_moons(cfg);
  std::size_t train_in_gap = 0;
  for (std::size_t r = 0; r < m.train.size(); ++r) {
    train_in_gap += in_two_moons_gap(m.train.features(r, 0), cfg) ? 1 : 0;
  }
  std::size_t cand_in_gap = 0;
  for (std::size_t r = 0; r < m.candidates.size(); ++r) {
    cand_in_gap += in_two_moons_gap(m.candidates.features(r, 0), cfg) ? 1 : 0;
  }
  CHECK(train_in_gap == 0);
  CHECK(cand_in_gap >= 1);
  CHECK(m.train.size() < 600);

  std::size_t class1 = 0;
  for (ClassIndex y : m.test.labels) class1 += y;
  CHECK(m.test.size() == 600);
  CHECK(class1 == 300);
}

TEST_CASE("zero gap keeps every training row") {
  TwoMoonsConfig cfg;
  cfg.gap_halfwidth = 0.0;
  cfg.n_per_class = 50;
  CHECK(make_two_moons(cfg).train.size() == 100);
}

TEST_CASE("two moons validates its configuration") {
  TwoMoonsConfig cfg;
  cfg.n_per_class = 5;
  CHECK_THROWS_AS(make_two_moons(cfg), PreconditionError);
  cfg = {};
  cfg.gap_halfwidth = 1.0;
  CHECK_THROWS_AS(make_two_moons(cfg), PreconditionError);
  cfg = {};
  cfg.noise_sd = -0.1;
  CHECK_THROWS_AS(make_two_moons(cfg), PreconditionError);
}

TEST_CASE("different seeds give different candidates") {
  TwoMoonsConfig a;
  TwoMoonsConfig b;
  b.seed = 1;
  CHECK_FALSE(make_two_moons(a).candidates.features ==
              make_two_moons(b).candidates.features);
}
