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


#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "libags/cli.hpp"
#include "libags/data.hpp"
#include "testing.hpp"

namespace fs = std::filesystem;
using namespace libags;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "libags");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Inputs {
  testing::TempDir dir;
  std::string real;
  std::string cand;

  explicit Inputs(std::uint64_t seed = 0) {
    TwoMoonsConfig c;
    c.seed = seed;
    const TwoMoons m = make_two_moons(c);
    real = (dir / "real.csv").string();
    cand = (dir / "cand.csv").string();
    write_labeled_csv(real, m.train);
    write_candidate_csv(cand, m.candidates);
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n' ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("help exits zero") {
  const Run r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("select") != std::string::npos);
}

TEST_CASE("select writes a report, model and gains") {
  const Inputs in;
  const Run r = cli({"select", "--real", in.real, "--candidates", in.cand, "--out",
                     in.path("r.json"), "--model-out", in.path("m.json"),
                     "--gains-out", in.path("g.csv")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("m_hat=", 0) == 0);
  CHECK(testing::read_file(in.path("r.json")).find("\"stage_seconds\"") !=
        std::string::npos);
  CHECK(fs::exists(in.path("m.json")));
  CHECK(fs::exists(in.path("g.csv")));

  const Run g = cli({"export-grid", "--model", in.path("m.json"), "--out",
                     in.path("grid.csv"), "--resolution", "3", "--bounds",
                     "-1,1,-1,1"});
  CHECK(g.code == 0);
  CHECK(count_lines(testing::read_file(in.path("grid.csv"))) == 10);
}

TEST_CASE("select usage and input errors") {
  const Inputs in;
  CHECK(cli({"select", "--candidates", in.cand, "--out", in.path("r.json")}).code == 1);

  testing::write_file(in.path("wide.csv"), "x0,x1,x2,proposed_label\n0,0,0,1\n");
  const Run dim = cli({"select", "--real", in.real, "--candidates",
                       in.path("wide.csv"), "--out", in.path("r.json")});
  CHECK(dim.code == 1);
  CHECK(dim.err.find("dimension") != std::string::npos);

  const Run missing = cli({"select", "--real", in.path("nope.csv"), "--candidates",
                           in.cand, "--out", in.path("r.json")});
  CHECK(missing.code == 2);

  testing::write_file(in.path("bad.json"), R"({"knn_k": 0})");
  CHECK(cli({"select", "--real", in.real, "--candidates", in.cand, "--config",
             in.path("bad.json"), "--out", in.path("r.json")})
            .code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
}

TEST_CASE("select with external probabilities") {
  const Inputs in;
  const LabeledDataset real = load_labeled_csv(in.real, 2);
  const CandidatePool pool = load_candidate_csv(in.cand, 2);
  auto proba_csv = [](std::size_t rows) {
    std::string s = "p0,p1\n";
    for (std::size_t i = 0; i < rows; ++i) s += "1,0\n";
    return s;
  };
  testing::write_file(in.path("pr.csv"), proba_csv(real.size()));
  testing::write_file(in.path("pc.csv"), proba_csv(pool.size()));
  const Run r = cli({"select", "--real", in.real, "--candidates", in.cand,
                     "--proba-real", in.path("pr.csv"), "--proba-cand",
                     in.path("pc.csv"), "--out", in.path("r.json"), "--reproducible"});
  CHECK(r.code == 0);
  CHECK(r.out.find("m_hat=0") == 0);
  const Run lone = cli({"select", "--real", in.real, "--candidates", in.cand,
                        "--proba-real", in.path("pr.csv"), "--out", in.path("x.json")});
  CHECK(lone.code == 1);
}

TEST_CASE("select is reproducible") {
  const Inputs in;
  const std::vector<std::string> base = {"select", "--real", in.real,
                                         "--candidates", in.cand, "--reproducible",
                                         "--out"};
  auto a = base;
  a.push_back(in.path("a.json"));
  auto b = base;
  b.push_back(in.path("b.json"));
  REQUIRE(cli(a).code == 0);
  REQUIRE(cli(b).code == 0);
  CHECK(testing::read_file(in.path("a.json")) == testing::read_file(in.path("b.json")));
}

TEST_CASE("score writes one row per candidate") {
  const Inputs in;
  const Run r = cli({"score", "--real", in.real, "--candidates", in.cand, "--out",
                     in.path("s.csv")});
  CHECK(r.code == 0);
  const CandidatePool pool = load_candidate_csv(in.cand, 2);
  CHECK(count_lines(testing::read_file(in.path("s.csv"))) == pool.size() + 1);
}

TEST_CASE("bench writes results and rejects unknown methods") {
  const Inputs in;
  testing::write_file(in.path("c.json"),
                      R"({"representation": "rff", "epochs": 200, "rff_dim": 50})");
  const std::vector<std::string> args = {"bench", "--methods", "erm,libags",
                                         "--seeds", "0,1,2,3,4", "--config",
                                         in.path("c.json"), "--out"};
  auto first = args;
  first.push_back(in.path("b1"));
  auto second = args;
  second.push_back(in.path("b2"));
  REQUIRE(cli(first).code == 0);
  REQUIRE(cli(second).code == 0);
  const std::string csv = testing::read_file(in.path("b1") + "/results.csv");
  CHECK(count_lines(csv) == 1 + 2 * 5);
  CHECK(csv == testing::read_file(in.path("b2") + "/results.csv"));
  CHECK(fs::exists(in.path("b1") + "/summary.txt"));

  CHECK(cli({"bench", "--methods", "bogus", "--seeds", "0", "--out", in.path("b3")})
            .code == 1);
}

TEST_CASE("demo writes its four files") {
  const Inputs in;
  const auto run_demo = [&](const std::string& seed, const std::string& dir) {
    return cli({"demo-two-moons", "--seed", seed, "--out", in.path(dir),
                "--resolution", "20", "--reproducible"});
  };
  REQUIRE(run_demo("7", "d7").code == 0);
  REQUIRE(run_demo("8", "d8").code == 0);
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(in.path("d7"))) {
    names.insert(e.path().filename().string());
  }
  CHECK(names == std::set<std::string>{"erm_grid.csv", "libags_grid.csv",
                                       "report.json", "selected.csv"});
  const std::string s7 = testing::read_file(in.path("d7") + "/selected.csv");
  CHECK(s7 != testing::read_file(in.path("d8") + "/selected.csv"));

  // Selected rows are rows of the seed-7 candidate pool.
  TwoMoonsConfig c;
  c.seed = 7;
  testing::TempDir pool_dir;
  write_candidate_csv(pool_dir / "p.csv", make_two_moons(c).candidates);
  const std::string pool_text = testing::read_file(pool_dir / "p.csv");
  std::istringstream lines(s7);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x0,x1,proposed_label,source_id");
  while (std::getline(lines, line)) {
    CHECK(pool_text.find("\n" + line + "\n") != std::string::npos);
  }
}

TEST_CASE("export-grid errors") {
  const Inputs in;
  CHECK(cli({"export-grid", "--model", in.path("none.json"), "--out",
             in.path("g.csv")})
            .code == 2);
}
