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

#include "libags/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "libags/bench.hpp"
#include "libags/data.hpp"
#include "libags/error.hpp"
#include "libags/model.hpp"
#include "libags/pipeline.hpp"
#include "textio.hpp"

namespace libags {

namespace {

namespace fs = std::filesystem;

struct InputFlags {
  std::string real;
  std::string candidates;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_classes;
  std::string proba_real;
  std::string proba_cand;
};

void add_input_flags(CLI::App* cmd, InputFlags& f) {
  cmd->add_option("--real", f.real, "real training CSV (features..., label)")
      ->required();
  cmd->add_option("--candidates", f.candidates,
                  "candidate CSV (features..., proposed_label[, source_id])")
      ->required();
  cmd->add_option("--config", f.config, "pipeline config JSON");
  cmd->add_option("--seed", f.seed, "overrides the config seed");
  cmd->add_option("--n-classes", f.n_classes,
                  "class count (default: largest real label + 1)");
  cmd->add_option("--proba-real", f.proba_real,
                  "external class probabilities for the real rows");
  cmd->add_option("--proba-cand", f.proba_cand,
                  "external class probabilities for the candidates");
}

struct Inputs {
  LabeledDataset real;
  CandidatePool candidates;
  PipelineConfig config;
  std::optional<ExternalProba> external;
};

std::size_t infer_classes(const fs::path& path) {
  // Load once with a generous class bound just to read the labels.
  const LabeledDataset probe =
      load_labeled_csv(path, std::numeric_limits<std::size_t>::max());
  const ClassIndex top =
      *std::max_element(probe.labels.begin(), probe.labels.end());
  return std::max<std::size_t>(2, top + 1);
}

Inputs load_inputs(const InputFlags& f) {
  PipelineConfig config =
      f.config.empty() ? PipelineConfig{} : load_config(f.config);
  if (f.seed) config.seed = *f.seed;
  const std::size_t k = f.n_classes ? *f.n_classes : infer_classes(f.real);
  LabeledDataset real = load_labeled_csv(f.real, k);
  CandidatePool candidates = load_candidate_csv(f.candidates, k);
  if (candidates.features.n_cols() != real.features.n_cols()) {
    throw DimensionError("candidate dimension " +
                         std::to_string(candidates.features.n_cols()) +
                         " does not match real dimension " +
                         std::to_string(real.features.n_cols()));
  }
  std::optional<ExternalProba> external;
  if (!f.proba_real.empty() && f.proba_cand.empty()) {
    throw ValidationError("--proba-real needs --proba-cand");
  }
  if (!f.proba_cand.empty()) {
    ExternalProba ext;
    ext.candidates = load_numeric_csv(f.proba_cand);
    if (!f.proba_real.empty()) ext.real = load_numeric_csv(f.proba_real);
    external = std::move(ext);
  }
  return {std::move(real), std::move(candidates), config, std::move(external)};
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

template <typename T>
std::vector<T> split_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if constexpr (std::is_same_v<T, std::string>) {
      out.push_back(item);
    } else {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size() || item[0] == '-') {
        throw ValidationError(std::string("bad ") + what + " '" + item + "'");
      }
      out.push_back(static_cast<T>(v));
    }
  }
  if (out.empty()) throw ValidationError(std::string("empty ") + what + " list");
  return out;
}

std::string summary_line(const SelectionReport& r) {
  char line[200];
  std::snprintf(line, sizeof line, "m_hat=%zu eta=%.6g lambda=%.6g tau=%.6g%s\n",
                r.m_hat, r.eta, r.lambda, r.tau,
                r.warnings.empty() ? "" : " (warning: no positive importance)");
  return line;
}

CandidatePool selected_rows(const CandidatePool& pool,
                            const std::vector<std::size_t>& picks) {
  std::vector<ClassIndex> labels;
  std::vector<std::string> ids;
  for (std::size_t j : picks) {
    labels.push_back(pool.proposed_labels[j]);
    ids.push_back(pool.source_ids[j]);
  }
  return CandidatePool(pool.features.select_rows(picks), std::move(labels),
                       std::move(ids), pool.n_classes);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Boundary-gap selection of synthetic training candidates",
               "libags"};
  app.require_subcommand(1);

  InputFlags sel;
  std::string sel_out;
  std::string sel_model_out;
  std::string sel_gains_out;
  bool sel_repro = false;
  CLI::App* select = app.add_subcommand(
      "select", "score, select and soft-label candidates; write a report");
  add_input_flags(select, sel);
  select->add_option("--out", sel_out, "report JSON path")->required();
  select->add_option("--model-out", sel_model_out,
                     "also train the final classifier and save it as JSON");
  select->add_option("--gains-out", sel_gains_out, "per-step gains CSV path");
  select->add_flag("--reproducible", sel_repro,
                   "omit timing metadata from the report");

  InputFlags sc;
  std::string sc_out;
  CLI::App* score = app.add_subcommand(
      "score", "write the per-candidate score table as CSV");
  add_input_flags(score, sc);
  score->add_option("--out", sc_out, "score CSV path")->required();

  std::string b_methods = "erm,random,noise,uncertainty_only,libags";
  std::string b_seeds = "0,1,2,3,4";
  std::string b_out;
  std::string b_config;
  CLI::App* bench = app.add_subcommand(
      "bench", "two-moons comparison of selection methods");
  bench->add_option("--methods", b_methods, "comma-separated method names")
      ->capture_default_str();
  bench->add_option("--seeds", b_seeds, "comma-separated seeds")
      ->capture_default_str();
  bench->add_option("--out", b_out, "output directory")->required();
  bench->add_option("--config", b_config,
                    "pipeline config JSON (default: RFF representation)");

  std::uint64_t d_seed = 0;
  std::string d_out;
  std::size_t d_res = 100;
  bool d_repro = false;
  CLI::App* demo = app.add_subcommand(
      "demo-two-moons", "ERM and selection grids plus selected candidates");
  demo->add_option("--seed", d_seed)->capture_default_str();
  demo->add_option("--out", d_out, "output directory")->required();
  demo->add_option("--resolution", d_res, "grid points per axis")
      ->capture_default_str();
  demo->add_flag("--reproducible", d_repro,
                 "omit timing metadata from the report");

  std::string g_model;
  std::string g_out;
  std::size_t g_res = 100;
  std::vector<double> g_bounds;
  CLI::App* grid = app.add_subcommand(
      "export-grid", "class-1 probability over a 2-d grid for a saved model");
  grid->add_option("--model", g_model, "model JSON")->required();
  grid->add_option("--out", g_out, "grid CSV path")->required();
  grid->add_option("--resolution", g_res, "grid points per axis")
      ->capture_default_str();
  grid->add_option("--bounds", g_bounds, "x_min,x_max,y_min,y_max")
      ->delimiter(',')
      ->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*select) {
      const Inputs in = load_inputs(sel);
      const SelectionReport report =
          run_selection(in.real, in.candidates, in.config, in.external);
      detail::write_text_file(sel_out, report_to_json(report, !sel_repro));
      if (!sel_gains_out.empty()) write_gains_csv(sel_gains_out, report.gains_log);
      if (!sel_model_out.empty()) {
        const LogisticModel model =
            train_final(in.real, report, in.candidates, in.config);
        const auto encoder =
            make_encoder(in.config, in.real.features.n_cols());
        save_model_json(sel_model_out, model, encoder ? &*encoder : nullptr);
      }
      out << summary_line(report);
    } else if (*score) {
      const Inputs in = load_inputs(sc);
      const ScoredPool pool =
          score_pool(in.real, in.candidates, in.config, in.external);
      write_scores_csv(sc_out, in.candidates, pool.scores);
      out << "scored " << pool.scores.size() << " candidates, tau="
          << pool.tau << "\n";
    } else if (*bench) {
      const auto methods = split_list<std::string>(b_methods, "method");
      const auto seeds = split_list<std::uint64_t>(b_seeds, "seed");
      const PipelineConfig config =
          b_config.empty() ? bench_default_config() : load_config(b_config);
      const auto results = run_bench(methods, seeds, config);
      ensure_dir(b_out);
      write_bench_csv(fs::path(b_out) / "results.csv", results);
      const std::string summary = bench_summary(results);
      detail::write_text_file(fs::path(b_out) / "summary.txt", summary);
      out << summary;
    } else if (*demo) {
      TwoMoonsConfig dc;
      dc.seed = d_seed;
      const TwoMoons moons = make_two_moons(dc);
      PipelineConfig pc = bench_default_config();
      pc.seed = d_seed;
      const SelectionReport report =
          run_selection(moons.train, moons.candidates, pc);
      const LogisticModel erm =
          train_final(moons.train, SelectionReport{}, moons.candidates, pc);
      const LogisticModel final_model =
          train_final(moons.train, report, moons.candidates, pc);
      const auto encoder = make_encoder(pc, 2);
      ensure_dir(d_out);
      const fs::path dir(d_out);
      export_boundary_grid(erm, encoder, Box{}, d_res, dir / "erm_grid.csv");
      export_boundary_grid(final_model, encoder, Box{}, d_res,
                           dir / "libags_grid.csv");
      if (report.selected.empty()) {
        detail::write_text_file(dir / "selected.csv",
                                "x0,x1,proposed_label,source_id\n");
      } else {
        write_candidate_csv(dir / "selected.csv",
                            selected_rows(moons.candidates, report.selected));
      }
      detail::write_text_file(dir / "report.json",
                              report_to_json(report, !d_repro));
      out << summary_line(report);
    } else if (*grid) {
      const SavedModel saved = load_model_json(g_model);
      Box box;
      if (!g_bounds.empty()) {
        box = {g_bounds[0], g_bounds[1], g_bounds[2], g_bounds[3]};
        if (!(box.x_min < box.x_max && box.y_min < box.y_max)) {
          throw ValidationError("--bounds needs x_min < x_max, y_min < y_max");
        }
      }
      const std::size_t dim =
          saved.encoder ? saved.encoder->input_dim() : saved.model.input_dim();
      if (dim != 2) throw DimensionError("export-grid needs a 2-d input model");
      export_boundary_grid(saved.model, saved.encoder, box, g_res, g_out);
      out << "wrote " << g_res * g_res << " grid rows\n";
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace libags
