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

#include "libags/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "libags/alloc.hpp"
#include "libags/error.hpp"
#include "libags/geometry.hpp"
#include "textio.hpp"

namespace libags {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out)
      : out_(out), start_(Clock::now()) {}
  void mark(const char* stage) {
    const auto now = Clock::now();
    out_.push_back({stage, std::chrono::duration<double>(now - start_).count()});
    start_ = now;
  }

 private:
  std::vector<StageTiming>& out_;
  Clock::time_point start_;
};

double real_field(const std::string& key, const json& v) {
  if (!v.is_number()) throw ParseError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t count_field(const std::string& key, const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw ParseError("config key '" + key + "' must be a non-negative integer");
}

std::optional<double> real_or_keyword(const std::string& key, const json& v,
                                      const char* keyword) {
  if (v.is_string() && v.get<std::string>() == keyword) return std::nullopt;
  if (v.is_number()) return v.get<double>();
  throw ParseError("config key '" + key + "' must be a number or \"" +
                   keyword + "\"");
}

std::optional<std::size_t> count_or_keyword(const std::string& key,
                                            const json& v,
                                            const char* keyword) {
  if (v.is_string() && v.get<std::string>() == keyword) return std::nullopt;
  if (v.is_number_integer()) return count_field(key, v);
  throw ParseError("config key '" + key + "' must be a count or \"" + keyword +
                   "\"");
}

json config_json(const PipelineConfig& c) {
  json j;
  j["tau_quantile"] = c.tau_quantile;
  j["knn_k"] = c.knn_k;
  if (c.kernel_bandwidth) {
    j["kernel_bandwidth"] = *c.kernel_bandwidth;
  } else {
    j["kernel_bandwidth"] = "median";
  }
  j["coverage_ratio"] = c.coverage_ratio;
  if (c.n_regions) {
    j["n_regions"] = *c.n_regions;
  } else {
    j["n_regions"] = "auto";
  }
  if (c.max_budget) {
    j["max_budget"] = *c.max_budget;
  } else {
    j["max_budget"] = "none";
  }
  j["representation"] = c.representation;
  j["rff_dim"] = c.rff_dim;
  j["rff_bandwidth"] = c.rff_bandwidth;
  if (c.density_dim) {
    j["density_dim"] = *c.density_dim;
  } else {
    j["density_dim"] = "auto";
  }
  j["l2"] = c.l2;
  j["epochs"] = c.epochs;
  j["lr"] = c.lr;
  j["seed"] = c.seed;
  return j;
}

json score_json(std::size_t index, const ScoreRecord& s) {
  json j;
  j["index"] = index;
  j["margin"] = s.margin;
  j["boundary_weight"] = s.boundary_weight;
  j["entropy"] = s.entropy;
  j["density"] = s.density;
  j["support"] = s.support;
  j["importance"] = s.importance;
  j["gap_score"] = s.gap_score;
  j["value"] = s.value;
  return j;
}

void check_external(const ExternalProba& ext, const LabeledDataset& real,
                    const CandidatePool& candidates) {
  const std::size_t k = real.n_classes;
  if (ext.candidates.rows() != candidates.size() || ext.candidates.cols() != k) {
    throw DimensionError("candidate probabilities must be " +
                         std::to_string(candidates.size()) + " x " +
                         std::to_string(k));
  }
  validate_probability_rows(ext.candidates);
  if (ext.real) {
    if (ext.real->rows() != real.size() || ext.real->cols() != k) {
      throw DimensionError("real probabilities must be " +
                           std::to_string(real.size()) + " x " +
                           std::to_string(k));
    }
    validate_probability_rows(*ext.real);
  }
}

}  // namespace

void PipelineConfig::validate() const {
  auto fail = [](const std::string& what) { throw PreconditionError(what); };
  if (!(tau_quantile > 0.0 && tau_quantile < 1.0)) {
    fail("tau_quantile must lie in (0, 1)");
  }
  if (knn_k < 1) fail("knn_k must be >= 1");
  if (kernel_bandwidth && !(*kernel_bandwidth > 0.0)) {
    fail("kernel_bandwidth must be positive");
  }
  if (!(coverage_ratio > 0.0) || !std::isfinite(coverage_ratio)) {
    fail("coverage_ratio must be positive");
  }
  if (n_regions && *n_regions < 1) fail("n_regions must be >= 1");
  if (representation != "identity" && representation != "rff") {
    fail("representation must be \"identity\" or \"rff\"");
  }
  if (rff_dim < 2 || rff_dim % 2 != 0) fail("rff_dim must be even and >= 2");
  if (!(rff_bandwidth > 0.0)) fail("rff_bandwidth must be positive");
  if (density_dim && *density_dim < 1) fail("density_dim must be >= 1");
  if (!(l2 >= 0.0) || !std::isfinite(l2)) fail("l2 must be >= 0");
  if (epochs < 1) fail("epochs must be >= 1");
  if (!(lr > 0.0) || !std::isfinite(lr)) fail("lr must be positive");
}

PipelineConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  PipelineConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "tau_quantile") {
      c.tau_quantile = real_field(key, v);
    } else if (key == "knn_k") {
      c.knn_k = count_field(key, v);
    } else if (key == "kernel_bandwidth") {
      c.kernel_bandwidth = real_or_keyword(key, v, "median");
    } else if (key == "coverage_ratio") {
      c.coverage_ratio = real_field(key, v);
    } else if (key == "n_regions") {
      c.n_regions = count_or_keyword(key, v, "auto");
    } else if (key == "max_budget") {
      c.max_budget = count_or_keyword(key, v, "none");
    } else if (key == "representation") {
      if (!v.is_string()) throw ParseError("representation must be a string");
      c.representation = v.get<std::string>();
    } else if (key == "rff_dim") {
      c.rff_dim = count_field(key, v);
    } else if (key == "rff_bandwidth") {
      c.rff_bandwidth = real_field(key, v);
    } else if (key == "density_dim") {
      c.density_dim = count_or_keyword(key, v, "auto");
    } else if (key == "l2") {
      c.l2 = real_field(key, v);
    } else if (key == "epochs") {
      const std::uint64_t e = count_field(key, v);
      if (e > 100000000) throw PreconditionError("epochs is too large");
      c.epochs = static_cast<int>(e);
    } else if (key == "lr") {
      c.lr = real_field(key, v);
    } else if (key == "seed") {
      c.seed = count_field(key, v);
    } else {
      throw SchemaError("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  return parse_config(detail::read_text_file(path));
}

std::string config_to_json(const PipelineConfig& config) {
  return config_json(config).dump(2) + "\n";
}

std::optional<RffEncoder> make_encoder(const PipelineConfig& config,
                                       std::size_t input_dim) {
  if (config.representation != "rff") return std::nullopt;
  return RffEncoder(input_dim, config.rff_dim, config.rff_bandwidth,
                    config.seed);
}

FeatureMatrix represent(const std::optional<RffEncoder>& encoder,
                        const FeatureMatrix& x) {
  return encoder ? encoder->encode(x) : x;
}

ScoredPool score_pool(const LabeledDataset& real,
                      const CandidatePool& candidates,
                      const PipelineConfig& config,
                      const std::optional<ExternalProba>& external) {
  config.validate();
  if (candidates.features.n_cols() != real.features.n_cols()) {
    throw DimensionError("candidate dimension " +
                         std::to_string(candidates.features.n_cols()) +
                         " does not match real dimension " +
                         std::to_string(real.features.n_cols()));
  }
  if (candidates.n_classes != real.n_classes) {
    throw ValidationError("candidate and real class counts differ");
  }
  const std::size_t n = real.size();
  const std::size_t m = candidates.size();
  const std::size_t k = config.knn_k;
  if (k + 1 > n) {
    throw PreconditionError("knn_k=" + std::to_string(k) +
                            " needs at least " + std::to_string(k + 1) +
                            " real rows, got " + std::to_string(n));
  }
  if (external) check_external(*external, real, candidates);

  std::vector<StageTiming> timings;
  StageClock clock(timings);

  // Scoring model, real data only.
  std::optional<RffEncoder> encoder =
      make_encoder(config, real.features.n_cols());
  FeatureMatrix real_repr = represent(encoder, real.features);
  std::optional<LogisticModel> scorer;
  if (!external) {
    scorer = fit_logistic(real_repr, real.labels, real.n_classes,
                          config.logistic_options());
  }
  clock.mark("fit_scoring_model");

  // Candidate representations.
  FeatureMatrix cand_repr = represent(encoder, candidates.features);
  clock.mark("encode_candidates");

  // Per-candidate scores.
  Matrix proba =
      scorer ? predict_proba(*scorer, cand_repr) : external->candidates;
  std::vector<ScoreRecord> scores(m);
  std::vector<double> margins(m);
  for (std::size_t j = 0; j < m; ++j) margins[j] = top_two_margin(proba.row(j));
  const double tau = select_tau(margins, config.tau_quantile);

  const NeighborIndex index(real_repr);
  const Matrix knn = knn_distances(index, cand_repr, k);
  const std::vector<double> density = density_from_knn(
      knn, n, config.density_dim.value_or(real.features.n_cols()));
  const Matrix self_knn = knn_self_distances(index, k);
  std::vector<double> calibration(n);
  for (std::size_t i = 0; i < n; ++i) calibration[i] = self_knn(i, k - 1);
  const SupportCalibration cal = SupportCalibration::from(calibration);

  for (std::size_t j = 0; j < m; ++j) {
    ScoreRecord& s = scores[j];
    s.margin = margins[j];
    s.boundary_weight = boundary_weight(s.margin, tau);
    s.entropy = entropy(proba.row(j));
    s.density = density[j];
    s.support = cal.validity(knn(j, k - 1));
    s.importance = importance(s.boundary_weight, s.entropy, s.support);
  }
  clock.mark("score");

  // Gap scores.
  std::vector<double> r(m);
  std::vector<double> coverage(m);
  for (std::size_t j = 0; j < m; ++j) {
    r[j] = scores[j].importance;
    coverage[j] = static_cast<double>(n) * scores[j].density;
  }
  double lambda = 0.0;
  bool nothing = false;
  try {
    const AllocationSolution sol = solve_lambda(
        r, coverage, static_cast<double>(n) * config.coverage_ratio);
    lambda = sol.lambda;
    for (std::size_t j = 0; j < m; ++j) scores[j].gap_score = sol.gap_scores[j];
  } catch (const NoPositiveImportance&) {
    nothing = true;
  }
  clock.mark("allocate");

  // Candidate values.
  for (ScoreRecord& s : scores) s.value = s.gap_score * s.support;
  clock.mark("values");

  return ScoredPool{std::move(scores), std::move(proba), tau,
                    lambda,            nothing,          std::move(encoder),
                    std::move(real_repr), std::move(cand_repr),
                    std::move(timings)};
}

SelectionReport run_selection(const LabeledDataset& real,
                              const CandidatePool& candidates,
                              const PipelineConfig& config,
                              const std::optional<ExternalProba>& external) {
  ScoredPool pool = score_pool(real, candidates, config, external);
  const std::size_t m = candidates.size();

  SelectionReport rep;
  rep.config = config;
  rep.tau = pool.tau;
  rep.lambda = pool.lambda;
  rep.scores = pool.scores;
  rep.timings = std::move(pool.timings);
  if (pool.no_positive_importance) {
    rep.warnings.push_back(
        "no_positive_importance: every candidate has zero importance, "
        "nothing selected");
    return rep;
  }
  StageClock clock(rep.timings);

  // Threshold from the initial gain curve.
  std::vector<double> r(m);
  std::vector<double> values(m);
  for (std::size_t j = 0; j < m; ++j) {
    r[j] = rep.scores[j].importance;
    values[j] = rep.scores[j].value;
  }
  const std::size_t n_regions =
      config.n_regions.value_or(default_region_count(m));
  RegionTable regions = build_regions(pool.real_repr, pool.candidate_repr, r,
                                      n_regions, config.seed);
  clock.mark("regions");
  const SimilarityMatrix sim =
      build_similarity(pool.candidate_repr, config.kernel_bandwidth);
  clock.mark("similarity");
  std::vector<double> curve = initial_gains(values, sim.values, regions);
  std::sort(curve.begin(), curve.end(), std::greater<>());
  rep.eta = select_eta(curve);
  rep.kernel_bandwidth = sim.kernel.bandwidth;
  rep.n_regions = n_regions;
  clock.mark("threshold");

  // Greedy selection with stopping.
  SelectionState state = greedy_select(values, sim.values, std::move(regions),
                                       rep.eta, config.max_budget.value_or(m));
  rep.selected = std::move(state.selected);
  rep.gains_log = std::move(state.gains_log);
  rep.stop_reason = state.stop_reason;
  rep.m_hat = rep.selected.size();
  clock.mark("select");

  // Soft labels.
  for (std::size_t j : rep.selected) {
    rep.selected_ids.push_back(candidates.source_ids[j]);
    rep.soft_labels.push_back(soft_label(candidates.proposed_labels[j],
                                         pool.proba.row(j),
                                         rep.scores[j].boundary_weight));
  }
  clock.mark("soft_label");
  return rep;
}

LogisticModel train_final(const LabeledDataset& real,
                          const SelectionReport& report,
                          const CandidatePool& candidates,
                          const PipelineConfig& config) {
  if (report.soft_labels.size() != report.selected.size()) {
    throw ValidationError("report has mismatched selection and soft labels");
  }
  for (std::size_t j : report.selected) {
    if (j >= candidates.size()) {
      throw ValidationError("selected index " + std::to_string(j) +
                            " out of range for " +
                            std::to_string(candidates.size()) + " candidates");
    }
  }
  const std::size_t kc = real.n_classes;
  const std::size_t n = real.size();
  const std::size_t total = n + report.selected.size();

  FeatureMatrix x = real.features;
  if (!report.selected.empty()) {
    x = x.vstack(candidates.features.select_rows(report.selected));
  }
  Matrix targets(total, kc);
  const Matrix hard = one_hot(real.labels, kc);
  std::copy(hard.values().begin(), hard.values().end(),
            targets.values().begin());
  for (std::size_t s = 0; s < report.selected.size(); ++s) {
    const auto& dist = report.soft_labels[s].distribution;
    if (dist.size() != kc) throw DimensionError("soft label has wrong length");
    std::copy(dist.begin(), dist.end(), targets.row(n + s).begin());
  }
  const auto encoder = make_encoder(config, real.features.n_cols());
  return fit_logistic_soft(represent(encoder, x), targets,
                           config.logistic_options());
}

std::string report_to_json(const SelectionReport& report,
                           bool include_timings) {
  json j;
  j["format"] = kReportFormat;
  j["m_hat"] = report.m_hat;
  j["eta"] = report.eta;
  j["lambda"] = report.lambda;
  j["tau"] = report.tau;
  j["kernel_bandwidth"] = report.kernel_bandwidth;
  j["n_regions"] = report.n_regions;
  j["stop_reason"] = report.stop_reason ? to_string(*report.stop_reason)
                                        : "no_positive_importance";
  j["warning"] = !report.warnings.empty();
  j["warnings"] = report.warnings;
  j["selected"] = report.selected;
  j["selected_ids"] = report.selected_ids;
  json soft = json::array();
  for (const SoftLabel& s : report.soft_labels) soft.push_back(s.distribution);
  j["soft_labels"] = std::move(soft);
  json gains = json::array();
  for (const GainStep& g : report.gains_log) {
    json row;
    row["step"] = g.step;
    row["candidate"] = g.candidate;
    row["facility_gain"] = g.facility_gain;
    row["region_gain"] = g.region_gain;
    row["combined_gain"] = g.combined_gain;
    gains.push_back(std::move(row));
  }
  j["gains"] = std::move(gains);
  json scores = json::array();
  for (std::size_t i = 0; i < report.scores.size(); ++i) {
    scores.push_back(score_json(i, report.scores[i]));
  }
  j["scores"] = std::move(scores);
  j["config"] = config_json(report.config);
  if (include_timings) {
    json t;
    for (const StageTiming& s : report.timings) t[s.stage] = s.seconds;
    j["metadata"]["stage_seconds"] = std::move(t);
  }
  return j.dump(2) + "\n";
}

void write_scores_csv(const std::filesystem::path& path,
                      const CandidatePool& candidates,
                      std::span<const ScoreRecord> scores) {
  std::ostringstream out;
  out << "index,source_id,margin,boundary_weight,entropy,density,support,"
         "importance,gap_score,value\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const ScoreRecord& s = scores[i];
    out << i << ',' << candidates.source_ids[i] << ',' << format_double(s.margin)
        << ',' << format_double(s.boundary_weight) << ','
        << format_double(s.entropy) << ',' << format_double(s.density) << ','
        << format_double(s.support) << ',' << format_double(s.importance)
        << ',' << format_double(s.gap_score) << ',' << format_double(s.value)
        << '\n';
  }
  detail::write_text_file(path, out.str());
}

void write_gains_csv(const std::filesystem::path& path,
                     std::span<const GainStep> gains) {
  std::ostringstream out;
  out << "step,candidate,facility_gain,region_gain,combined_gain\n";
  for (const GainStep& g : gains) {
    out << g.step << ',' << g.candidate << ',' << format_double(g.facility_gain)
        << ',' << format_double(g.region_gain) << ','
        << format_double(g.combined_gain) << '\n';
  }
  detail::write_text_file(path, out.str());
}

}  // namespace libags
