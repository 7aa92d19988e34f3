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

#include "libags/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "libags/error.hpp"
#include "libags/rng.hpp"

namespace libags {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  // A trailing comma means one more empty field.
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Rows of trimmed fields, header first. Blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    for (auto& f : fields) f = trim(f);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
      table.line_numbers.push_back(line_no);
    }
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  if (!have_header) throw ParseError(path.string() + ": empty file");
  if (table.rows.empty()) throw ParseError(path.string() + ": no data rows");
  return table;
}

double parse_double(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + text +
                     "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw ValidationError("line " + std::to_string(line_no) +
                          ": non-finite value '" + text + "'");
  }
  return value;
}

ClassIndex parse_label(const std::string& text, std::size_t n_classes,
                       std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": label '" + text +
                     "' is not a non-negative integer");
  }
  if (value >= n_classes) {
    throw ValidationError("line " + std::to_string(line_no) + ": label " +
                          text + " is not below n_classes=" +
                          std::to_string(n_classes));
  }
  return value;
}

void check_width(const std::vector<std::string>& row, std::size_t expected,
                 std::size_t line_no) {
  if (row.size() != expected) {
    throw ParseError("line " + std::to_string(line_no) + ": expected " +
                     std::to_string(expected) + " fields, found " +
                     std::to_string(row.size()));
  }
}

void check_labels(const std::vector<ClassIndex>& labels, std::size_t n_classes,
                  std::size_t n_rows, const char* what) {
  if (n_classes < 2) throw ValidationError("n_classes must be at least 2");
  if (labels.size() != n_rows) {
    throw DimensionError(std::string(what) + " length " +
                         std::to_string(labels.size()) + " != rows " +
                         std::to_string(n_rows));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= n_classes) {
      throw ValidationError(std::string(what) + " " +
                            std::to_string(labels[i]) + " at row " +
                            std::to_string(i) + " is not below n_classes");
    }
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace

LabeledDataset::LabeledDataset(FeatureMatrix features_in,
                               std::vector<ClassIndex> labels_in,
                               std::size_t n_classes_in)
    : features(std::move(features_in)),
      labels(std::move(labels_in)),
      n_classes(n_classes_in) {
  check_labels(labels, n_classes, features.n_rows(), "label");
}

CandidatePool::CandidatePool(FeatureMatrix features_in,
                             std::vector<ClassIndex> proposed_in,
                             std::vector<std::string> ids_in,
                             std::size_t n_classes_in)
    : features(std::move(features_in)),
      proposed_labels(std::move(proposed_in)),
      source_ids(std::move(ids_in)),
      n_classes(n_classes_in) {
  check_labels(proposed_labels, n_classes, features.n_rows(),
               "proposed_label");
  if (source_ids.size() != proposed_labels.size()) {
    throw DimensionError("source_ids length does not match row count");
  }
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

LabeledDataset load_labeled_csv(const std::filesystem::path& path,
                                std::size_t n_classes) {
  const CsvTable table = read_csv(path);
  const auto& header = table.header;
  if (header.size() < 2 || header.back() != "label") {
    throw SchemaError(path.string() +
                      ": header must list feature columns then 'label'");
  }
  const std::size_t d = header.size() - 1;
  std::vector<double> values;
  values.reserve(table.rows.size() * d);
  std::vector<ClassIndex> labels;
  labels.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::size_t line_no = table.line_numbers[i];
    check_width(row, header.size(), line_no);
    for (std::size_t c = 0; c < d; ++c) {
      values.push_back(parse_double(row[c], line_no));
    }
    labels.push_back(parse_label(row[d], n_classes, line_no));
  }
  const std::size_t n = labels.size();
  return LabeledDataset(FeatureMatrix(n, d, std::move(values)),
                        std::move(labels), n_classes);
}

void write_labeled_csv(const std::filesystem::path& path,
                       const LabeledDataset& dataset) {
  auto out = open_for_write(path);
  const std::size_t d = dataset.features.n_cols();
  for (std::size_t c = 0; c < d; ++c) out << 'x' << c << ',';
  out << "label\n";
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    for (double v : dataset.features.row(r)) out << format_double(v) << ',';
    out << dataset.labels[r] << '\n';
  }
  finish_write(out, path);
}

CandidatePool load_candidate_csv(const std::filesystem::path& path,
                                 std::size_t n_classes) {
  const CsvTable table = read_csv(path);
  const auto& header = table.header;
  const auto label_it =
      std::find(header.begin(), header.end(), "proposed_label");
  if (label_it == header.end()) {
    throw SchemaError(path.string() + ": missing 'proposed_label' column");
  }
  const auto label_col = static_cast<std::size_t>(label_it - header.begin());
  const bool has_ids = label_col + 2 == header.size();
  if (label_col < 1 || (label_col + 1 != header.size() && !has_ids) ||
      (has_ids && header.back() != "source_id")) {
    throw SchemaError(path.string() +
                      ": header must list feature columns, 'proposed_label',"
                      " then optional 'source_id'");
  }
  const std::size_t d = label_col;
  std::vector<double> values;
  values.reserve(table.rows.size() * d);
  std::vector<ClassIndex> labels;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::size_t line_no = table.line_numbers[i];
    check_width(row, header.size(), line_no);
    for (std::size_t c = 0; c < d; ++c) {
      values.push_back(parse_double(row[c], line_no));
    }
    labels.push_back(parse_label(row[d], n_classes, line_no));
    ids.push_back(has_ids ? row[d + 1] : std::to_string(i));
  }
  const std::size_t n = labels.size();
  return CandidatePool(FeatureMatrix(n, d, std::move(values)),
                       std::move(labels), std::move(ids), n_classes);
}

void write_candidate_csv(const std::filesystem::path& path,
                         const CandidatePool& pool) {
  auto out = open_for_write(path);
  const std::size_t d = pool.features.n_cols();
  for (std::size_t c = 0; c < d; ++c) out << 'x' << c << ',';
  out << "proposed_label,source_id\n";
  for (std::size_t r = 0; r < pool.size(); ++r) {
    for (double v : pool.features.row(r)) out << format_double(v) << ',';
    out << pool.proposed_labels[r] << ',' << pool.source_ids[r] << '\n';
  }
  finish_write(out, path);
}

Matrix load_numeric_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const std::size_t cols = table.header.size();
  Matrix out(table.rows.size(), cols);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    check_width(table.rows[i], cols, table.line_numbers[i]);
    for (std::size_t c = 0; c < cols; ++c) {
      out(i, c) = parse_double(table.rows[i][c], table.line_numbers[i]);
    }
  }
  return out;
}

bool in_two_moons_gap(double x, const TwoMoonsConfig& cfg) {
  return std::abs(x - cfg.gap_center) < cfg.gap_halfwidth;
}

namespace {

struct Point {
  double x;
  double y;
};

// Noise-free point on the half circle of class `c` at angle t in [0, pi].
Point moon_point(ClassIndex c, double t) {
  if (c == 0) return {std::cos(t), std::sin(t)};
  return {1.0 - std::cos(t), 0.5 - std::sin(t)};
}

Point noisy_moon_point(ClassIndex c, double noise_sd, Rng& rng) {
  const Point p = moon_point(c, std::numbers::pi * rng.uniform());
  return {p.x + noise_sd * rng.normal(), p.y + noise_sd * rng.normal()};
}

// A point on class c's half circle whose horizontal coordinate is uniform in
// the gap band. Only the vertical noise is unconstrained; horizontal noise is
// redrawn until the point stays inside the band.
Point gap_moon_point(ClassIndex c, const TwoMoonsConfig& cfg, Rng& rng) {
  const double lo = cfg.gap_center - cfg.gap_halfwidth;
  const double x = rng.uniform(lo, cfg.gap_center + cfg.gap_halfwidth);
  // Class 0 has x = cos t, class 1 has x = 1 - cos t.
  const double t = std::acos(std::clamp(c == 0 ? x : 1.0 - x, -1.0, 1.0));
  const double y = moon_point(c, t).y + cfg.noise_sd * rng.normal();
  double nx = x;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double trial = x + cfg.noise_sd * rng.normal();
    if (in_two_moons_gap(trial, cfg)) {
      nx = trial;
      break;
    }
  }
  return {nx, y};
}

LabeledDataset to_dataset(const std::vector<Point>& pts,
                          std::vector<ClassIndex> labels) {
  std::vector<double> values;
  values.reserve(2 * pts.size());
  for (const auto& p : pts) {
    values.push_back(p.x);
    values.push_back(p.y);
  }
  return LabeledDataset(FeatureMatrix(pts.size(), 2, std::move(values)),
                        std::move(labels), 2);
}

}  // namespace

TwoMoons make_two_moons(const TwoMoonsConfig& cfg) {
  if (cfg.n_per_class < 10) {
    throw PreconditionError("two moons needs n_per_class >= 10");
  }
  if (!(cfg.noise_sd >= 0.0)) {
    throw PreconditionError("two moons needs noise_sd >= 0");
  }
  if (!(cfg.gap_halfwidth >= 0.0 && cfg.gap_halfwidth < 1.0)) {
    throw PreconditionError("two moons needs 0 <= gap_halfwidth < 1");
  }

  std::vector<Point> train_pts;
  std::vector<ClassIndex> train_labels;
  Rng train_rng(cfg.seed, streams::kTwoMoonsTrain);
  for (ClassIndex c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < cfg.n_per_class; ++i) {
      const Point p = noisy_moon_point(c, cfg.noise_sd, train_rng);
      if (in_two_moons_gap(p.x, cfg)) continue;
      train_pts.push_back(p);
      train_labels.push_back(c);
    }
  }

  std::vector<Point> test_pts;
  std::vector<ClassIndex> test_labels;
  Rng test_rng(cfg.seed, streams::kTwoMoonsTest);
  for (ClassIndex c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < cfg.n_per_class; ++i) {
      test_pts.push_back(noisy_moon_point(c, cfg.noise_sd, test_rng));
      test_labels.push_back(c);
    }
  }

  const std::size_t half = cfg.n_per_class / 2;
  const std::size_t n_boundary =
      cfg.boundary_per_class ? cfg.boundary_per_class : half;
  const std::size_t n_support =
      cfg.support_per_class ? cfg.support_per_class : half;
  const std::size_t n_off = cfg.off_support ? cfg.off_support : half;

  std::vector<Point> cand_pts;
  std::vector<ClassIndex> cand_labels;
  std::vector<std::string> cand_ids;
  Rng cand_rng(cfg.seed, streams::kTwoMoonsCandidates);
  for (ClassIndex c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < n_boundary; ++i) {
      cand_ids.push_back("boundary-" + std::to_string(cand_pts.size()));
      cand_pts.push_back(gap_moon_point(c, cfg, cand_rng));
      cand_labels.push_back(c);
    }
  }
  for (ClassIndex c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < n_support; ++i) {
      cand_ids.push_back("support-" + std::to_string(cand_pts.size()));
      cand_pts.push_back(noisy_moon_point(c, cfg.noise_sd, cand_rng));
      cand_labels.push_back(c);
    }
  }
  // Box around the real data, inflated to twice its range on each axis.
  Point lo{train_pts[0].x, train_pts[0].y};
  Point hi = lo;
  for (const auto& p : train_pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const Point range{hi.x - lo.x, hi.y - lo.y};
  for (std::size_t i = 0; i < n_off; ++i) {
    cand_ids.push_back("offsupport-" + std::to_string(cand_pts.size()));
    const double x = cand_rng.uniform(lo.x - range.x / 2, hi.x + range.x / 2);
    const double y = cand_rng.uniform(lo.y - range.y / 2, hi.y + range.y / 2);
    cand_pts.push_back({x, y});
    cand_labels.push_back(cand_rng.below(2));
  }

  LabeledDataset cand_ds = to_dataset(cand_pts, cand_labels);
  return TwoMoons{
      to_dataset(train_pts, std::move(train_labels)),
      to_dataset(test_pts, std::move(test_labels)),
      CandidatePool(std::move(cand_ds.features), std::move(cand_labels),
                    std::move(cand_ids), 2)};
}

}  // namespace libags
