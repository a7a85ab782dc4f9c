/*
 * Copyright 2026 The creditrisk Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "creditrisk/pd.hpp"

#include <cmath>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "creditrisk/errors.hpp"
#include "creditrisk/util.hpp"

namespace creditrisk {
namespace {

struct SegmentTally {
  std::size_t hist_n = 0;
  std::size_t hist_pos = 0;
  std::size_t eval_n = 0;
  std::size_t eval_pred = 0;
  std::size_t eval_pos = 0;
};

Segment key_of(const Segment& s, Granularity g) {
  return g == Granularity::kCoarse ? Segment{s.sector_code, -1} : s;
}

std::string segment_text(const Segment& s) {
  std::string out = std::to_string(s.sector_code);
  if (s.geo_code >= 0) out += ":" + std::to_string(s.geo_code);
  return out;
}

double mean(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double population_variance(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

nlohmann::json comparison_json(const SegmentPdReport& report) {
  const PdComparison& c = report.comparison;
  nlohmann::json j;
  j["n_segments"] = c.n_segments;
  j["error_kind"] = report.signed_error ? "signed" : "absolute";
  j["baseline"] = {{"mean_error", format_double(c.baseline_mean_error)},
                   {"var_error", format_double(c.baseline_var_error)},
                   {"superiority", format_double(c.baseline_superiority)}};
  j["model"] = {{"mean_error", format_double(c.model_mean_error)},
                {"var_error", format_double(c.model_var_error)},
                {"superiority", format_double(c.model_superiority)}};
  j["ties"] = format_double(c.tie_share);
  return j;
}

}  // namespace

const char* granularity_name(Granularity g) {
  return g == Granularity::kCoarse ? "coarse" : "fine";
}

std::optional<double> share_positive(std::span<const int> values) {
  if (values.empty()) return std::nullopt;
  std::size_t pos = 0;
  for (int v : values) {
    if (v != 0) ++pos;
  }
  return static_cast<double>(pos) / static_cast<double>(values.size());
}

SegmentPdReport segment_pd_report(const LabeledDataset& history,
                                  const LabeledDataset& evaluation,
                                  std::span<const int> predictions,
                                  Granularity granularity, bool signed_error) {
  if (predictions.size() != evaluation.n_rows())
    throw DataError("segment report: " + std::to_string(predictions.size()) +
                    " predictions for " + std::to_string(evaluation.n_rows()) +
                    " evaluated rows");

  std::map<Segment, SegmentTally> tallies;
  for (std::size_t i = 0; i < history.n_rows(); ++i) {
    SegmentTally& t = tallies[key_of(history.segments[i], granularity)];
    ++t.hist_n;
    if (history.labels[i] != 0) ++t.hist_pos;
  }
  for (std::size_t i = 0; i < evaluation.n_rows(); ++i) {
    SegmentTally& t = tallies[key_of(evaluation.segments[i], granularity)];
    ++t.eval_n;
    if (predictions[i] != 0) ++t.eval_pred;
    if (evaluation.labels[i] != 0) ++t.eval_pos;
  }

  SegmentPdReport report;
  report.granularity = granularity;
  report.signed_error = signed_error;
  std::vector<double> baseline_errors;
  std::vector<double> model_errors;
  std::size_t baseline_wins = 0;
  std::size_t model_wins = 0;
  for (const auto& [segment, t] : tallies) {
    if (t.hist_n == 0 || t.eval_n == 0) continue;  // not comparable
    SegmentPdRow row;
    row.segment = segment;
    row.n_firms = t.eval_n;
    row.baseline_pd =
        static_cast<double>(t.hist_pos) / static_cast<double>(t.hist_n);
    row.model_pd =
        static_cast<double>(t.eval_pred) / static_cast<double>(t.eval_n);
    row.realized_pd =
        static_cast<double>(t.eval_pos) / static_cast<double>(t.eval_n);

    const double eb = row.baseline_pd - row.realized_pd;
    const double em = row.model_pd - row.realized_pd;
    baseline_errors.push_back(signed_error ? eb : std::fabs(eb));
    model_errors.push_back(signed_error ? em : std::fabs(em));
    if (std::fabs(eb) < std::fabs(em)) {
      ++baseline_wins;
    } else if (std::fabs(em) < std::fabs(eb)) {
      ++model_wins;
    }
    report.rows.push_back(row);
  }
  if (report.rows.empty()) throw DataError("empty segment set");

  PdComparison& c = report.comparison;
  c.n_segments = report.rows.size();
  c.baseline_mean_error = mean(baseline_errors);
  c.model_mean_error = mean(model_errors);
  c.baseline_var_error = population_variance(baseline_errors);
  c.model_var_error = population_variance(model_errors);
  const double n = static_cast<double>(c.n_segments);
  c.baseline_superiority = static_cast<double>(baseline_wins) / n;
  c.model_superiority = static_cast<double>(model_wins) / n;
  c.tie_share =
      static_cast<double>(c.n_segments - baseline_wins - model_wins) / n;
  return report;
}

std::string render_pd_csv(std::span<const SegmentPdReport> reports) {
  std::string out = "segment,granularity,n_firms,baseline_pd,model_pd,realized_pd\n";
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      out += segment_text(row.segment);
      out += ",";
      out += granularity_name(report.granularity);
      out += "," + std::to_string(row.n_firms);
      out += "," + format_double(row.baseline_pd);
      out += "," + format_double(row.model_pd);
      out += "," + format_double(row.realized_pd);
      out += "\n";
    }
  }
  return out;
}

std::string render_pd_summary_json(std::span<const SegmentPdReport> reports) {
  nlohmann::json j;
  j["version"] = 1;
  for (const auto& report : reports)
    j[granularity_name(report.granularity)] = comparison_json(report);
  return j.dump(2) + "\n";
}

}  // namespace creditrisk
