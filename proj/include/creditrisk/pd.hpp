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
#ifndef CREDITRISK_PD_HPP_
#define CREDITRISK_PD_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "creditrisk/dataset.hpp"
#include "creditrisk/domain.hpp"

namespace creditrisk {

/// Segment key resolution: by sector alone, or by sector and geography.
enum class Granularity { kCoarse, kFine };

const char* granularity_name(Granularity g);

/// Per-segment probability-of-default estimates. baseline_pd is the default
/// share among the historical (training) firms of the segment; model_pd the
/// predicted-default share among the evaluated firms; realized_pd their
/// actual default share.
struct SegmentPdRow {
  Segment segment;        // geo_code = -1 in coarse rows
  std::size_t n_firms = 0;  // evaluated firms
  double baseline_pd = 0;
  double model_pd = 0;
  double realized_pd = 0;
};

/// Table-level comparison of the two estimators against the realized rates.
/// Mean and variance are over per-segment errors (absolute by default);
/// superiority shares always compare absolute errors and, with the tie
/// share, sum to one.
struct PdComparison {
  double baseline_mean_error = 0;
  double model_mean_error = 0;
  double baseline_var_error = 0;
  double model_var_error = 0;
  double baseline_superiority = 0;
  double model_superiority = 0;
  double tie_share = 0;
  std::size_t n_segments = 0;
};

struct SegmentPdReport {
  Granularity granularity = Granularity::kCoarse;
  bool signed_error = false;
  std::vector<SegmentPdRow> rows;  // ordered by (sector, geo)
  PdComparison comparison;
};

/// Default share of a segment's firms; absent for an empty segment.
std::optional<double> share_positive(std::span<const int> values);

/// Builds one granularity's report: segments present in both the historical
/// and the evaluated split are compared, the rest are excluded. Throws
/// DataError("empty segment set") when no segment survives, and on a
/// prediction/evaluation length mismatch.
SegmentPdReport segment_pd_report(const LabeledDataset& history,
                                  const LabeledDataset& evaluation,
                                  std::span<const int> predictions,
                                  Granularity granularity,
                                  bool signed_error = false);

/// `segment,granularity,n_firms,baseline_pd,model_pd,realized_pd` rows;
/// coarse segments print as "3", fine ones as "3:2".
std::string render_pd_csv(std::span<const SegmentPdReport> reports);

/// Mean error, error variance, and superiority shares per granularity.
std::string render_pd_summary_json(std::span<const SegmentPdReport> reports);

}  // namespace creditrisk

#endif  // CREDITRISK_PD_HPP_
