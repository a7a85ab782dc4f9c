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
#ifndef CREDITRISK_TESTS_TEST_SUPPORT_HPP_
#define CREDITRISK_TESTS_TEST_SUPPORT_HPP_

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "creditrisk/dataset.hpp"
#include "creditrisk/domain.hpp"
#include "creditrisk/rng.hpp"

namespace creditrisk::testsupport {

inline std::vector<std::string> feature_letters(std::size_t p) {
  std::vector<std::string> names;
  names.reserve(p);
  for (std::size_t j = 0; j < p; ++j) names.push_back("f" + std::to_string(j));
  return names;
}

/// Small in-memory dataset; firms are named r0, r1, ... and share segment
/// (1, 1) unless segments are given.
inline LabeledDataset make_dataset(std::vector<std::vector<double>> rows,
                                   std::vector<int> labels,
                                   std::vector<Segment> segments = {}) {
  LabeledDataset ds;
  ds.feature_names = feature_letters(rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Segment seg = segments.empty() ? Segment{1, 1} : segments[i];
    ds.append_row(rows[i], labels[i], "r" + std::to_string(i), seg);
  }
  return ds;
}

/// Random dataset whose rows are pairwise distinct, so any labeling is
/// consistent and an unconstrained tree can reach zero training error.
/// Cells sit on a 64-level 0.25-grid, so even one feature admits n <= 64.
inline LabeledDataset random_consistent(std::size_t n, std::size_t p,
                                        Rng& rng) {
  std::set<std::vector<double>> seen;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  while (rows.size() < n) {
    std::vector<double> row(p);
    for (auto& v : row) {
      v = static_cast<double>(rng.uniform_below(64)) * 0.25;
    }
    if (!seen.insert(row).second) continue;
    labels.push_back(static_cast<int>(rng.uniform_below(2)));
    rows.push_back(std::move(row));
  }
  // Both classes must appear; flip the first row if needed.
  bool has0 = false, has1 = false;
  for (int y : labels) (y ? has1 : has0) = true;
  if (!has0) labels[0] = 0;
  if (!has1) labels[0] = 1;
  return make_dataset(std::move(rows), std::move(labels));
}

/// A quarterly record that satisfies every domain invariant; troubled
/// exposure is `troubled_ratio` of the used amount (placed in past-due).
inline FirmQuarterRecord make_record(const std::string& firm, int year,
                                     int quarter, double troubled_ratio = 0.0,
                                     double used = 80000.0) {
  FirmQuarterRecord rec;
  rec.firm_id = firm;
  rec.quarter = {year, quarter};
  rec.granted = 100000.0;
  rec.used = used;
  rec.bank_class = troubled_ratio > 0.05 ? 1 : 0;
  rec.avg_used = used * 0.9;
  rec.overdraft = 5000.0;
  rec.margins = 2000.0;
  rec.past_due_amt = used * troubled_ratio;
  rec.collateralized_amt = used * 0.4;
  rec.protection_value = used * 0.3;
  return rec;
}

/// Panel spanning 2012Q4..2014Q4 (the default generator window) where the
/// firm's troubled-exposure ratio is `ratio(year, quarter)`.
template <typename RatioFn>
FirmPanel make_panel(const std::string& firm, RatioFn ratio) {
  FirmPanel panel;
  panel.firm_id = firm;
  panel.segment = {2, 3};
  YearQuarter yq{2012, 4};
  for (int q = 0; q < 9; ++q) {
    panel.quarters.push_back(make_record(firm, yq.year, yq.quarter,
                                         ratio(yq.year, yq.quarter)));
    yq = yq.next();
  }
  return panel;
}

/// Unique scratch directory under the system temp root.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("creditrisk_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace creditrisk::testsupport

#endif  // CREDITRISK_TESTS_TEST_SUPPORT_HPP_
