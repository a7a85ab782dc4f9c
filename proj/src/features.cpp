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
#include "creditrisk/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "creditrisk/errors.hpp"
#include "creditrisk/rng.hpp"

namespace creditrisk {

void LabeledDataset::append_row(std::span<const double> values, int label,
                                std::string firm_id, Segment segment) {
  if (values.size() != width())
    throw DataError("append_row: row width " + std::to_string(values.size()) +
                    " does not match dataset width " + std::to_string(width()));
  cells.insert(cells.end(), values.begin(), values.end());
  labels.push_back(label);
  firm_ids.push_back(std::move(firm_id));
  segments.push_back(segment);
}

LabeledDataset LabeledDataset::subset(
    std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.feature_names = feature_names;
  out.cells.reserve(indices.size() * width());
  out.labels.reserve(indices.size());
  out.firm_ids.reserve(indices.size());
  out.segments.reserve(indices.size());
  for (std::size_t i : indices) {
    auto r = row(i);
    out.cells.insert(out.cells.end(), r.begin(), r.end());
    out.labels.push_back(labels[i]);
    out.firm_ids.push_back(firm_ids[i]);
    out.segments.push_back(segments[i]);
  }
  return out;
}

std::size_t LabeledDataset::count_label(int label) const {
  return static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), label));
}

void LabeledDataset::validate() const {
  const std::size_t n = labels.size();
  if (firm_ids.size() != n || segments.size() != n)
    throw DataError("dataset: rows, labels, firm_ids, segments lengths differ");
  if (cells.size() != n * width())
    throw DataError("dataset: cell count does not match rows * width");
  for (double v : cells) {
    if (!std::isfinite(v)) throw DataError("dataset: non-finite cell");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw DataError("dataset: non-binary label");
  }
}

std::vector<std::string> feature_names(bool use_balance) {
  std::vector<std::string> names;
  for (int t = 0; t < kWindowQuarters; ++t) {
    for (int a = 1; a <= kLoanAttributes; ++a) {
      names.push_back("L" + std::to_string(a) + "_t" + std::to_string(t));
    }
  }
  if (use_balance) {
    // B4 is not part of the attribute set; annual-accounts ids keep their
    // register numbering.
    for (int b : {1, 2, 3, 5, 6, 7, 8}) names.push_back("B" + std::to_string(b));
    names.push_back("has_balance");
  }
  return names;
}

namespace {

void push_loan_attributes(const FirmQuarterRecord& rec,
                          std::vector<double>& out) {
  out.push_back(rec.granted);
  out.push_back(rec.used);
  out.push_back(static_cast<double>(rec.bank_class));
  out.push_back(rec.avg_used);
  out.push_back(rec.overdraft);
  out.push_back(rec.margins);
  out.push_back(rec.past_due_amt);
  out.push_back(rec.problematic_amt);
  out.push_back(rec.nonperforming_amt);
  out.push_back(rec.collateralized_amt);
  out.push_back(rec.protection_value);
  out.push_back(rec.forborne_amt);
}

}  // namespace

FeatureBuildResult build_features(const std::vector<FirmPanel>& panels,
                                  int reference_year, bool use_balance,
                                  double threshold) {
  FeatureBuildResult result;
  result.dataset.feature_names = feature_names(use_balance);
  std::vector<double> row;
  row.reserve(result.dataset.width());

  for (const auto& panel : panels) {
    auto target = make_target(panel, reference_year, threshold);
    if (!target.has_value()) {
      const FirmQuarterRecord* ref = panel.find_quarter({reference_year, 4});
      if (ref != nullptr &&
          adjusted_default_status(*ref, threshold).in_default) {
        ++result.skips.already_default;
      } else {
        ++result.skips.missing_horizon;
      }
      continue;
    }

    // Window quarters t0..t4 = (reference_year - 1, Q4) .. (reference_year, Q4).
    const FirmQuarterRecord* window[kWindowQuarters];
    YearQuarter yq{reference_year - 1, 4};
    bool gap = false;
    for (int t = 0; t < kWindowQuarters; ++t) {
      window[t] = panel.find_quarter(yq);
      if (window[t] == nullptr) gap = true;
      yq = yq.next();
    }
    if (gap) {
      ++result.skips.missing_window;
      continue;
    }

    row.clear();
    for (const auto* rec : window) push_loan_attributes(*rec, row);
    if (use_balance) {
      const BalanceSheetRecord* bs = panel.find_balance_sheet(reference_year);
      if (bs != nullptr) {
        row.push_back(bs->revenues);
        row.push_back(bs->roe);
        row.push_back(bs->roa);
        row.push_back(bs->turnover);
        row.push_back(bs->total_assets);
        row.push_back(bs->fin_charges_over_op_margin);
        row.push_back(bs->ebitda);
        row.push_back(1.0);
      } else {
        for (int i = 0; i < kBalanceAttributes; ++i) row.push_back(0.0);
        row.push_back(0.0);
      }
    }
    result.dataset.append_row(row, *target, panel.firm_id, panel.segment);
  }
  return result;
}

LabeledDataset balanced_subsample(const LabeledDataset& ds,
                                  std::uint64_t seed) {
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    (ds.labels[i] != 0 ? positives : negatives).push_back(i);
  }
  if (positives.empty() || negatives.empty())
    throw DataError("cannot balance: a class is empty");
  if (positives.size() > negatives.size())
    throw DataError("cannot balance: minority is majority");

  Rng rng(derive_seed(seed, "balanced_subsample"));
  rng.shuffle(negatives);
  negatives.resize(positives.size());

  std::vector<std::size_t> chosen;
  chosen.reserve(2 * positives.size());
  chosen.insert(chosen.end(), positives.begin(), positives.end());
  chosen.insert(chosen.end(), negatives.begin(), negatives.end());
  rng.shuffle(chosen);
  return ds.subset(chosen);
}

std::pair<LabeledDataset, LabeledDataset> train_test_split(
    const LabeledDataset& ds, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ConfigError("test_fraction must be in (0, 1)");

  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    by_class[ds.labels[i] != 0 ? 1 : 0].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2)
      throw DataError("train_test_split: class " + std::to_string(c) +
                      " has fewer than 2 rows");
  }

  std::vector<char> in_test(ds.n_rows(), 0);
  for (int c = 0; c < 2; ++c) {
    auto& idx = by_class[c];
    Rng rng(derive_seed(seed, "split_class", static_cast<std::uint64_t>(c)));
    rng.shuffle(idx);
    auto n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(idx.size())));
    n_test = std::clamp<std::size_t>(n_test, 1, idx.size() - 1);
    for (std::size_t i = 0; i < n_test; ++i) in_test[idx[i]] = 1;
  }

  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    (in_test[i] ? test_idx : train_idx).push_back(i);
  }
  return {ds.subset(train_idx), ds.subset(test_idx)};
}

}  // namespace creditrisk
