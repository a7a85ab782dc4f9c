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
#ifndef CREDITRISK_FEATURES_HPP_
#define CREDITRISK_FEATURES_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "creditrisk/dataset.hpp"
#include "creditrisk/domain.hpp"

namespace creditrisk {

// The prediction window: the reference year's last quarter is the
// observation point, features cover this many trailing quarters, and the
// target looks at the four quarters of the following year.
inline constexpr int kWindowQuarters = 5;
inline constexpr int kLoanAttributes = 12;
inline constexpr int kBalanceAttributes = 7;

/// Rows dropped while building features, by reason.
struct SkipReport {
  std::size_t missing_window = 0;    // gap inside the 5-quarter window
  std::size_t missing_horizon = 0;   // reference Q4 or target-year quarter absent
  std::size_t already_default = 0;   // in default at the reference point

  std::size_t total() const {
    return missing_window + missing_horizon + already_default;
  }
};

struct FeatureBuildResult {
  LabeledDataset dataset;
  SkipReport skips;
};

/// Feature-column names for the configured mode: the 12 loan attributes for
/// each window quarter (L1_t0 .. L12_t4, t4 = reference Q4), and in balance
/// mode the 7 annual-accounts attributes plus a has_balance indicator.
std::vector<std::string> feature_names(bool use_balance);

/// One row per firm with a defined target at `reference_year`. Firms lacking
/// a balance sheet get zero-imputed B-columns and has_balance = 0.
FeatureBuildResult build_features(const std::vector<FirmPanel>& panels,
                                  int reference_year, bool use_balance,
                                  double threshold);

/// All positive rows plus an equal-count random sample of negative rows
/// (without replacement), in a seed-deterministic shuffled order.
LabeledDataset balanced_subsample(const LabeledDataset& ds,
                                  std::uint64_t seed);

/// Stratified split: each class lands within one row of `test_fraction`.
/// Returns (train, test); both preserve the input's row order.
std::pair<LabeledDataset, LabeledDataset> train_test_split(
    const LabeledDataset& ds, double test_fraction, std::uint64_t seed);

}  // namespace creditrisk

#endif  // CREDITRISK_FEATURES_HPP_
