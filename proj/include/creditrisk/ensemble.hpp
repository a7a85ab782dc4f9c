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
#ifndef CREDITRISK_ENSEMBLE_HPP_
#define CREDITRISK_ENSEMBLE_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "creditrisk/learners.hpp"

namespace creditrisk {

/// The five tree families the vote ensemble combines.
inline constexpr std::array<Family, 5> kCombFamilies = {
    Family::kDt, Family::kRf, Family::kBag, Family::kAda, Family::kGb,
};

/// Hard-vote committee of ten members: for each tree family one model under
/// the documented defaults and one under grid-tuned hyperparameters. A row
/// is classified as a default when at least vote_threshold members say so.
struct CombModel {
  std::vector<TrainedModel> members;  // per family: default, then tuned
  int vote_threshold = 3;
};

/// Throws if the member layout or threshold breaks the committee contract.
void validate_comb(const CombModel& model);

/// Small built-in tuning grid per family; the first entry is always the
/// family default so tuning can never do worse than defaults on the
/// validation split.
std::vector<HyperParams> default_grid(Family f);

/// Trains the ten members. `grids` may override the tuning grid per family;
/// families not present use default_grid. Member training failures carry
/// the member's name.
CombModel comb_fit(const LabeledDataset& ds,
                   const std::map<Family, std::vector<HyperParams>>& grids,
                   int vote_threshold, std::uint64_t seed,
                   double tune_fraction = 0.3,
                   const Presorted* pre = nullptr);

/// 1 iff at least `vote_threshold` of the votes are 1.
int aggregate_votes(std::span<const int> votes, int vote_threshold);

std::vector<int> comb_predict(const CombModel& model, const MatrixView& rows);

}  // namespace creditrisk

#endif  // CREDITRISK_ENSEMBLE_HPP_
