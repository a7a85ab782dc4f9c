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
#include "creditrisk/ensemble.hpp"

#include <string>

#include "creditrisk/errors.hpp"
#include "creditrisk/rng.hpp"

namespace creditrisk {

void validate_comb(const CombModel& model) {
  if (model.members.size() != 2 * kCombFamilies.size()) {
    throw DataError("committee must have exactly 10 members, has " +
                    std::to_string(model.members.size()));
  }
  for (std::size_t fi = 0; fi < kCombFamilies.size(); ++fi) {
    for (std::size_t v = 0; v < 2; ++v) {
      const TrainedModel& m = model.members[2 * fi + v];
      if (m.family != kCombFamilies[fi]) {
        throw DataError("member " + std::to_string(2 * fi + v) +
                        " has family " + family_name(m.family) +
                        ", expected " + family_name(kCombFamilies[fi]));
      }
      if (m.feature_names != model.members[0].feature_names) {
        throw DataError("member " + std::to_string(2 * fi + v) +
                        " disagrees on feature names");
      }
    }
  }
  if (model.vote_threshold < 1 ||
      model.vote_threshold > static_cast<int>(model.members.size())) {
    throw ConfigError("vote_threshold must be in 1..10");
  }
}

std::vector<HyperParams> default_grid(Family f) {
  std::vector<HyperParams> grid;
  grid.push_back(HyperParams::defaults_for(f));
  switch (f) {
    case Family::kDt: {
      HyperParams a = grid[0];
      a.max_depth = 8;
      a.min_leaf = 5;
      grid.push_back(a);
      HyperParams b = grid[0];
      b.max_depth = 12;
      b.min_leaf = 2;
      grid.push_back(b);
      HyperParams c = grid[0];
      c.max_depth = 5;
      c.min_leaf = 10;
      grid.push_back(c);
      break;
    }
    case Family::kRf: {
      HyperParams a = grid[0];
      a.max_depth = 14;
      a.min_leaf = 3;
      grid.push_back(a);
      HyperParams b = grid[0];
      b.features_per_split = 16;
      grid.push_back(b);
      break;
    }
    case Family::kBag: {
      HyperParams a = grid[0];
      a.max_depth = 14;
      a.min_leaf = 3;
      grid.push_back(a);
      HyperParams b = grid[0];
      b.min_leaf = 10;
      grid.push_back(b);
      break;
    }
    case Family::kAda: {
      HyperParams a = grid[0];
      a.n_rounds = 100;
      grid.push_back(a);
      HyperParams b = grid[0];
      b.base_depth = 2;
      grid.push_back(b);
      HyperParams c = grid[0];
      c.n_rounds = 100;
      c.base_depth = 2;
      grid.push_back(c);
      break;
    }
    case Family::kGb: {
      HyperParams a = grid[0];
      a.n_rounds = 200;
      a.learning_rate = 0.05;
      grid.push_back(a);
      HyperParams b = grid[0];
      b.base_depth = 4;
      grid.push_back(b);
      break;
    }
    default:
      break;
  }
  return grid;
}

CombModel comb_fit(const LabeledDataset& ds,
                   const std::map<Family, std::vector<HyperParams>>& grids,
                   int vote_threshold, std::uint64_t seed,
                   double tune_fraction, const Presorted* pre) {
  if (vote_threshold < 1 || vote_threshold > 10) {
    throw ConfigError("vote_threshold must be in 1..10");
  }
  if (ds.count_label(0) == 0 || ds.count_label(1) == 0) {
    throw TrainError("committee training needs both classes present");
  }
  Presorted local;
  if (pre == nullptr) {
    local = Presorted::build(MatrixView::of(ds));
    pre = &local;
  }

  CombModel model;
  model.vote_threshold = vote_threshold;
  model.members.reserve(2 * kCombFamilies.size());
  for (std::size_t fi = 0; fi < kCombFamilies.size(); ++fi) {
    const Family family = kCombFamilies[fi];
    try {
      model.members.push_back(
          fit_model(family, ds, HyperParams::defaults_for(family),
                    derive_seed(seed, "member", 2 * fi), pre));
    } catch (const std::exception& e) {
      throw TrainError(family_name(family) + " (default): " + e.what());
    }
    try {
      const auto it = grids.find(family);
      const std::vector<HyperParams>& grid =
          it != grids.end() ? it->second : default_grid(family);
      const HyperParams best =
          tune(family, ds, grid, tune_fraction, derive_seed(seed, "tune", fi));
      model.members.push_back(fit_model(
          family, ds, best, derive_seed(seed, "member", 2 * fi + 1), pre));
    } catch (const std::exception& e) {
      throw TrainError(family_name(family) + " (tuned): " + e.what());
    }
  }
  validate_comb(model);
  return model;
}

int aggregate_votes(std::span<const int> votes, int vote_threshold) {
  int sum = 0;
  for (const int v : votes) sum += v;
  return sum >= vote_threshold ? 1 : 0;
}

std::vector<int> comb_predict(const CombModel& model, const MatrixView& rows) {
  validate_comb(model);
  if (rows.rows > 0 && rows.cols != model.members[0].feature_names.size()) {
    throw DataError(
        "predict: expected " +
        std::to_string(model.members[0].feature_names.size()) +
        " features, got " + std::to_string(rows.cols));
  }
  // Collect each member's prediction once per row block, then threshold.
  std::vector<int> sums(rows.rows, 0);
  for (const TrainedModel& member : model.members) {
    const std::vector<int> p = predict(member, rows);
    for (std::size_t i = 0; i < rows.rows; ++i) sums[i] += p[i];
  }
  std::vector<int> out(rows.rows);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    out[i] = sums[i] >= model.vote_threshold ? 1 : 0;
  }
  return out;
}

}  // namespace creditrisk
