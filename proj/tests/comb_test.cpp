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
#include <bit>
#include <cstdint>
#include <vector>

#include "creditrisk/ensemble.hpp"
#include "creditrisk/errors.hpp"
#include "creditrisk/rng.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace creditrisk;
using testsupport::make_dataset;
using testsupport::random_consistent;

namespace {

LabeledDataset committee_fixture() {
  Rng rng(606);
  LabeledDataset ds = random_consistent(48, 4, rng);
  // Ensure a handful of rows per class so the internal tuning split works.
  int flips = 0;
  for (std::size_t i = 0; i < ds.n_rows() && ds.count_label(1) < 6; ++i) {
    if (ds.labels[i] == 0) {
      ds.labels[i] = 1;
      ++flips;
    }
  }
  (void)flips;
  return ds;
}

}  // namespace

TEST_SUITE_BEGIN("committee");

TEST_CASE("vote aggregation matches the popcount rule exhaustively") {
  for (std::uint32_t mask = 0; mask < 1024; ++mask) {
    std::vector<int> votes(10);
    for (int b = 0; b < 10; ++b) votes[b] = (mask >> b) & 1u;
    const int ones = std::popcount(mask);
    for (int k = 1; k <= 10; ++k) {
      CHECK(aggregate_votes(votes, k) == (ones >= k ? 1 : 0));
    }
  }
}

TEST_CASE("the committee trains one default and one tuned member per family") {
  const auto ds = committee_fixture();
  const CombModel model = comb_fit(ds, {}, 3, 2026);
  CHECK_NOTHROW(validate_comb(model));
  REQUIRE(model.members.size() == 10);
  CHECK(model.vote_threshold == 3);
  for (std::size_t f = 0; f < kCombFamilies.size(); ++f) {
    CHECK(model.members[2 * f].family == kCombFamilies[f]);
    CHECK(model.members[2 * f + 1].family == kCombFamilies[f]);
    CHECK(model.members[2 * f].hp ==
          HyperParams::defaults_for(kCombFamilies[f]));
  }
}

TEST_CASE("committee prediction is the member-vote threshold rule") {
  const auto ds = committee_fixture();
  const CombModel model = comb_fit(ds, {}, 3, 77);
  const MatrixView x = MatrixView::of(ds);
  const std::vector<int> got = comb_predict(model, x);
  REQUIRE(got.size() == ds.n_rows());
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    int votes = 0;
    for (const TrainedModel& m : model.members) {
      votes += m.predict_row(ds.row(i));
    }
    CHECK(got[i] == (votes >= 3 ? 1 : 0));
  }
}

TEST_CASE("single-candidate grids pin the tuned member to the defaults") {
  const auto ds = committee_fixture();
  std::map<Family, std::vector<HyperParams>> grids;
  for (Family f : kCombFamilies) {
    grids[f] = {HyperParams::defaults_for(f)};
  }
  const CombModel model = comb_fit(ds, grids, 3, 55);
  for (std::size_t f = 0; f < kCombFamilies.size(); ++f) {
    CHECK(model.members[2 * f + 1].hp ==
          HyperParams::defaults_for(kCombFamilies[f]));
  }
}

TEST_CASE("default grids start at the family defaults") {
  for (Family f : kCombFamilies) {
    const auto grid = default_grid(f);
    REQUIRE(!grid.empty());
    CHECK(grid.front() == HyperParams::defaults_for(f));
  }
}

TEST_CASE("vote threshold bounds") {
  const auto ds = committee_fixture();
  CHECK_THROWS_AS(comb_fit(ds, {}, 0, 1), ConfigError);
  CHECK_THROWS_AS(comb_fit(ds, {}, 11, 1), ConfigError);
  CHECK_NOTHROW(comb_fit(ds, {}, 10, 1));
}

TEST_CASE("member layout is enforced on load or assembly") {
  const auto ds = committee_fixture();
  CombModel model = comb_fit(ds, {}, 3, 9);

  SUBCASE("truncated committee") {
    model.members.pop_back();
    CHECK_THROWS_AS(validate_comb(model), DataError);
  }
  SUBCASE("member from the wrong family") {
    model.members[0].family = Family::kLog;
    CHECK_THROWS_AS(validate_comb(model), DataError);
  }
  SUBCASE("threshold out of range") {
    model.vote_threshold = 0;
    CHECK_THROWS_AS(validate_comb(model), ConfigError);
  }
}

TEST_CASE("member training failures name the failing member") {
  LabeledDataset tiny = make_dataset({{0}, {1}}, {0, 1});
  // Two rows cannot be split into a tuning train/validation pair, and the
  // first member to hit that wall is the tuned tree.
  CHECK_THROWS_WITH_AS(comb_fit(tiny, {}, 3, 1),
                       doctest::Contains("DT (tuned)"), TrainError);
}

TEST_CASE("training requires both classes") {
  LabeledDataset ones = make_dataset({{0}, {1}, {2}}, {1, 1, 1});
  CHECK_THROWS_WITH_AS(comb_fit(ones, {}, 3, 1),
                       doctest::Contains("both classes"), TrainError);
}

TEST_SUITE_END();
