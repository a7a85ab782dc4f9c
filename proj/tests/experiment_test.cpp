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
#include <string>
#include <vector>

#include "creditrisk/errors.hpp"
#include "creditrisk/experiment.hpp"
#include "creditrisk/features.hpp"
#include "creditrisk/rng.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace creditrisk;
using testsupport::make_panel;

namespace {

// A population where every third firm defaults during the following year,
// with a usage pattern that separates the classes well enough to train on.
std::vector<FirmPanel> panel_population(int n_firms) {
  std::vector<FirmPanel> panels;
  panels.reserve(static_cast<std::size_t>(n_firms));
  for (int i = 0; i < n_firms; ++i) {
    const bool bad = i % 3 == 0;
    const int dq = 1 + i % 4;
    FirmPanel p = make_panel("F" + std::to_string(i), [&](int y, int q) {
      if (!bad) return 0.0;
      if (y == 2014 && q >= dq) return 0.20;
      if (y == 2013 && q >= 3) return 0.04;  // early warning under threshold
      return 0.0;
    });
    // Give the learners a continuous signal correlated with the label,
    // keeping each record's troubled-exposure ratio unchanged.
    for (auto& rec : p.quarters) {
      const double old_used = rec.used;
      rec.used = 50000.0 + (bad ? 9000.0 : 0.0) + 900.0 * (i % 7);
      rec.past_due_amt *= rec.used / old_used;
      rec.avg_used = 0.9 * rec.used;
      rec.collateralized_amt = 0.4 * rec.used;
    }
    panels.push_back(std::move(p));
  }
  return panels;
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("runs are deterministic in config and seed") {
  const auto panels = panel_population(45);
  ExperimentConfig cfg;
  cfg.seed = 31;
  cfg.methods = {"NAIVE", "LOG", "DT", "COMB"};
  const ExperimentResult a = run_experiment(panels, cfg);
  const ExperimentResult b = run_experiment(panels, cfg);
  CHECK(render_metrics_csv(a) == render_metrics_csv(b));
  CHECK(render_metrics_table(a) == render_metrics_table(b));

  // The fixture is separable, so most seeds reach the same (perfect) scores;
  // seed sensitivity shows in the split membership, checked through the same
  // derived-seed path the experiment uses.
  const auto built = build_features(panels, cfg.reference_year, false, 0.05);
  const auto [train_a, test_a] =
      train_test_split(built.dataset, cfg.test_fraction, derive_seed(31, "split"));
  const auto [train_b, test_b] =
      train_test_split(built.dataset, cfg.test_fraction, derive_seed(32, "split"));
  CHECK(test_a.firm_ids != test_b.firm_ids);
}

TEST_CASE("method subsets keep the canonical report order") {
  const auto panels = panel_population(45);
  ExperimentConfig cfg;
  cfg.seed = 4;
  cfg.methods = {"DT", "LOG", "NAIVE"};  // deliberately scrambled
  const ExperimentResult r = run_experiment(panels, cfg);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].method == "NAIVE");
  CHECK(r.rows[1].method == "LOG");
  CHECK(r.rows[2].method == "DT");
  for (const auto& row : r.rows) CHECK(row.ok);
}

TEST_CASE("every method reports on the full run") {
  const auto panels = panel_population(60);
  ExperimentConfig cfg;
  cfg.seed = 12;
  const ExperimentResult r = run_experiment(panels, cfg);
  REQUIRE(r.rows.size() == kMethodOrder.size());
  for (std::size_t i = 0; i < kMethodOrder.size(); ++i) {
    CHECK(r.rows[i].method == kMethodOrder[i]);
    CHECK(r.rows[i].ok);
  }
  CHECK(r.n_train + r.n_test == 60);
  CHECK(r.skips.total() == 0);

  const std::string csv = render_metrics_csv(r);
  CHECK(csv.rfind("method,pr,re,f1,type1,type2,bacc\n", 0) == 0);
  for (std::string_view m : kMethodOrder) {
    CHECK(csv.find(std::string(m) + ",") != std::string::npos);
  }

  const std::string table = render_metrics_table(r);
  CHECK(table.find("BACC") != std::string::npos);
  CHECK(table.find("balanced accuracy") != std::string::npos);
  CHECK(table.find("train rows:") != std::string::npos);
}

TEST_CASE("training-side rebalancing halves the majority") {
  const auto panels = panel_population(60);
  ExperimentConfig cfg;
  cfg.seed = 9;
  cfg.methods = {"DT"};
  cfg.balance_training = true;
  const ExperimentResult r = run_experiment(panels, cfg);
  CHECK(r.train_positives * 2 == r.n_train);
  // The test split stays untouched: still roughly one third positive.
  CHECK(r.test_positives * 2 < r.n_test);
}

TEST_CASE("config validation") {
  const auto panels = panel_population(30);
  ExperimentConfig cfg;

  SUBCASE("unknown method") {
    cfg.methods = {"XGB"};
    CHECK_THROWS_WITH_AS(run_experiment(panels, cfg),
                         doctest::Contains("unknown method 'XGB'"),
                         ConfigError);
  }
  SUBCASE("fractions must be interior") {
    cfg.test_fraction = 1.0;
    CHECK_THROWS_AS(run_experiment(panels, cfg), ConfigError);
  }
  SUBCASE("vote threshold range") {
    cfg.vote_threshold = 11;
    CHECK_THROWS_AS(run_experiment(panels, cfg), ConfigError);
  }
  SUBCASE("a reference year with no labelable firms") {
    cfg.reference_year = 1999;
    CHECK_THROWS_WITH_AS(run_experiment(panels, cfg),
                         doctest::Contains("no firm has a defined target"),
                         DataError);
  }
}

TEST_CASE("skip accounting flows into the result") {
  auto panels = panel_population(40);
  // Cut one firm's window and another's horizon.
  std::erase_if(panels[1].quarters, [](const FirmQuarterRecord& r) {
    return r.quarter == YearQuarter{2013, 1};
  });
  std::erase_if(panels[2].quarters, [](const FirmQuarterRecord& r) {
    return r.quarter == YearQuarter{2014, 4};
  });
  ExperimentConfig cfg;
  cfg.seed = 2;
  cfg.methods = {"NAIVE"};
  const ExperimentResult r = run_experiment(panels, cfg);
  CHECK(r.skips.missing_window == 1);
  CHECK(r.skips.missing_horizon == 1);
  CHECK(r.n_train + r.n_test == 38);
}

TEST_SUITE_END();
