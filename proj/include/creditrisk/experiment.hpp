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
#ifndef CREDITRISK_EXPERIMENT_HPP_
#define CREDITRISK_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "creditrisk/domain.hpp"
#include "creditrisk/features.hpp"
#include "creditrisk/metrics.hpp"

namespace creditrisk {

/// Report order: the three simple classifiers, the five tree families, then
/// the vote committee.
inline constexpr std::array<std::string_view, 9> kMethodOrder = {
    "NAIVE", "MNB", "LOG", "GB", "RF", "DT", "BAG", "ADA", "COMB",
};

bool is_known_method(std::string_view name);

struct ExperimentConfig {
  int reference_year = 2013;
  bool use_balance = false;      // include balance-sheet feature columns
  bool balance_training = false;  // 50/50 subsample of the training split
  double threshold = 0.05;       // adjusted-default exposure threshold
  double test_fraction = 0.3;
  double tune_fraction = 0.3;    // committee tuning holdout
  int vote_threshold = 3;
  std::uint64_t seed = 0;
  std::vector<std::string> methods;  // empty = every method, report order
};

struct MethodOutcome {
  std::string method;
  bool ok = false;
  std::string error;  // set when !ok; training of other methods continues
  MetricsReport report;
};

struct ExperimentResult {
  std::vector<MethodOutcome> rows;  // in report order
  SkipReport skips;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t train_positives = 0;
  std::size_t test_positives = 0;
};

/// Builds features at the reference year, splits train/test, optionally
/// balances the training split, then fits and scores each requested method
/// on the held-out split. Deterministic given (config, seed); per-method
/// failures are recorded in the row and do not stop the rest.
ExperimentResult run_experiment(const std::vector<FirmPanel>& panels,
                                const ExperimentConfig& config);

/// Aligned plain-text table with one row per method and a footer spelling
/// out the measure conventions.
std::string render_metrics_table(const ExperimentResult& result);

/// `method,pr,re,f1,type1,type2,bacc` rows for the methods that trained.
std::string render_metrics_csv(const ExperimentResult& result);

}  // namespace creditrisk

#endif  // CREDITRISK_EXPERIMENT_HPP_
