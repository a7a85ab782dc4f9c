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
#ifndef CREDITRISK_LEARNERS_HPP_
#define CREDITRISK_LEARNERS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "creditrisk/dataset.hpp"
#include "creditrisk/tree.hpp"

namespace creditrisk {

enum class Family {
  kNaive,
  kMnb,
  kLog,
  kDt,
  kRf,
  kBag,
  kAda,
  kGb,
};

inline constexpr std::array<Family, 8> kAllFamilies = {
    Family::kNaive, Family::kMnb, Family::kLog, Family::kDt,
    Family::kRf,    Family::kBag, Family::kAda, Family::kGb,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

/// One bag of knobs for every family; defaults_for() fills the fields the
/// family actually reads. Documented fixed defaults: tree (unbounded depth,
/// min_leaf 1, Gini), forest/bagging (100 trees), AdaBoost (50 rounds,
/// depth-1 base), gradient boosting (100 rounds, rate 0.1, depth-3 base),
/// logistic (L2 1.0), multinomial NB (alpha 1.0, 16 bins).
struct HyperParams {
  // tree
  int max_depth = -1;  // -1 = unbounded
  int min_leaf = 1;
  SplitRule criterion = SplitRule::kGini;
  // forest / bagging
  int n_trees = 100;
  int features_per_split = 0;  // 0 = family rule (sqrt(p) forest, all bagging)
  bool bootstrap = true;
  // boosting
  int n_rounds = 50;
  double learning_rate = 0.1;
  int base_depth = 1;
  // logistic
  double l2_penalty = 1.0;
  int max_iters = 500;
  double step_size = 0.0;  // 0 = derive from a Lipschitz estimate
  // multinomial NB
  double laplace_alpha = 1.0;
  int n_bins = 16;

  static HyperParams defaults_for(Family f);

  bool operator==(const HyperParams&) const = default;
};

// --- fitted parameter blocks --------------------------------------------

struct NaiveParams {
  std::vector<std::int32_t> l3_cols;
  std::vector<std::int32_t> l7_cols;
};

/// Multinomial model over binned features: each feature's quantile-bin index
/// acts as the count of that feature's event type, so the class-conditional
/// likelihood is prod_f theta[c][f]^bin_f with smoothed theta.
struct MnbParams {
  int n_bins = 0;
  double laplace_alpha = 0.0;
  std::vector<std::vector<double>> edges;  // per feature, ascending
  std::array<double, 2> log_prior{0.0, 0.0};
  std::vector<double> log_theta;  // [class * p + feature]
};

struct LogisticParams {
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<double> weights;  // in standardized space
  double intercept = 0.0;
};

struct TreeModelParams {
  DecisionTree tree;
};

struct ForestParams {
  std::vector<DecisionTree> trees;
};

struct AdaParams {
  std::vector<DecisionTree> trees;
  std::vector<double> alphas;
};

struct GbParams {
  double f0 = 0.0;
  double learning_rate = 0.0;
  std::vector<DecisionTree> trees;
};

using ModelParams =
    std::variant<NaiveParams, MnbParams, LogisticParams, TreeModelParams,
                 ForestParams, AdaParams, GbParams>;

struct TrainedModel {
  Family family = Family::kNaive;
  HyperParams hp;
  std::vector<std::string> feature_names;
  std::uint64_t train_seed = 0;
  ModelParams params;

  int predict_row(std::span<const double> row) const;

  /// Class-1 probability where the family defines one (MNB posterior,
  /// logistic sigmoid, boosted-score sigmoid); vote share for forests and
  /// bagging; the hard label for the rest.
  double positive_probability(std::span<const double> row) const;
};

// --- fitting --------------------------------------------------------------

TrainedModel fit_naive(const LabeledDataset& ds);

TrainedModel fit_mnb(const LabeledDataset& ds, const HyperParams& hp);

TrainedModel fit_logreg(const LabeledDataset& ds, const HyperParams& hp);

TrainedModel fit_tree(const LabeledDataset& ds,
                      std::span<const double> sample_weights,
                      const HyperParams& hp,
                      const Presorted* pre = nullptr);

TrainedModel fit_forest(const LabeledDataset& ds, const HyperParams& hp,
                        std::uint64_t seed, const Presorted* pre = nullptr);

TrainedModel fit_bagging(const LabeledDataset& ds, const HyperParams& hp,
                         std::uint64_t seed, const Presorted* pre = nullptr);

TrainedModel fit_adaboost(const LabeledDataset& ds, const HyperParams& hp,
                          std::uint64_t seed, const Presorted* pre = nullptr);

TrainedModel fit_gboost(const LabeledDataset& ds, const HyperParams& hp,
                        std::uint64_t seed, const Presorted* pre = nullptr);

/// Family dispatcher used by tuning, the vote ensemble, and the CLI.
TrainedModel fit_model(Family family, const LabeledDataset& ds,
                       const HyperParams& hp, std::uint64_t seed,
                       const Presorted* pre = nullptr);

std::vector<int> predict(const TrainedModel& model, const MatrixView& rows);

/// Exhaustive grid search scored by F1 on an internal stratified holdout;
/// ties go to the earliest candidate. Candidates that fail to train are
/// skipped; if every one fails the causes are aggregated into the error.
HyperParams tune(Family family, const LabeledDataset& ds,
                 const std::vector<HyperParams>& grid,
                 double validation_fraction, std::uint64_t seed);

// --- support used by training and its tests --------------------------------

/// Mean L2-regularized logistic loss and its gradient at (weights,
/// intercept) over standardized features; the intercept is not penalized.
struct LogisticObjective {
  std::vector<double> x;  // standardized, row-major
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<int> y;
  double l2_penalty = 0.0;

  double loss(std::span<const double> w, double b) const;
  void gradient(std::span<const double> w, double b,
                std::span<double> grad_w, double& grad_b) const;
};

double sigmoid(double z);

/// Mean binomial deviance of additive scores F against binary labels,
/// computed overflow-safely.
double logistic_deviance(std::span<const double> f, std::span<const int> y);

}  // namespace creditrisk

#endif  // CREDITRISK_LEARNERS_HPP_
