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
#include <cmath>
#include <numeric>

#include "creditrisk/errors.hpp"
#include "creditrisk/learners.hpp"
#include "creditrisk/rng.hpp"
#include "creditrisk/util.hpp"

namespace creditrisk {

namespace {

// alpha assigned to a round with zero weighted error; large enough to
// dominate any realistic vote yet far from overflowing exp().
constexpr double kPerfectRoundAlpha = 35.0;

void check_ensemble_hp(Family f, const HyperParams& hp) {
  auto fail = [&](const std::string& what) {
    throw ConfigError(family_name(f) + ": " + what);
  };
  if (f == Family::kRf || f == Family::kBag) {
    if (hp.n_trees < 1) fail("n_trees must be at least 1");
    if (hp.max_depth != -1 && hp.max_depth < 1) {
      fail("max_depth must be -1 (unbounded) or at least 1");
    }
    if (hp.min_leaf < 1) fail("min_leaf must be at least 1");
    if (hp.features_per_split < 0) fail("features_per_split must be >= 0");
  } else {
    if (hp.n_rounds < 1) fail("n_rounds must be at least 1");
    if (hp.base_depth < 1) fail("base_depth must be at least 1");
    if (f == Family::kGb &&
        !(hp.learning_rate > 0.0 && hp.learning_rate <= 1.0)) {
      fail("learning_rate must be in (0, 1]");
    }
  }
}

TrainedModel fit_vote_ensemble(Family family, const LabeledDataset& ds,
                               const HyperParams& hp, std::uint64_t seed,
                               const Presorted* pre) {
  check_ensemble_hp(family, hp);
  const std::size_t n = ds.n_rows();
  const std::size_t p = ds.width();
  if (n == 0) throw TrainError("empty dataset");

  int fps = hp.features_per_split;
  if (fps == 0 && family == Family::kRf) {
    fps = static_cast<int>(std::floor(std::sqrt(static_cast<double>(p))));
    if (fps < 1) fps = 1;
  }

  const MatrixView x = MatrixView::of(ds);
  Presorted local;
  if (pre == nullptr) {
    local = Presorted::build(x);
    pre = &local;
  }

  ForestParams fp;
  fp.trees.resize(static_cast<std::size_t>(hp.n_trees));
  parallel_for(static_cast<std::size_t>(hp.n_trees), [&](std::size_t t) {
    const std::uint64_t tree_seed = derive_seed(seed, "tree", t);
    SampleSet samples;
    if (hp.bootstrap) {
      Rng boot(derive_seed(tree_seed, "bootstrap"));
      std::vector<std::int32_t> mult(n, 0);
      for (std::size_t k = 0; k < n; ++k) ++mult[boot.uniform_below(n)];
      for (std::size_t r = 0; r < n; ++r) {
        if (mult[r] == 0) continue;
        samples.rows.push_back(static_cast<std::int32_t>(r));
        samples.weights.push_back(static_cast<double>(mult[r]));
        samples.counts.push_back(mult[r]);
      }
    } else {
      samples = SampleSet::all(n);
    }
    TreeOptions opt;
    opt.max_depth = hp.max_depth;
    opt.min_leaf = hp.min_leaf;
    opt.rule = hp.criterion;
    opt.features_per_split = fps;
    opt.feature_seed = derive_seed(tree_seed, "features");
    fp.trees[t] = DecisionTree::fit_classifier(x, ds.labels, opt, samples, pre);
  });

  TrainedModel m;
  m.family = family;
  m.hp = hp;
  m.feature_names = ds.feature_names;
  m.train_seed = seed;
  m.params = std::move(fp);
  return m;
}

}  // namespace

TrainedModel fit_forest(const LabeledDataset& ds, const HyperParams& hp,
                        std::uint64_t seed, const Presorted* pre) {
  return fit_vote_ensemble(Family::kRf, ds, hp, seed, pre);
}

TrainedModel fit_bagging(const LabeledDataset& ds, const HyperParams& hp,
                         std::uint64_t seed, const Presorted* pre) {
  HyperParams h = hp;
  h.features_per_split = 0;  // every split sees the full feature set
  TrainedModel m = fit_vote_ensemble(Family::kBag, ds, h, seed, pre);
  m.hp = hp;
  return m;
}

TrainedModel fit_adaboost(const LabeledDataset& ds, const HyperParams& hp,
                          std::uint64_t seed, const Presorted* pre) {
  check_ensemble_hp(Family::kAda, hp);
  const std::size_t n = ds.n_rows();
  if (n == 0) throw TrainError("empty dataset");
  const MatrixView x = MatrixView::of(ds);
  Presorted local;
  if (pre == nullptr) {
    local = Presorted::build(x);
    pre = &local;
  }

  TreeOptions opt;
  opt.max_depth = hp.base_depth;
  opt.min_leaf = hp.min_leaf;
  opt.rule = hp.criterion;

  AdaParams ap;
  SampleSet samples = SampleSet::all(n);
  std::vector<double>& w = samples.weights;  // kept normalized to sum 1
  std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
  std::vector<int> h(n);

  for (int round = 0; round < hp.n_rounds; ++round) {
    DecisionTree tree = DecisionTree::fit_classifier(x, ds.labels, opt,
                                                     samples, pre);
    double eps = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = tree.predict_class(ds.row(i));
      if (h[i] != ds.labels[i]) eps += w[i];
    }
    if (eps <= 0.0) {
      // Perfect round: keep it with a capped vote and stop.
      ap.trees.push_back(std::move(tree));
      ap.alphas.push_back(kPerfectRoundAlpha);
      break;
    }
    if (eps >= 0.5) break;  // no better than chance: discard round, stop
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    ap.trees.push_back(std::move(tree));
    ap.alphas.push_back(alpha);
    // Symmetric reweighting: misclassified up by e^a, correct down by e^-a,
    // then renormalize (Z = 2 sqrt(eps (1-eps))).
    const double up = std::exp(alpha);
    const double down = std::exp(-alpha);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= (h[i] != ds.labels[i]) ? up : down;
      z += w[i];
    }
    for (std::size_t i = 0; i < n; ++i) w[i] /= z;
  }

  TrainedModel m;
  m.family = Family::kAda;
  m.hp = hp;
  m.feature_names = ds.feature_names;
  m.train_seed = seed;
  m.params = std::move(ap);
  return m;
}

TrainedModel fit_gboost(const LabeledDataset& ds, const HyperParams& hp,
                        std::uint64_t seed, const Presorted* pre) {
  check_ensemble_hp(Family::kGb, hp);
  const std::size_t n = ds.n_rows();
  if (n == 0) throw TrainError("empty dataset");
  const std::size_t n1 = ds.count_label(1);
  if (n1 == 0 || n1 == n) throw TrainError("degenerate training labels");

  const MatrixView x = MatrixView::of(ds);
  Presorted local;
  if (pre == nullptr) {
    local = Presorted::build(x);
    pre = &local;
  }

  const double pbar = static_cast<double>(n1) / static_cast<double>(n);
  GbParams gp;
  gp.f0 = std::log(pbar / (1.0 - pbar));
  gp.learning_rate = hp.learning_rate;

  TreeOptions opt;
  opt.max_depth = hp.base_depth;
  opt.min_leaf = hp.min_leaf;
  opt.rule = SplitRule::kMse;

  std::vector<double> f(n, gp.f0);
  std::vector<double> residual(n);
  std::vector<double> hessian(n);
  for (int round = 0; round < hp.n_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double prob = sigmoid(f[i]);
      residual[i] = static_cast<double>(ds.labels[i]) - prob;
      hessian[i] = prob * (1.0 - prob);
    }
    DecisionTree tree = DecisionTree::fit_regressor(x, residual, hessian, opt,
                                                    pre);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] += hp.learning_rate * tree.predict_value(ds.row(i));
    }
    gp.trees.push_back(std::move(tree));
  }

  TrainedModel m;
  m.family = Family::kGb;
  m.hp = hp;
  m.feature_names = ds.feature_names;
  m.train_seed = seed;
  m.params = std::move(gp);
  return m;
}

}  // namespace creditrisk
