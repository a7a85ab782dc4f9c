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
#include "creditrisk/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "creditrisk/errors.hpp"
#include "creditrisk/features.hpp"
#include "creditrisk/metrics.hpp"
#include "creditrisk/rng.hpp"

namespace creditrisk {

std::string family_name(Family f) {
  switch (f) {
    case Family::kNaive: return "NAIVE";
    case Family::kMnb: return "MNB";
    case Family::kLog: return "LOG";
    case Family::kDt: return "DT";
    case Family::kRf: return "RF";
    case Family::kBag: return "BAG";
    case Family::kAda: return "ADA";
    case Family::kGb: return "GB";
  }
  throw ConfigError("unknown family");
}

std::optional<Family> family_from_name(std::string_view name) {
  for (const Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

HyperParams HyperParams::defaults_for(Family f) {
  HyperParams hp;
  switch (f) {
    case Family::kNaive:
    case Family::kMnb:
    case Family::kLog:
    case Family::kDt:
      break;
    case Family::kRf:
    case Family::kBag:
      hp.n_trees = 100;
      break;
    case Family::kAda:
      hp.n_rounds = 50;
      hp.base_depth = 1;
      break;
    case Family::kGb:
      hp.n_rounds = 100;
      hp.learning_rate = 0.1;
      hp.base_depth = 3;
      break;
  }
  return hp;
}

namespace {

void validate_hp(Family f, const HyperParams& hp) {
  auto fail = [&](const std::string& what) {
    throw ConfigError(family_name(f) + ": " + what);
  };
  switch (f) {
    case Family::kNaive:
      break;
    case Family::kMnb:
      if (hp.n_bins < 2) fail("n_bins must be at least 2");
      if (!(hp.laplace_alpha > 0.0)) fail("laplace_alpha must be positive");
      break;
    case Family::kLog:
      if (hp.max_iters < 0) fail("max_iters must be non-negative");
      if (!(hp.l2_penalty >= 0.0)) fail("l2_penalty must be non-negative");
      if (!(hp.step_size >= 0.0)) fail("step_size must be non-negative");
      break;
    case Family::kDt:
      if (hp.max_depth != -1 && hp.max_depth < 1) {
        fail("max_depth must be -1 (unbounded) or at least 1");
      }
      if (hp.min_leaf < 1) fail("min_leaf must be at least 1");
      break;
    case Family::kRf:
    case Family::kBag:
      if (hp.n_trees < 1) fail("n_trees must be at least 1");
      if (hp.max_depth != -1 && hp.max_depth < 1) {
        fail("max_depth must be -1 (unbounded) or at least 1");
      }
      if (hp.min_leaf < 1) fail("min_leaf must be at least 1");
      if (hp.features_per_split < 0) fail("features_per_split must be >= 0");
      break;
    case Family::kAda:
    case Family::kGb:
      if (hp.n_rounds < 1) fail("n_rounds must be at least 1");
      if (hp.base_depth < 1) fail("base_depth must be at least 1");
      if (f == Family::kGb &&
          !(hp.learning_rate > 0.0 && hp.learning_rate <= 1.0)) {
        fail("learning_rate must be in (0, 1]");
      }
      break;
  }
}

std::size_t bin_index(double x, const std::vector<double>& edges) {
  return static_cast<std::size_t>(
      std::lower_bound(edges.begin(), edges.end(), x) - edges.begin());
}

double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

}  // namespace

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double logistic_deviance(std::span<const double> f, std::span<const int> y) {
  if (f.size() != y.size()) throw DataError("score/label length mismatch");
  if (f.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum += softplus(f[i]) - (y[i] == 1 ? f[i] : 0.0);
  }
  return sum / static_cast<double>(f.size());
}

// --- NAIVE ------------------------------------------------------------------

TrainedModel fit_naive(const LabeledDataset& ds) {
  NaiveParams np;
  for (std::size_t j = 0; j < ds.feature_names.size(); ++j) {
    const std::string& name = ds.feature_names[j];
    if (name.rfind("L3_", 0) == 0) {
      np.l3_cols.push_back(static_cast<std::int32_t>(j));
    } else if (name.rfind("L7_", 0) == 0) {
      np.l7_cols.push_back(static_cast<std::int32_t>(j));
    }
  }
  if (np.l3_cols.empty() || np.l7_cols.empty()) {
    throw TrainError("rule model requires L3_* and L7_* feature columns");
  }
  TrainedModel m;
  m.family = Family::kNaive;
  m.hp = HyperParams::defaults_for(Family::kNaive);
  m.feature_names = ds.feature_names;
  m.params = std::move(np);
  return m;
}

// --- multinomial naive Bayes -------------------------------------------------

TrainedModel fit_mnb(const LabeledDataset& ds, const HyperParams& hp) {
  validate_hp(Family::kMnb, hp);
  const std::size_t n = ds.n_rows();
  const std::size_t p = ds.width();
  if (n == 0) throw TrainError("empty dataset");
  const std::size_t n1 = ds.count_label(1);
  const std::size_t n0 = n - n1;
  if (n0 == 0 || n1 == 0) throw TrainError("degenerate training labels");

  MnbParams mp;
  mp.n_bins = hp.n_bins;
  mp.laplace_alpha = hp.laplace_alpha;
  mp.edges.resize(p);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = ds.cell(i, j);
    std::sort(col.begin(), col.end());
    std::vector<double>& e = mp.edges[j];
    e.reserve(static_cast<std::size_t>(hp.n_bins - 1));
    for (int b = 1; b < hp.n_bins; ++b) {
      std::size_t k = (static_cast<std::size_t>(b) * n) /
                      static_cast<std::size_t>(hp.n_bins);
      if (k >= n) k = n - 1;
      e.push_back(col[k]);
    }
  }

  // Bin indices act as per-feature event counts of a multinomial draw.
  std::vector<std::int64_t> count(2 * p, 0);
  std::int64_t total[2] = {0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const int c = ds.labels[i];
    for (std::size_t j = 0; j < p; ++j) {
      const auto b =
          static_cast<std::int64_t>(bin_index(ds.cell(i, j), mp.edges[j]));
      count[static_cast<std::size_t>(c) * p + j] += b;
      total[c] += b;
    }
  }
  mp.log_prior[0] =
      std::log(static_cast<double>(n0) / static_cast<double>(n));
  mp.log_prior[1] =
      std::log(static_cast<double>(n1) / static_cast<double>(n));
  mp.log_theta.resize(2 * p);
  const double a = hp.laplace_alpha;
  for (int c = 0; c < 2; ++c) {
    const double denom = static_cast<double>(total[c]) +
                         a * static_cast<double>(p);
    for (std::size_t j = 0; j < p; ++j) {
      const double num =
          static_cast<double>(count[static_cast<std::size_t>(c) * p + j]) + a;
      mp.log_theta[static_cast<std::size_t>(c) * p + j] =
          std::log(num / denom);
    }
  }

  TrainedModel m;
  m.family = Family::kMnb;
  m.hp = hp;
  m.feature_names = ds.feature_names;
  m.params = std::move(mp);
  return m;
}

namespace {

// Class log scores (prior + binned likelihood) for one row.
std::pair<double, double> mnb_scores(const MnbParams& mp,
                                     std::span<const double> row) {
  const std::size_t p = mp.edges.size();
  double s0 = mp.log_prior[0];
  double s1 = mp.log_prior[1];
  for (std::size_t j = 0; j < p; ++j) {
    const auto b = static_cast<double>(bin_index(row[j], mp.edges[j]));
    s0 += b * mp.log_theta[j];
    s1 += b * mp.log_theta[p + j];
  }
  return {s0, s1};
}

}  // namespace

// --- logistic regression ------------------------------------------------------

double LogisticObjective::loss(std::span<const double> w, double b) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = b;
    const double* row = x.data() + i * p;
    for (std::size_t j = 0; j < p; ++j) z += w[j] * row[j];
    sum += softplus(z) - (y[i] == 1 ? z : 0.0);
  }
  double reg = 0.0;
  for (std::size_t j = 0; j < p; ++j) reg += w[j] * w[j];
  return (sum + 0.5 * l2_penalty * reg) / static_cast<double>(n);
}

void LogisticObjective::gradient(std::span<const double> w, double b,
                                 std::span<double> grad_w,
                                 double& grad_b) const {
  std::fill(grad_w.begin(), grad_w.end(), 0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = b;
    const double* row = x.data() + i * p;
    for (std::size_t j = 0; j < p; ++j) z += w[j] * row[j];
    const double d = sigmoid(z) - (y[i] == 1 ? 1.0 : 0.0);
    for (std::size_t j = 0; j < p; ++j) grad_w[j] += d * row[j];
    grad_b += d;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < p; ++j) {
    grad_w[j] = (grad_w[j] + l2_penalty * w[j]) * inv_n;
  }
  grad_b *= inv_n;
}

namespace {

// Largest eigenvalue of (1/n) X^T X over the standardized matrix extended
// with the intercept column, by power iteration. Bounds the logistic
// Hessian's spectral norm by lambda/4 + l2/n, giving a safe step size.
double lipschitz_estimate(const LogisticObjective& obj) {
  const std::size_t d = obj.p + 1;
  std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
  std::vector<double> xv(obj.n);
  std::vector<double> u(d);
  double lambda = 0.0;
  for (int it = 0; it < 64; ++it) {
    for (std::size_t i = 0; i < obj.n; ++i) {
      double z = v[obj.p];  // intercept column of ones
      const double* row = obj.x.data() + i * obj.p;
      for (std::size_t j = 0; j < obj.p; ++j) z += v[j] * row[j];
      xv[i] = z;
    }
    std::fill(u.begin(), u.end(), 0.0);
    for (std::size_t i = 0; i < obj.n; ++i) {
      const double* row = obj.x.data() + i * obj.p;
      for (std::size_t j = 0; j < obj.p; ++j) u[j] += xv[i] * row[j];
      u[obj.p] += xv[i];
    }
    double norm = 0.0;
    for (double c : u) norm += c * c;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 1.0;
    lambda = norm;
    for (std::size_t j = 0; j < d; ++j) v[j] = u[j] / norm;
  }
  return lambda / static_cast<double>(obj.n);
}

}  // namespace

TrainedModel fit_logreg(const LabeledDataset& ds, const HyperParams& hp) {
  validate_hp(Family::kLog, hp);
  const std::size_t n = ds.n_rows();
  const std::size_t p = ds.width();
  if (n == 0) throw TrainError("empty dataset");

  LogisticParams lp;
  lp.mean.assign(p, 0.0);
  lp.scale.assign(p, 1.0);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += ds.cell(i, j);
    lp.mean[j] = s / static_cast<double>(n);
  }
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = ds.cell(i, j) - lp.mean[j];
      s += d * d;
    }
    const double sd = std::sqrt(s / static_cast<double>(n));
    lp.scale[j] = sd > 0.0 ? sd : 1.0;
  }

  LogisticObjective obj;
  obj.n = n;
  obj.p = p;
  obj.y = ds.labels;
  obj.l2_penalty = hp.l2_penalty;
  obj.x.resize(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      obj.x[i * p + j] = (ds.cell(i, j) - lp.mean[j]) / lp.scale[j];
    }
  }

  double step = hp.step_size;
  if (step <= 0.0) {
    const double lip =
        lipschitz_estimate(obj) / 4.0 + hp.l2_penalty / static_cast<double>(n);
    step = lip > 0.0 ? 1.0 / (1.1 * lip) : 1.0;
  }

  std::vector<double> w(p, 0.0);
  double b = 0.0;
  std::vector<double> gw(p);
  double gb = 0.0;
  for (int it = 0; it < hp.max_iters; ++it) {
    const double cur = obj.loss(w, b);
    if (!std::isfinite(cur)) {
      throw TrainError("non-finite loss at iteration " + std::to_string(it));
    }
    obj.gradient(w, b, gw, gb);
    double gmax = std::abs(gb);
    for (double g : gw) gmax = std::max(gmax, std::abs(g));
    if (gmax < 1e-10) break;
    for (std::size_t j = 0; j < p; ++j) w[j] -= step * gw[j];
    b -= step * gb;
  }

  lp.weights = std::move(w);
  lp.intercept = b;
  TrainedModel m;
  m.family = Family::kLog;
  m.hp = hp;
  m.feature_names = ds.feature_names;
  m.params = std::move(lp);
  return m;
}

// --- single tree ---------------------------------------------------------------

TrainedModel fit_tree(const LabeledDataset& ds,
                      std::span<const double> sample_weights,
                      const HyperParams& hp, const Presorted* pre) {
  validate_hp(Family::kDt, hp);
  const std::size_t n = ds.n_rows();
  if (!sample_weights.empty() && sample_weights.size() != n) {
    throw TrainError("sample weight count mismatches rows");
  }
  SampleSet samples = SampleSet::all(n);
  if (!sample_weights.empty()) {
    samples.weights.assign(sample_weights.begin(), sample_weights.end());
  }
  TreeOptions opt;
  opt.max_depth = hp.max_depth;
  opt.min_leaf = hp.min_leaf;
  opt.rule = hp.criterion;
  const MatrixView x = MatrixView::of(ds);
  TreeModelParams tp;
  tp.tree = DecisionTree::fit_classifier(x, ds.labels, opt, samples, pre);
  TrainedModel m;
  m.family = Family::kDt;
  m.hp = hp;
  m.feature_names = ds.feature_names;
  m.params = std::move(tp);
  return m;
}

// --- shared prediction surface ----------------------------------------------

int TrainedModel::predict_row(std::span<const double> row) const {
  if (row.size() != feature_names.size()) {
    throw DataError("predict: expected " +
                    std::to_string(feature_names.size()) + " features, got " +
                    std::to_string(row.size()));
  }
  if (const auto* np = std::get_if<NaiveParams>(&params)) {
    for (const std::int32_t j : np->l3_cols) {
      if (row[static_cast<std::size_t>(j)] > 0.0) return 1;
    }
    for (const std::int32_t j : np->l7_cols) {
      if (row[static_cast<std::size_t>(j)] > 0.0) return 1;
    }
    return 0;
  }
  if (const auto* mp = std::get_if<MnbParams>(&params)) {
    const auto [s0, s1] = mnb_scores(*mp, row);
    return s1 > s0 ? 1 : 0;
  }
  if (const auto* lp = std::get_if<LogisticParams>(&params)) {
    double z = lp->intercept;
    for (std::size_t j = 0; j < row.size(); ++j) {
      z += lp->weights[j] * (row[j] - lp->mean[j]) / lp->scale[j];
    }
    return sigmoid(z) > 0.5 ? 1 : 0;
  }
  if (const auto* tp = std::get_if<TreeModelParams>(&params)) {
    return tp->tree.predict_class(row);
  }
  if (const auto* fp = std::get_if<ForestParams>(&params)) {
    std::size_t votes = 0;
    for (const DecisionTree& t : fp->trees) {
      votes += static_cast<std::size_t>(t.predict_class(row));
    }
    return 2 * votes > fp->trees.size() ? 1 : 0;
  }
  if (const auto* ap = std::get_if<AdaParams>(&params)) {
    double margin = 0.0;
    for (std::size_t t = 0; t < ap->trees.size(); ++t) {
      margin += ap->alphas[t] *
              (ap->trees[t].predict_class(row) == 1 ? 1.0 : -1.0);
    }
    return margin > 0.0 ? 1 : 0;
  }
  const auto& gp = std::get<GbParams>(params);
  double f = gp.f0;
  for (const DecisionTree& t : gp.trees) {
    f += gp.learning_rate * t.predict_value(row);
  }
  return f > 0.0 ? 1 : 0;
}

double TrainedModel::positive_probability(std::span<const double> row) const {
  if (row.size() != feature_names.size()) {
    throw DataError("predict: expected " +
                    std::to_string(feature_names.size()) + " features, got " +
                    std::to_string(row.size()));
  }
  if (const auto* mp = std::get_if<MnbParams>(&params)) {
    const auto [s0, s1] = mnb_scores(*mp, row);
    return 1.0 / (1.0 + std::exp(s0 - s1));
  }
  if (const auto* lp = std::get_if<LogisticParams>(&params)) {
    double z = lp->intercept;
    for (std::size_t j = 0; j < row.size(); ++j) {
      z += lp->weights[j] * (row[j] - lp->mean[j]) / lp->scale[j];
    }
    return sigmoid(z);
  }
  if (const auto* fp = std::get_if<ForestParams>(&params)) {
    std::size_t votes = 0;
    for (const DecisionTree& t : fp->trees) {
      votes += static_cast<std::size_t>(t.predict_class(row));
    }
    return static_cast<double>(votes) / static_cast<double>(fp->trees.size());
  }
  if (const auto* gp = std::get_if<GbParams>(&params)) {
    double f = gp->f0;
    for (const DecisionTree& t : gp->trees) {
      f += gp->learning_rate * t.predict_value(row);
    }
    return sigmoid(f);
  }
  return static_cast<double>(predict_row(row));
}

std::vector<int> predict(const TrainedModel& model, const MatrixView& rows) {
  if (rows.rows > 0 && rows.cols != model.feature_names.size()) {
    throw DataError("predict: expected " +
                    std::to_string(model.feature_names.size()) +
                    " features, got " + std::to_string(rows.cols));
  }
  std::vector<int> out(rows.rows);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    out[i] = model.predict_row({rows.data + i * rows.cols, rows.cols});
  }
  return out;
}

// --- dispatch and tuning ------------------------------------------------------

TrainedModel fit_model(Family family, const LabeledDataset& ds,
                       const HyperParams& hp, std::uint64_t seed,
                       const Presorted* pre) {
  switch (family) {
    case Family::kNaive: return fit_naive(ds);
    case Family::kMnb: return fit_mnb(ds, hp);
    case Family::kLog: return fit_logreg(ds, hp);
    case Family::kDt: return fit_tree(ds, {}, hp, pre);
    case Family::kRf: return fit_forest(ds, hp, seed, pre);
    case Family::kBag: return fit_bagging(ds, hp, seed, pre);
    case Family::kAda: return fit_adaboost(ds, hp, seed, pre);
    case Family::kGb: return fit_gboost(ds, hp, seed, pre);
  }
  throw ConfigError("unknown family");
}

HyperParams tune(Family family, const LabeledDataset& ds,
                 const std::vector<HyperParams>& grid,
                 double validation_fraction, std::uint64_t seed) {
  if (grid.empty()) throw ConfigError("empty grid");
  auto [sub_train, validation] =
      train_test_split(ds, validation_fraction, derive_seed(seed, "tune_split"));

  const bool tree_based = family == Family::kDt || family == Family::kRf ||
                          family == Family::kBag || family == Family::kAda ||
                          family == Family::kGb;
  Presorted pre;
  if (tree_based) pre = Presorted::build(MatrixView::of(sub_train));
  const Presorted* prep = tree_based ? &pre : nullptr;
  const std::uint64_t fit_seed = derive_seed(seed, "tune_fit");
  const MatrixView vx = MatrixView::of(validation);

  bool have_best = false;
  double best_f1 = -1.0;
  std::size_t best_i = 0;
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      const TrainedModel m = fit_model(family, sub_train, grid[i], fit_seed, prep);
      const MetricsReport r =
          metrics(confusion(predict(m, vx), validation.labels));
      if (!have_best || r.f1 > best_f1) {
        have_best = true;
        best_f1 = r.f1;
        best_i = i;
      }
    } catch (const std::exception& e) {
      failures.push_back("candidate " + std::to_string(i) + ": " + e.what());
    }
  }
  if (!have_best) {
    std::string msg = "all candidates failed";
    for (const std::string& f : failures) msg += "; " + f;
    throw TrainError(msg);
  }
  return grid[best_i];
}

}  // namespace creditrisk
