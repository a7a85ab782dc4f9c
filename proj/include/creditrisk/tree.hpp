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
#ifndef CREDITRISK_TREE_HPP_
#define CREDITRISK_TREE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "creditrisk/dataset.hpp"

namespace creditrisk {

struct MatrixView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static MatrixView of(const LabeledDataset& ds) {
    return {ds.cells.data(), ds.n_rows(), ds.width()};
  }
};

enum class SplitRule { kGini, kEntropy, kMse };

struct TreeOptions {
  int max_depth = -1;  // -1 = unbounded
  int min_leaf = 1;    // minimum sample count (with multiplicity) per leaf
  SplitRule rule = SplitRule::kGini;
  int features_per_split = 0;      // 0 = consider every feature
  std::uint64_t feature_seed = 0;  // stream for per-node feature subsets
};

/// Rows participating in a fit. `counts` carries bootstrap multiplicity and
/// is what min_leaf is measured against; `weights` enter the impurity math.
struct SampleSet {
  std::vector<std::int32_t> rows;
  std::vector<double> weights;
  std::vector<std::int32_t> counts;

  static SampleSet all(std::size_t n);
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 = leaf
  double threshold = 0.0;     // go left when x[feature] <= threshold
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;  // leaf payload: class 0/1 or regression score
};

/// Shared per-feature sort of a feature matrix. Fitting many trees on the
/// same matrix (ensemble members, boosting rounds, subsampled refits) can
/// reuse one O(p n log n) sort instead of paying it per tree; the builder
/// filters the order down to its sample rows in O(p n).
struct Presorted {
  std::vector<std::int32_t> order;  // [feature * n + k] row ids, value-sorted
  std::size_t n = 0;
  std::size_t p = 0;

  static Presorted build(const MatrixView& x);
};

/// Binary CART. Splits greedily maximize impurity decrease; candidate
/// thresholds sit at midpoints of consecutive distinct values; ties resolve
/// to the lowest feature index, then the lowest threshold. A node with mixed
/// labels still splits on a zero-gain boundary when one exists, so an
/// unconstrained tree drives any consistent sample to purity.
class DecisionTree {
 public:
  std::vector<TreeNode> nodes;

  bool empty() const { return nodes.empty(); }
  int depth() const;

  double predict_value(std::span<const double> row) const;
  int predict_class(std::span<const double> row) const {
    return predict_value(row) > 0.5 ? 1 : 0;
  }

  static DecisionTree fit_classifier(const MatrixView& x,
                                     std::span<const int> y,
                                     const TreeOptions& opt,
                                     const SampleSet& samples,
                                     const Presorted* pre = nullptr);

  static DecisionTree fit_classifier(const MatrixView& x,
                                     std::span<const int> y,
                                     const TreeOptions& opt,
                                     const Presorted* pre = nullptr);

  /// Regression tree on `target` with variance-reduction splits. When
  /// `hessian` is non-empty the leaf value is the one-step Newton estimate
  /// sum(target) / sum(hessian), otherwise the plain mean.
  static DecisionTree fit_regressor(const MatrixView& x,
                                    std::span<const double> target,
                                    std::span<const double> hessian,
                                    const TreeOptions& opt,
                                    const Presorted* pre = nullptr);
};

/// Weighted Gini impurity of a two-class mass pair.
double gini_impurity(double w0, double w1);

}  // namespace creditrisk

#endif  // CREDITRISK_TREE_HPP_
