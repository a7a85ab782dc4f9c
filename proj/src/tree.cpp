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
#include "creditrisk/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "creditrisk/errors.hpp"
#include "creditrisk/rng.hpp"

namespace creditrisk {

double gini_impurity(double w0, double w1) {
  const double w = w0 + w1;
  if (w <= 0.0) return 0.0;
  return 1.0 - (w0 * w0 + w1 * w1) / (w * w);
}

SampleSet SampleSet::all(std::size_t n) {
  SampleSet s;
  s.rows.resize(n);
  std::iota(s.rows.begin(), s.rows.end(), 0);
  s.weights.assign(n, 1.0);
  s.counts.assign(n, 1);
  return s;
}

int DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  // Iterative depth over the node array; nodes[0] is the root.
  std::vector<std::pair<std::int32_t, int>> stack{{0, 1}};
  int best = 0;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    const TreeNode& n = nodes[static_cast<std::size_t>(id)];
    if (n.feature < 0) {
      best = std::max(best, d);
    } else {
      stack.emplace_back(n.left, d + 1);
      stack.emplace_back(n.right, d + 1);
    }
  }
  return best;
}

double DecisionTree::predict_value(std::span<const double> row) const {
  if (nodes.empty()) throw TrainError("predict on an empty tree");
  std::size_t id = 0;
  for (;;) {
    const TreeNode& n = nodes[id];
    if (n.feature < 0) return n.value;
    const std::size_t f = static_cast<std::size_t>(n.feature);
    if (f >= row.size()) throw DataError("row narrower than tree expects");
    id = static_cast<std::size_t>(row[f] <= n.threshold ? n.left : n.right);
  }
}

namespace {

struct BestSplit {
  bool found = false;
  std::int32_t feature = -1;
  double threshold = 0.0;
  double proxy = -std::numeric_limits<double>::infinity();
};

// Shared presort-and-partition builder. Every feature keeps an index array of
// sample slots sorted by (value, row); when a node splits, each array segment
// is stably partitioned so children own contiguous, still-sorted ranges.
class Builder {
 public:
  Builder(const MatrixView& x, const SampleSet& samples, const TreeOptions& opt,
          const Presorted* pre)
      : x_(x), opt_(opt), rows_(samples.rows), weights_(samples.weights),
        counts_(samples.counts) {
    if (x_.rows == 0 || rows_.empty()) throw TrainError("empty dataset");
    if (rows_.size() != weights_.size() || rows_.size() != counts_.size()) {
      throw TrainError("sample set arrays disagree in length");
    }
    m_ = rows_.size();
    p_ = x_.cols;
    double total_w = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0)) throw TrainError("negative sample weight");
      total_w += w;
    }
    if (!(total_w > 0.0)) throw TrainError("all sample weights are zero");
    sorted_.resize(p_ * m_);
    if (pre != nullptr) {
      if (pre->n != x_.rows || pre->p != p_) {
        throw TrainError("presorted index does not match the matrix");
      }
      fill_from_presorted(*pre);
    } else {
      for (std::size_t f = 0; f < p_; ++f) {
        std::int32_t* seg = sorted_.data() + f * m_;
        std::iota(seg, seg + m_, 0);
        std::sort(seg, seg + m_, [&](std::int32_t a, std::int32_t b) {
          const double va = x_.at(static_cast<std::size_t>(rows_[a]), f);
          const double vb = x_.at(static_cast<std::size_t>(rows_[b]), f);
          if (va != vb) return va < vb;
          return rows_[a] < rows_[b];
        });
      }
    }
    side_.resize(m_);
    scratch_.resize(m_);
    rng_ = Rng(opt_.features_per_split > 0 ? opt_.feature_seed : 0);
    feature_pool_.resize(p_);
  }

  std::vector<TreeNode> build_classifier(std::span<const int> y) {
    y_ = y;
    regression_ = false;
    return build();
  }

  std::vector<TreeNode> build_regressor(std::span<const double> target,
                                        std::span<const double> hessian) {
    target_ = target;
    hessian_ = hessian;
    regression_ = true;
    return build();
  }

 private:
  struct Work {
    std::size_t begin;
    std::size_t end;
    int depth;
    std::int32_t node;
  };

  // Restrict the shared full-matrix order to the sample rows. Per-feature
  // tie order is (value, row) in both paths, so the result is bit-identical
  // to sorting the subset directly.
  void fill_from_presorted(const Presorted& pre) {
    bool identity = m_ == x_.rows;
    if (identity) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (rows_[i] != static_cast<std::int32_t>(i)) {
          identity = false;
          break;
        }
      }
    }
    if (identity) {
      std::copy(pre.order.begin(), pre.order.end(), sorted_.begin());
      return;
    }
    std::vector<std::int32_t> slot_of_row(x_.rows, -1);
    for (std::size_t s = 0; s < m_; ++s) {
      slot_of_row[static_cast<std::size_t>(rows_[s])] =
          static_cast<std::int32_t>(s);
    }
    for (std::size_t f = 0; f < p_; ++f) {
      const std::int32_t* src = pre.order.data() + f * x_.rows;
      std::int32_t* dst = sorted_.data() + f * m_;
      std::size_t out = 0;
      for (std::size_t k = 0; k < x_.rows; ++k) {
        const std::int32_t s = slot_of_row[static_cast<std::size_t>(src[k])];
        if (s >= 0) dst[out++] = s;
      }
    }
  }

  std::vector<TreeNode> build() {
    std::vector<TreeNode> nodes;
    nodes.emplace_back();
    std::vector<Work> stack{{0, m_, 0, 0}};
    while (!stack.empty()) {
      // Pop the most recently pushed child; right is pushed first so the
      // left subtree (and its feature-subset draws) is processed first.
      Work w = stack.back();
      stack.pop_back();
      process(w, nodes, stack);
    }
    return nodes;
  }

  void process(const Work& w, std::vector<TreeNode>& nodes,
               std::vector<Work>& stack) {
    const std::size_t seg = w.end - w.begin;

    // Node statistics over the segment (any feature's ordering works).
    double w0 = 0.0, w1 = 0.0;      // classification class masses
    double sw = 0.0, st = 0.0;      // regression: weight, sum target
    double st2 = 0.0, sh = 0.0;     // regression: sum target^2, sum hessian
    const std::int32_t* base = sorted_.data() + 0 * m_ + w.begin;
    for (std::size_t i = 0; i < seg; ++i) {
      const std::int32_t slot = base[i];
      const double wt = weights_[static_cast<std::size_t>(slot)];
      if (regression_) {
        const double t = target_[static_cast<std::size_t>(rows_[slot])];
        sw += wt;
        st += wt * t;
        st2 += wt * t * t;
        if (!hessian_.empty()) {
          sh += wt * hessian_[static_cast<std::size_t>(rows_[slot])];
        }
      } else {
        if (y_[static_cast<std::size_t>(rows_[slot])] == 1) {
          w1 += wt;
        } else {
          w0 += wt;
        }
      }
    }

    bool pure;
    if (regression_) {
      const double mean_sq = sw > 0.0 ? (st * st) / sw : 0.0;
      const double sse = st2 - mean_sq;
      pure = sse <= 1e-12 * (std::abs(mean_sq) + 1.0);
    } else {
      pure = (w0 == 0.0) || (w1 == 0.0);
    }
    const bool depth_ok = opt_.max_depth < 0 || w.depth < opt_.max_depth;

    BestSplit best;
    if (!pure && depth_ok) best = scan(w);

    if (!best.found) {
      TreeNode& leaf = nodes[static_cast<std::size_t>(w.node)];
      leaf.feature = -1;
      if (regression_) {
        if (!hessian_.empty()) {
          leaf.value = sh > 0.0 ? st / sh : 0.0;
        } else {
          leaf.value = sw > 0.0 ? st / sw : 0.0;
        }
      } else {
        leaf.value = w1 > w0 ? 1.0 : 0.0;  // tie goes to class 0
      }
      return;
    }

    // Mark sides by the winning predicate, then stably partition every
    // feature's segment so in-segment sort order survives.
    const std::size_t ff = static_cast<std::size_t>(best.feature);
    const std::int32_t* win = sorted_.data() + ff * m_;
    std::size_t n_left = 0;
    for (std::size_t i = w.begin; i < w.end; ++i) {
      const std::int32_t slot = win[i];
      const bool left =
          x_.at(static_cast<std::size_t>(rows_[slot]), ff) <= best.threshold;
      side_[static_cast<std::size_t>(slot)] = left ? 1 : 0;
      if (left) ++n_left;
    }
    for (std::size_t f = 0; f < p_; ++f) {
      std::int32_t* segp = sorted_.data() + f * m_;
      std::size_t out = w.begin;
      std::size_t spill = 0;
      for (std::size_t i = w.begin; i < w.end; ++i) {
        const std::int32_t slot = segp[i];
        if (side_[static_cast<std::size_t>(slot)]) {
          segp[out++] = slot;
        } else {
          scratch_[spill++] = slot;
        }
      }
      std::copy(scratch_.begin(),
                scratch_.begin() + static_cast<std::ptrdiff_t>(spill),
                segp + out);
    }

    const std::size_t mid = w.begin + n_left;
    const std::int32_t left_id = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    const std::int32_t right_id = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    TreeNode& split = nodes[static_cast<std::size_t>(w.node)];
    split.feature = best.feature;
    split.threshold = best.threshold;
    split.left = left_id;
    split.right = right_id;
    stack.push_back({mid, w.end, w.depth + 1, right_id});
    stack.push_back({w.begin, mid, w.depth + 1, left_id});
  }

  // Pick the features this node considers; ascending order keeps the
  // "lowest feature wins ties" rule independent of draw order.
  std::span<const std::int32_t> node_features() {
    if (opt_.features_per_split <= 0 ||
        static_cast<std::size_t>(opt_.features_per_split) >= p_) {
      feature_pool_.resize(p_);
      std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
      return {feature_pool_.data(), p_};
    }
    const std::size_t k = static_cast<std::size_t>(opt_.features_per_split);
    feature_pool_.resize(p_);
    std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng_.uniform_below(
                                    static_cast<std::uint64_t>(p_ - i)));
      std::swap(feature_pool_[i], feature_pool_[j]);
    }
    std::sort(feature_pool_.begin(),
              feature_pool_.begin() + static_cast<std::ptrdiff_t>(k));
    return {feature_pool_.data(), k};
  }

  BestSplit scan(const Work& w) {
    BestSplit best;
    const std::span<const std::int32_t> feats = node_features();
    std::int64_t total_c = 0;
    {
      const std::int32_t* seg = sorted_.data() + 0 * m_;
      for (std::size_t i = w.begin; i < w.end; ++i) {
        total_c += counts_[static_cast<std::size_t>(seg[i])];
      }
    }
    for (const std::int32_t f : feats) {
      const std::size_t ff = static_cast<std::size_t>(f);
      const std::int32_t* seg = sorted_.data() + ff * m_;
      if (regression_) {
        scan_mse(w, f, seg, total_c, best);
      } else if (opt_.rule == SplitRule::kEntropy) {
        scan_entropy(w, f, seg, total_c, best);
      } else {
        scan_gini(w, f, seg, total_c, best);
      }
    }
    return best;
  }

  // Midpoint with a guard: when rounding pulls it up to the right-hand
  // value, fall back to the left-hand value so "x <= threshold" keeps the
  // training-time partition.
  static double midpoint(double lo, double hi) {
    double t = 0.5 * (lo + hi);
    if (t >= hi || !(t >= lo)) t = lo;
    return t;
  }

  void consider(BestSplit& best, double proxy, std::int32_t feature,
                double threshold) const {
    if (proxy > best.proxy) {
      best.found = true;
      best.proxy = proxy;
      best.feature = feature;
      best.threshold = threshold;
    }
  }

  void scan_gini(const Work& w, std::int32_t f, const std::int32_t* seg,
                 std::int64_t total_c, BestSplit& best) const {
    double tw0 = 0.0, tw1 = 0.0;
    for (std::size_t i = w.begin; i < w.end; ++i) {
      const std::int32_t slot = seg[i];
      const double wt = weights_[static_cast<std::size_t>(slot)];
      if (y_[static_cast<std::size_t>(rows_[slot])] == 1) {
        tw1 += wt;
      } else {
        tw0 += wt;
      }
    }
    double l0 = 0.0, l1 = 0.0;
    std::int64_t lc = 0;
    for (std::size_t i = w.begin; i + 1 < w.end; ++i) {
      const std::int32_t slot = seg[i];
      const std::size_t ff = static_cast<std::size_t>(f);
      const double wt = weights_[static_cast<std::size_t>(slot)];
      if (y_[static_cast<std::size_t>(rows_[slot])] == 1) {
        l1 += wt;
      } else {
        l0 += wt;
      }
      lc += counts_[static_cast<std::size_t>(slot)];
      const double v = x_.at(static_cast<std::size_t>(rows_[slot]), ff);
      const double vn =
          x_.at(static_cast<std::size_t>(rows_[seg[i + 1]]), ff);
      if (!(v < vn)) continue;
      if (lc < opt_.min_leaf || (total_c - lc) < opt_.min_leaf) continue;
      const double r0 = tw0 - l0;
      const double r1 = tw1 - l1;
      const double lw = l0 + l1;
      const double rw = r0 + r1;
      if (!(lw > 0.0) || !(rw > 0.0)) continue;
      const double proxy =
          (l0 * l0 + l1 * l1) / lw + (r0 * r0 + r1 * r1) / rw;
      consider(best, proxy, f, midpoint(v, vn));
    }
  }

  void scan_entropy(const Work& w, std::int32_t f, const std::int32_t* seg,
                    std::int64_t total_c, BestSplit& best) const {
    double tw0 = 0.0, tw1 = 0.0;
    for (std::size_t i = w.begin; i < w.end; ++i) {
      const std::int32_t slot = seg[i];
      const double wt = weights_[static_cast<std::size_t>(slot)];
      if (y_[static_cast<std::size_t>(rows_[slot])] == 1) {
        tw1 += wt;
      } else {
        tw0 += wt;
      }
    }
    auto plogp = [](double c, double tot) {
      if (c <= 0.0 || tot <= 0.0) return 0.0;
      const double p = c / tot;
      return p * std::log(p);
    };
    double l0 = 0.0, l1 = 0.0;
    std::int64_t lc = 0;
    for (std::size_t i = w.begin; i + 1 < w.end; ++i) {
      const std::int32_t slot = seg[i];
      const std::size_t ff = static_cast<std::size_t>(f);
      const double wt = weights_[static_cast<std::size_t>(slot)];
      if (y_[static_cast<std::size_t>(rows_[slot])] == 1) {
        l1 += wt;
      } else {
        l0 += wt;
      }
      lc += counts_[static_cast<std::size_t>(slot)];
      const double v = x_.at(static_cast<std::size_t>(rows_[slot]), ff);
      const double vn =
          x_.at(static_cast<std::size_t>(rows_[seg[i + 1]]), ff);
      if (!(v < vn)) continue;
      if (lc < opt_.min_leaf || (total_c - lc) < opt_.min_leaf) continue;
      const double r0 = tw0 - l0;
      const double r1 = tw1 - l1;
      const double lw = l0 + l1;
      const double rw = r0 + r1;
      if (!(lw > 0.0) || !(rw > 0.0)) continue;
      // Maximize the negated weighted child entropy.
      const double hl = -(plogp(l0, lw) + plogp(l1, lw));
      const double hr = -(plogp(r0, rw) + plogp(r1, rw));
      const double proxy = -(lw * hl + rw * hr);
      consider(best, proxy, f, midpoint(v, vn));
    }
  }

  void scan_mse(const Work& w, std::int32_t f, const std::int32_t* seg,
                std::int64_t total_c, BestSplit& best) const {
    double tsw = 0.0, tst = 0.0;
    for (std::size_t i = w.begin; i < w.end; ++i) {
      const std::int32_t slot = seg[i];
      const double wt = weights_[static_cast<std::size_t>(slot)];
      tsw += wt;
      tst += wt * target_[static_cast<std::size_t>(rows_[slot])];
    }
    double lsw = 0.0, lst = 0.0;
    std::int64_t lc = 0;
    for (std::size_t i = w.begin; i + 1 < w.end; ++i) {
      const std::int32_t slot = seg[i];
      const std::size_t ff = static_cast<std::size_t>(f);
      const double wt = weights_[static_cast<std::size_t>(slot)];
      lsw += wt;
      lst += wt * target_[static_cast<std::size_t>(rows_[slot])];
      lc += counts_[static_cast<std::size_t>(slot)];
      const double v = x_.at(static_cast<std::size_t>(rows_[slot]), ff);
      const double vn =
          x_.at(static_cast<std::size_t>(rows_[seg[i + 1]]), ff);
      if (!(v < vn)) continue;
      if (lc < opt_.min_leaf || (total_c - lc) < opt_.min_leaf) continue;
      const double rsw = tsw - lsw;
      const double rst = tst - lst;
      if (!(lsw > 0.0) || !(rsw > 0.0)) continue;
      const double proxy = lst * lst / lsw + rst * rst / rsw;
      consider(best, proxy, f, midpoint(v, vn));
    }
  }

  const MatrixView& x_;
  const TreeOptions& opt_;
  const std::vector<std::int32_t>& rows_;
  const std::vector<double>& weights_;
  const std::vector<std::int32_t>& counts_;
  std::span<const int> y_;
  std::span<const double> target_;
  std::span<const double> hessian_;
  bool regression_ = false;
  std::size_t m_ = 0;
  std::size_t p_ = 0;
  std::vector<std::int32_t> sorted_;
  std::vector<std::uint8_t> side_;
  std::vector<std::int32_t> scratch_;
  std::vector<std::int32_t> feature_pool_;
  Rng rng_{0};
};

}  // namespace

Presorted Presorted::build(const MatrixView& x) {
  Presorted pre;
  pre.n = x.rows;
  pre.p = x.cols;
  pre.order.resize(pre.n * pre.p);
  for (std::size_t f = 0; f < pre.p; ++f) {
    std::int32_t* seg = pre.order.data() + f * pre.n;
    std::iota(seg, seg + pre.n, 0);
    std::sort(seg, seg + pre.n, [&](std::int32_t a, std::int32_t b) {
      const double va = x.at(static_cast<std::size_t>(a), f);
      const double vb = x.at(static_cast<std::size_t>(b), f);
      if (va != vb) return va < vb;
      return a < b;
    });
  }
  return pre;
}

DecisionTree DecisionTree::fit_classifier(const MatrixView& x,
                                          std::span<const int> y,
                                          const TreeOptions& opt,
                                          const SampleSet& samples,
                                          const Presorted* pre) {
  if (y.size() != x.rows) throw TrainError("label count mismatches rows");
  for (const std::int32_t r : samples.rows) {
    if (r < 0 || static_cast<std::size_t>(r) >= x.rows) {
      throw TrainError("sample row out of range");
    }
  }
  Builder b(x, samples, opt, pre);
  DecisionTree t;
  t.nodes = b.build_classifier(y);
  return t;
}

DecisionTree DecisionTree::fit_classifier(const MatrixView& x,
                                          std::span<const int> y,
                                          const TreeOptions& opt,
                                          const Presorted* pre) {
  return fit_classifier(x, y, opt, SampleSet::all(x.rows), pre);
}

DecisionTree DecisionTree::fit_regressor(const MatrixView& x,
                                         std::span<const double> target,
                                         std::span<const double> hessian,
                                         const TreeOptions& opt,
                                         const Presorted* pre) {
  if (target.size() != x.rows) throw TrainError("target count mismatches rows");
  if (!hessian.empty() && hessian.size() != x.rows) {
    throw TrainError("hessian count mismatches rows");
  }
  TreeOptions o = opt;
  o.rule = SplitRule::kMse;
  const SampleSet samples = SampleSet::all(x.rows);  // Builder keeps references
  Builder b(x, samples, o, pre);
  DecisionTree t;
  t.nodes = b.build_regressor(target, hessian);
  return t;
}

}  // namespace creditrisk
