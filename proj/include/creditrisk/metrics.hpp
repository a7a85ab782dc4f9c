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
#ifndef CREDITRISK_METRICS_HPP_
#define CREDITRISK_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace creditrisk {

/// Binary confusion counts; the positive class is default (= 1).
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
};

/// The six evaluation measures derived from a confusion matrix. Ratios with
/// a zero denominator are reported as 0 and listed in `degenerate`.
struct MetricsReport {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double type_i = 0;   // missed defaults: fn / (tp + fn)
  double type_ii = 0;  // false alarms:   fp / (tn + fp)
  double bacc = 0;     // balanced accuracy: (recall + specificity) / 2
  ConfusionMatrix matrix;
  std::vector<std::string> degenerate;
};

ConfusionMatrix confusion(std::span<const int> predictions,
                          std::span<const int> labels);

MetricsReport metrics(const ConfusionMatrix& cm);

MetricsReport metrics(std::span<const int> predictions,
                      std::span<const int> labels);

}  // namespace creditrisk

#endif  // CREDITRISK_METRICS_HPP_
