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
#include "creditrisk/metrics.hpp"

#include "creditrisk/errors.hpp"

namespace creditrisk {

ConfusionMatrix confusion(std::span<const int> predictions,
                          std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    throw DataError("confusion: " + std::to_string(predictions.size()) +
                    " predictions vs " + std::to_string(labels.size()) +
                    " labels");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const bool pred = predictions[i] != 0;
    const bool truth = labels[i] != 0;
    if (truth) {
      pred ? ++cm.tp : ++cm.fn;
    } else {
      pred ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den, const char* name,
             std::vector<std::string>& degenerate) {
  if (den == 0) {
    degenerate.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricsReport metrics(const ConfusionMatrix& cm) {
  MetricsReport r;
  r.matrix = cm;
  r.precision = ratio(cm.tp, cm.tp + cm.fp, "precision", r.degenerate);
  r.recall = ratio(cm.tp, cm.tp + cm.fn, "recall", r.degenerate);
  if (r.precision + r.recall > 0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  } else {
    r.f1 = 0.0;
    r.degenerate.emplace_back("f1");
  }
  r.type_i = ratio(cm.fn, cm.tp + cm.fn, "type_i", r.degenerate);
  r.type_ii = ratio(cm.fp, cm.tn + cm.fp, "type_ii", r.degenerate);
  double specificity = ratio(cm.tn, cm.tn + cm.fp, "bacc", r.degenerate);
  r.bacc = (r.recall + specificity) / 2.0;
  return r;
}

MetricsReport metrics(std::span<const int> predictions,
                      std::span<const int> labels) {
  return metrics(confusion(predictions, labels));
}

}  // namespace creditrisk
