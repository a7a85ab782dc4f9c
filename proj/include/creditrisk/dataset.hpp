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
#ifndef CREDITRISK_DATASET_HPP_
#define CREDITRISK_DATASET_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "creditrisk/domain.hpp"

namespace creditrisk {

/// Fixed-width feature matrix with binary labels and firm/segment ids.
/// Rows are stored row-major; all cells are finite.
struct LabeledDataset {
  std::vector<std::string> feature_names;
  std::vector<double> cells;  // n_rows() * width(), row-major
  std::vector<int> labels;
  std::vector<std::string> firm_ids;
  std::vector<Segment> segments;

  std::size_t n_rows() const { return labels.size(); }
  std::size_t width() const { return feature_names.size(); }

  std::span<const double> row(std::size_t i) const {
    return {cells.data() + i * width(), width()};
  }

  double cell(std::size_t i, std::size_t j) const {
    return cells[i * width() + j];
  }

  void append_row(std::span<const double> values, int label,
                  std::string firm_id, Segment segment);

  /// Rows selected by index, in the given order.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

  std::size_t count_label(int label) const;

  /// Throws DataError describing the first structural defect, if any.
  void validate() const;
};

}  // namespace creditrisk

#endif  // CREDITRISK_DATASET_HPP_
