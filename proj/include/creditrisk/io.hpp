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
#ifndef CREDITRISK_IO_HPP_
#define CREDITRISK_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "creditrisk/dataset.hpp"
#include "creditrisk/domain.hpp"
#include "creditrisk/features.hpp"

namespace creditrisk {

/// Writes `content` to `path` via a temp file + rename so a failed run never
/// leaves a partial file behind.
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

// Firm-quarter records: header
// firm_id,year,quarter,L1,...,L12,sector,geo — one row per firm-quarter.
void write_loans_csv(const std::vector<FirmPanel>& panels,
                     const std::string& path);

// Balance sheets: header firm_id,year,B1,B2,B3,B5,B6,B7,B8.
// Empty fields read back as missing (imputed to zero downstream).
void write_balance_csv(const std::vector<FirmPanel>& panels,
                       const std::string& path);

/// Reassembles panels from the two CSVs. `balance_path` may be empty, in
/// which case no firm carries balance sheets. Quarters are ordered
/// chronologically; firms keep first-appearance order.
std::vector<FirmPanel> read_panels(const std::string& loans_path,
                                   const std::string& balance_path);

/// Sidecar description of a serialized dataset.
struct DatasetManifest {
  int version = 1;
  std::vector<std::string> feature_names;
  int reference_year = 0;
  bool use_balance = false;
  double threshold = 0.0;
  std::uint64_t seed = 0;
  SkipReport skips;
};

std::string dataset_manifest_path(const std::string& csv_path);

// Dataset CSV: header firm_id,sector,geo,label,<feature names...>.
void write_dataset_csv(const LabeledDataset& ds, const std::string& path);
LabeledDataset read_dataset_csv(const std::string& path);

void write_manifest(const DatasetManifest& m, const std::string& path);
DatasetManifest read_manifest(const std::string& path);

}  // namespace creditrisk

#endif  // CREDITRISK_IO_HPP_
