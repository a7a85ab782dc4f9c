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
#ifndef CREDITRISK_MODEL_IO_HPP_
#define CREDITRISK_MODEL_IO_HPP_

#include <string>

#include "creditrisk/ensemble.hpp"
#include "creditrisk/learners.hpp"

namespace creditrisk {

// Versioned JSON model files. Every floating-point number is stored as a
// shortest-round-trip decimal string, so a load reproduces the trained
// model's predictions bit-exactly.

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

/// The committee persists as a manifest that references its ten member
/// files (written next to the manifest as <stem>.member<i>.json).
void save_comb(const CombModel& model, const std::string& manifest_path);
CombModel load_comb(const std::string& manifest_path);

}  // namespace creditrisk

#endif  // CREDITRISK_MODEL_IO_HPP_
