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
#ifndef CREDITRISK_ERRORS_HPP_
#define CREDITRISK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace creditrisk {

/// Invalid configuration or parameters supplied by the caller (CLI exit 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed, missing, or inconsistent input data (CLI exit 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A learner failed to train (degenerate labels, diverged optimization, ...).
class TrainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace creditrisk

#endif  // CREDITRISK_ERRORS_HPP_
