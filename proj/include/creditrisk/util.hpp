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
#ifndef CREDITRISK_UTIL_HPP_
#define CREDITRISK_UTIL_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace creditrisk {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Strict double parse; throws DataError with `context` on failure.
double parse_double(std::string_view text, std::string_view context);

/// Strict integer parse; throws DataError with `context` on failure.
long long parse_int(std::string_view text, std::string_view context);

std::vector<std::string> split_csv_line(std::string_view line);

/// Caps the number of worker threads used by parallel_for (0 = hardware).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(i) for i in [0, n). Work is split across at most max_threads()
/// workers; callers must make fn(i) independent of execution order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace creditrisk

#endif  // CREDITRISK_UTIL_HPP_
