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
#ifndef CREDITRISK_SYNTH_HPP_
#define CREDITRISK_SYNTH_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "creditrisk/domain.hpp"

namespace creditrisk {

/// Parameters of the synthetic credit-register generator. Firms follow a
/// 4-state severity Markov chain driven by a latent distress score; a global
/// hazard scale is calibrated by bisection so the realized share of firms
/// entering default in the year after the reference year matches
/// target_default_rate.
struct GeneratorConfig {
  std::size_t n_firms = 1000;
  double balance_sheet_fraction = 0.375;
  YearQuarter start{2012, 4};
  int n_quarters = 9;
  double target_default_rate = 0.043;
  // Base quarterly escalation probability out of severities 0..2; the
  // calibrated hazard scale multiplies all three.
  std::array<double, 3> deterioration_rates{0.020, 0.25, 0.30};
  // Strength of the fundamentals signal carried by the balance-sheet
  // columns; 0 makes them pure noise. Does not affect default dynamics.
  double balance_signal = 1.0;
  int n_sectors = 12;
  int n_geos = 10;
  std::uint64_t seed = 0;
};

/// The reference year implied by a generator config: the first calendar year
/// whose Q4 closes a full 5-quarter feature window inside the panel.
int generator_reference_year(const GeneratorConfig& config);

/// Deterministically generates n_firms panels. Throws ConfigError when the
/// config breaks an invariant (rates outside (0,1), probabilities outside
/// [0,1], or too few quarters to cover a feature window plus at least one
/// target quarter). n_firms = 0 yields an empty collection.
std::vector<FirmPanel> generate(const GeneratorConfig& config);

/// Aggregate statistics of a generated (or loaded) panel collection,
/// evaluated at a reference year and adjusted-default threshold.
struct CalibrationReport {
  std::size_t n_firms = 0;
  std::size_t eligible_firms = 0;  // defined target at the reference year
  std::size_t defaulted_firms = 0;
  double default_rate = 0.0;       // defaulted / eligible
  double balance_coverage = 0.0;   // share of firms with any balance sheet
  std::array<double, 4> severity_prevalence{};  // firm-quarter shares
};

/// Throws DataError("empty panel set") on empty input.
CalibrationReport calibration_report(const std::vector<FirmPanel>& panels,
                                     int reference_year, double threshold);

std::string render_calibration_json(const CalibrationReport& report);

}  // namespace creditrisk

#endif  // CREDITRISK_SYNTH_HPP_
