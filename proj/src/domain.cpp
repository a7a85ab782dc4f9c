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
#include "creditrisk/domain.hpp"

#include <cmath>

#include "creditrisk/errors.hpp"

namespace creditrisk {

std::string to_string(const YearQuarter& yq) {
  return std::to_string(yq.year) + "Q" + std::to_string(yq.quarter);
}

const FirmQuarterRecord* FirmPanel::find_quarter(const YearQuarter& yq) const {
  for (const auto& rec : quarters) {
    if (rec.quarter == yq) return &rec;
  }
  return nullptr;
}

const BalanceSheetRecord* FirmPanel::find_balance_sheet(int year) const {
  for (const auto& rec : balance_sheets) {
    if (rec.year == year) return &rec;
  }
  return nullptr;
}

namespace {

bool finite(double v) { return std::isfinite(v); }

// Tolerance for sums of amounts that were generated as exact fractions of
// the used amount and may differ in the last few ulps.
constexpr double kAmountSlack = 1e-6;

}  // namespace

std::optional<std::string> record_violation(const FirmQuarterRecord& rec) {
  const struct {
    const char* name;
    double value;
    bool non_negative;
  } fields[] = {
      {"L1 granted", rec.granted, true},
      {"L2 used", rec.used, true},
      {"L4 avg_used", rec.avg_used, true},
      {"L5 overdraft", rec.overdraft, true},
      {"L6 margins", rec.margins, false},
      {"L7 past_due_amt", rec.past_due_amt, true},
      {"L8 problematic_amt", rec.problematic_amt, true},
      {"L9 nonperforming_amt", rec.nonperforming_amt, true},
      {"L10 collateralized_amt", rec.collateralized_amt, true},
      {"L11 protection_value", rec.protection_value, true},
      {"L12 forborne_amt", rec.forborne_amt, true},
  };
  for (const auto& f : fields) {
    if (!finite(f.value)) return std::string(f.name) + " is not finite";
    if (f.non_negative && f.value < 0) return std::string(f.name) + " is negative";
  }
  if (rec.quarter.quarter < 1 || rec.quarter.quarter > 4)
    return "quarter out of range";
  if (rec.bank_class < 0 || rec.bank_class > 3)
    return "L3 bank_class out of range 0..3";
  double slack = kAmountSlack * (1.0 + rec.used + rec.granted);
  if (rec.used > rec.granted + rec.overdraft + slack)
    return "L2 used exceeds granted plus overdraft";
  if (rec.past_due_amt + rec.problematic_amt + rec.nonperforming_amt >
      rec.used + slack)
    return "troubled amounts exceed used amount";
  if (rec.collateralized_amt > rec.used + slack)
    return "L10 collateralized_amt exceeds used amount";
  return std::nullopt;
}

std::optional<std::string> balance_violation(const BalanceSheetRecord& rec) {
  const struct {
    const char* name;
    double value;
  } fields[] = {
      {"B1 revenues", rec.revenues},
      {"B2 roe", rec.roe},
      {"B3 roa", rec.roa},
      {"B5 turnover", rec.turnover},
      {"B6 total_assets", rec.total_assets},
      {"B7 fin_charges_over_op_margin", rec.fin_charges_over_op_margin},
      {"B8 ebitda", rec.ebitda},
  };
  for (const auto& f : fields) {
    if (!finite(f.value)) return std::string(f.name) + " is not finite";
  }
  if (rec.total_assets < 0) return "B6 total_assets is negative";
  return std::nullopt;
}

std::optional<std::string> panel_violation(const FirmPanel& panel) {
  for (std::size_t i = 0; i < panel.quarters.size(); ++i) {
    if (auto v = record_violation(panel.quarters[i])) {
      return "firm " + panel.firm_id + " " +
             to_string(panel.quarters[i].quarter) + ": " + *v;
    }
    if (panel.quarters[i].firm_id != panel.firm_id)
      return "firm " + panel.firm_id + ": quarter record with foreign firm_id";
    if (i > 0 && !(panel.quarters[i - 1].quarter < panel.quarters[i].quarter))
      return "firm " + panel.firm_id + ": quarters not strictly increasing";
  }
  for (const auto& bs : panel.balance_sheets) {
    if (auto v = balance_violation(bs))
      return "firm " + panel.firm_id + " year " + std::to_string(bs.year) +
             ": " + *v;
    if (bs.firm_id != panel.firm_id)
      return "firm " + panel.firm_id + ": balance sheet with foreign firm_id";
  }
  return std::nullopt;
}

DefaultStatus adjusted_default_status(const FirmQuarterRecord& rec,
                                      double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ConfigError("default threshold must be in (0, 1)");
  DefaultStatus status;
  status.negative_exposure =
      rec.past_due_amt + rec.problematic_amt + rec.nonperforming_amt;
  status.exposure_ratio =
      rec.used > 0 ? status.negative_exposure / rec.used : 0.0;
  status.in_default = status.exposure_ratio > threshold;
  return status;
}

std::optional<int> make_target(const FirmPanel& panel, int reference_year,
                               double threshold) {
  const FirmQuarterRecord* ref = panel.find_quarter({reference_year, 4});
  if (ref == nullptr) return std::nullopt;
  const FirmQuarterRecord* horizon[4];
  for (int q = 1; q <= 4; ++q) {
    horizon[q - 1] = panel.find_quarter({reference_year + 1, q});
    if (horizon[q - 1] == nullptr) return std::nullopt;
  }
  // Firms already in default at the reference point are outside the task
  // population.
  if (adjusted_default_status(*ref, threshold).in_default) return std::nullopt;
  for (const auto* rec : horizon) {
    if (adjusted_default_status(*rec, threshold).in_default) return 1;
  }
  return 0;
}

}  // namespace creditrisk
