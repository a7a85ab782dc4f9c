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
#ifndef CREDITRISK_DOMAIN_HPP_
#define CREDITRISK_DOMAIN_HPP_

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace creditrisk {

struct YearQuarter {
  int year = 0;
  int quarter = 1;  // 1..4

  auto operator<=>(const YearQuarter&) const = default;

  YearQuarter next() const {
    return quarter == 4 ? YearQuarter{year + 1, 1} : YearQuarter{year, quarter + 1};
  }
};

std::string to_string(const YearQuarter& yq);

/// Ordinal severity of a bank's classification of the firm, increasing.
enum class Severity : int {
  kPerforming = 0,
  kPastDue = 1,
  kUnlikelyToPay = 2,
  kBad = 3,
};

/// One firm's credit-register snapshot for one quarter. Monetary fields are
/// euro amounts aggregated over the whole banking system.
struct FirmQuarterRecord {
  std::string firm_id;
  YearQuarter quarter;
  double granted = 0;             // L1
  double used = 0;                // L2
  int bank_class = 0;             // L3, ordinal 0..3
  double avg_used = 0;            // L4
  double overdraft = 0;           // L5
  double margins = 0;             // L6, may be negative
  double past_due_amt = 0;        // L7
  double problematic_amt = 0;     // L8
  double nonperforming_amt = 0;   // L9
  double collateralized_amt = 0;  // L10
  double protection_value = 0;    // L11
  double forborne_amt = 0;        // L12
};

/// One firm's annual accounts snapshot. Only a minority of firms file them.
struct BalanceSheetRecord {
  std::string firm_id;
  int year = 0;
  double revenues = 0;                    // B1
  double roe = 0;                         // B2
  double roa = 0;                         // B3
  double turnover = 0;                    // B5
  double total_assets = 0;                // B6
  double fin_charges_over_op_margin = 0;  // B7
  double ebitda = 0;                      // B8
};

struct Segment {
  int sector_code = 0;
  int geo_code = 0;

  auto operator<=>(const Segment&) const = default;
};

/// A firm's full history: quarterly credit records (strictly increasing in
/// (year, quarter)) plus optional annual balance sheets.
struct FirmPanel {
  std::string firm_id;
  std::vector<FirmQuarterRecord> quarters;
  std::vector<BalanceSheetRecord> balance_sheets;
  Segment segment;

  const FirmQuarterRecord* find_quarter(const YearQuarter& yq) const;
  const BalanceSheetRecord* find_balance_sheet(int year) const;
};

struct DefaultStatus {
  bool in_default = false;
  double negative_exposure = 0;
  double exposure_ratio = 0;  // in [0, 1]
};

/// Returns a violated-invariant description, or nullopt if the record is
/// well formed (finite fields, non-negative amounts, used within the granted
/// plus overdraft headroom, troubled amounts within the used amount).
std::optional<std::string> record_violation(const FirmQuarterRecord& rec);

std::optional<std::string> balance_violation(const BalanceSheetRecord& rec);

std::optional<std::string> panel_violation(const FirmPanel& panel);

/// Adjusted-default classification of a single quarter: the firm is in
/// default when its troubled exposure (past-due + problematic +
/// non-performing) exceeds `threshold` as a fraction of the used amount.
/// A firm with zero used amount is never in default.
DefaultStatus adjusted_default_status(const FirmQuarterRecord& rec,
                                      double threshold);

/// Target label for the prediction task at `reference_year`: given a firm
/// not in default at Q4 of the reference year, did it enter default in any
/// quarter of the following year? Returns nullopt when the firm is already
/// in default at the reference point or any required quarter is missing.
std::optional<int> make_target(const FirmPanel& panel, int reference_year,
                               double threshold);

}  // namespace creditrisk

#endif  // CREDITRISK_DOMAIN_HPP_
