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
#include "creditrisk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <nlohmann/json.hpp>

#include "creditrisk/errors.hpp"
#include "creditrisk/rng.hpp"
#include "creditrisk/util.hpp"

namespace creditrisk {
namespace {

// Latent-distress model constants. Sector and geography shift every firm in
// the segment; the core component surfaces through loan behaviour, the
// fundamentals component also drives the balance-sheet columns.
constexpr double kSectorAmplitude = 0.80;
constexpr double kGeoAmplitude = 0.45;
constexpr double kCoreWeight = 0.90;
constexpr double kFundWeight = 0.75;
constexpr double kHazardSensitivity = 2.20;
constexpr double kNoiseRho = 0.85;       // AR(1) persistence of shocks
constexpr double kNoiseSigma = 0.35;
constexpr double kMaxEscalation = 0.90;  // per-quarter probability cap
// Quarterly probability of stepping one severity down (index = severity).
constexpr double kRecoveryRates[4] = {0.0, 0.35, 0.12, 0.02};

double signed_unit(std::uint64_t h) {
  return static_cast<double>(mix64(h) >> 11) * 0x1.0p-52 - 1.0;
}

double sector_effect(int sector) {
  return kSectorAmplitude *
         signed_unit(0x5ec70aull ^ static_cast<std::uint64_t>(sector));
}

double geo_effect(int geo) {
  return kGeoAmplitude *
         signed_unit(0x6e0c0deull ^ static_cast<std::uint64_t>(geo));
}

// Segment sizes follow a Zipf profile: a few large sectors/areas and a long
// tail of small ones, as in real firm registers.
int zipf_pick(double u, int n) {
  double total = 0.0;
  for (int k = 0; k < n; ++k) total += 1.0 / static_cast<double>(k + 1);
  const double target = u * total;
  double cum = 0.0;
  for (int k = 0; k < n; ++k) {
    cum += 1.0 / static_cast<double>(k + 1);
    if (target < cum) return k;
  }
  return n - 1;
}

// Everything random a firm's severity path depends on, drawn once so the
// path is a pure function of (draws, hazard scale) during calibration.
struct FirmDraws {
  int sector = 0;
  int geo = 0;
  double core = 0;
  double fund = 0;
  double distress = 0;            // segment effects + core + fund
  std::vector<double> shocks;     // AR(1) noise, one per quarter
  std::array<double, 3> init_u{};  // initial-state uniforms
  std::vector<double> trans_u;    // transition uniforms, quarters 1..T-1
};

FirmDraws draw_firm(const GeneratorConfig& cfg, std::size_t firm) {
  FirmDraws d;
  Rng seg(derive_seed(cfg.seed, "segment", firm));
  d.sector = zipf_pick(seg.uniform(), cfg.n_sectors);
  d.geo = zipf_pick(seg.uniform(), cfg.n_geos);

  Rng latent(derive_seed(cfg.seed, "latent", firm));
  d.core = latent.normal();
  d.fund = latent.normal();
  d.distress = sector_effect(d.sector) + geo_effect(d.geo) +
               kCoreWeight * d.core + kFundWeight * d.fund;
  const int t = cfg.n_quarters;
  d.shocks.resize(static_cast<std::size_t>(t));
  double eps = kNoiseSigma * latent.normal();
  d.shocks[0] = eps;
  const double innovation = kNoiseSigma * std::sqrt(1.0 - kNoiseRho * kNoiseRho);
  for (int q = 1; q < t; ++q) {
    eps = kNoiseRho * eps + innovation * latent.normal();
    d.shocks[static_cast<std::size_t>(q)] = eps;
  }

  Rng chain(derive_seed(cfg.seed, "chain", firm));
  for (auto& u : d.init_u) u = chain.uniform();
  d.trans_u.resize(static_cast<std::size_t>(t > 0 ? t - 1 : 0));
  for (auto& u : d.trans_u) u = chain.uniform();
  return d;
}

// Severity path over the panel for one firm at a given hazard scale.
void severity_path(const GeneratorConfig& cfg, const FirmDraws& d,
                   double hazard_scale, std::vector<int>& states) {
  const int t = cfg.n_quarters;
  states.assign(static_cast<std::size_t>(t), 0);
  double p1 = std::clamp(0.04 * std::exp(0.8 * d.distress), 0.0, 0.5);
  int s = 0;
  if (d.init_u[0] < p1) {
    s = 1;
    if (d.init_u[1] < 0.4) s = 2;
    if (s == 2 && d.init_u[2] < 0.4) s = 3;
  }
  states[0] = s;
  for (int q = 1; q < t; ++q) {
    double esc = 0.0;
    if (s < 3) {
      const double m = std::exp(kHazardSensitivity *
                                (d.distress + d.shocks[static_cast<std::size_t>(q)]));
      esc = std::clamp(
          hazard_scale * cfg.deterioration_rates[static_cast<std::size_t>(s)] * m,
          0.0, kMaxEscalation);
    }
    const double rec = std::min(kRecoveryRates[s], 1.0 - esc);
    const double u = d.trans_u[static_cast<std::size_t>(q - 1)];
    if (u < esc) {
      ++s;
    } else if (u < esc + rec) {
      --s;
    }
    states[static_cast<std::size_t>(q)] = s;
  }
}

struct Horizon {
  int ref_q4_index = 0;     // index of the reference year's Q4
  int last_target_index = 0;  // last in-panel quarter of the following year
};

// Index of the first Q4 in the panel; the reference Q4 sits one year later.
Horizon horizon_of(const GeneratorConfig& cfg) {
  const int offset = (4 - cfg.start.quarter) % 4;
  Horizon h;
  h.ref_q4_index = offset + 4;
  h.last_target_index = std::min(cfg.n_quarters - 1, h.ref_q4_index + 4);
  return h;
}

// Share of firms not in default at the reference Q4 that enter default in
// the following year's in-panel quarters.
double realized_rate(const std::vector<FirmDraws>& draws,
                     const GeneratorConfig& cfg, const Horizon& h,
                     double hazard_scale) {
  std::size_t eligible = 0;
  std::size_t defaulted = 0;
  std::vector<int> states;
  for (const auto& d : draws) {
    severity_path(cfg, d, hazard_scale, states);
    if (states[static_cast<std::size_t>(h.ref_q4_index)] != 0) continue;
    ++eligible;
    for (int q = h.ref_q4_index + 1; q <= h.last_target_index; ++q) {
      if (states[static_cast<std::size_t>(q)] > 0) {
        ++defaulted;
        break;
      }
    }
  }
  if (eligible == 0) return 0.0;
  return static_cast<double>(defaulted) / static_cast<double>(eligible);
}

double calibrate_hazard(const std::vector<FirmDraws>& draws,
                        const GeneratorConfig& cfg, const Horizon& h) {
  double lo = std::log(1e-4);
  double hi = std::log(50.0);
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 60; ++i) {
    mid = 0.5 * (lo + hi);
    const double rate = realized_rate(draws, cfg, h, std::exp(mid));
    if (rate < cfg.target_default_rate) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

void validate(const GeneratorConfig& cfg) {
  if (!(cfg.target_default_rate > 0.0 && cfg.target_default_rate < 1.0))
    throw ConfigError("target_default_rate must be in (0, 1)");
  if (!(cfg.balance_sheet_fraction >= 0.0 && cfg.balance_sheet_fraction <= 1.0))
    throw ConfigError("balance_sheet_fraction must be in [0, 1]");
  for (double r : cfg.deterioration_rates) {
    if (!(r >= 0.0 && r <= 1.0))
      throw ConfigError("deterioration rates must be in [0, 1]");
  }
  if (cfg.start.quarter < 1 || cfg.start.quarter > 4)
    throw ConfigError("start quarter must be in 1..4");
  if (cfg.n_quarters < 6)
    throw ConfigError("n_quarters must be at least 6");
  if (cfg.n_sectors < 1 || cfg.n_geos < 1)
    throw ConfigError("n_sectors and n_geos must be positive");
  const Horizon h = horizon_of(cfg);
  if (h.ref_q4_index + 1 >= cfg.n_quarters)
    throw ConfigError(
        "n_quarters too small: the panel must reach past the reference Q4 (" +
        std::to_string(h.ref_q4_index + 2) + " quarters needed from Q" +
        std::to_string(cfg.start.quarter) + ")");
}

std::string firm_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "F%06zu", index);
  return buf;
}

// Troubled-exposure fractions of the used amount per severity state. State 0
// stays well below the 5% adjusted-default threshold, every other state
// stays well above it, so the label is a pure function of the state.
// `pressure` is the firm's current distress + shock; performing firms under
// pressure show small past-due amounts more often and closer to the cap.
void troubled_amounts(int state, double used, double pressure, Rng& rng,
                      FirmQuarterRecord& rec) {
  switch (state) {
    case 0: {
      const double p = std::clamp(0.06 * std::exp(0.9 * pressure), 0.0, 0.5);
      if (rng.uniform() < p) {
        const double lean = 1.0 / (1.0 + std::exp(-pressure));
        rec.past_due_amt = used * (0.005 + 0.025 * rng.uniform() * lean);
      }
      break;
    }
    case 1:
      rec.past_due_amt = used * rng.uniform(0.08, 0.30);
      break;
    case 2:
      rec.past_due_amt = used * rng.uniform(0.0, 0.05);
      rec.problematic_amt = used * rng.uniform(0.10, 0.40);
      break;
    default:
      rec.past_due_amt = used * rng.uniform(0.0, 0.05);
      rec.problematic_amt = used * rng.uniform(0.0, 0.10);
      rec.nonperforming_amt = used * rng.uniform(0.25, 0.60);
      break;
  }
}

}  // namespace

int generator_reference_year(const GeneratorConfig& config) {
  return config.start.year + 1;
}

std::vector<FirmPanel> generate(const GeneratorConfig& config) {
  validate(config);
  if (config.n_firms == 0) return {};

  std::vector<FirmDraws> draws;
  draws.reserve(config.n_firms);
  for (std::size_t i = 0; i < config.n_firms; ++i)
    draws.push_back(draw_firm(config, i));

  const Horizon h = horizon_of(config);
  const double hazard = calibrate_hazard(draws, config, h);

  // Exactly round(fraction * n) firms carry balance sheets, chosen
  // independently of the default dynamics.
  const std::size_t n_balance = static_cast<std::size_t>(
      std::llround(config.balance_sheet_fraction *
                   static_cast<double>(config.n_firms)));
  std::vector<std::size_t> order(config.n_firms);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng select(derive_seed(config.seed, "bselect"));
  select.shuffle(order);
  std::vector<char> has_balance(config.n_firms, 0);
  for (std::size_t i = 0; i < n_balance && i < order.size(); ++i)
    has_balance[order[i]] = 1;

  std::vector<FirmPanel> panels(config.n_firms);
  std::vector<int> states;
  for (std::size_t i = 0; i < config.n_firms; ++i) {
    const FirmDraws& d = draws[i];
    severity_path(config, d, hazard, states);

    FirmPanel& panel = panels[i];
    panel.firm_id = firm_name(i);
    panel.segment = Segment{d.sector, d.geo};

    Rng amt(derive_seed(config.seed, "amounts", i));
    const double granted = std::max(30000.0, std::exp(amt.normal(12.0, 1.0)));

    panel.quarters.resize(static_cast<std::size_t>(config.n_quarters));
    YearQuarter yq = config.start;
    for (int q = 0; q < config.n_quarters; ++q) {
      FirmQuarterRecord& rec = panel.quarters[static_cast<std::size_t>(q)];
      rec.firm_id = panel.firm_id;
      rec.quarter = yq;
      rec.bank_class = states[static_cast<std::size_t>(q)];
      rec.granted = granted;
      const double pressure =
          d.distress + d.shocks[static_cast<std::size_t>(q)];
      const double usage = std::clamp(
          0.45 + 0.20 * d.distress + 0.10 * d.shocks[static_cast<std::size_t>(q)] +
              0.07 * amt.normal(),
          0.05, 0.95);
      rec.used = granted * usage;
      rec.avg_used = rec.used * amt.uniform(0.85, 1.0);
      rec.overdraft = granted * amt.uniform(0.0, 0.08);
      rec.margins = granted * amt.uniform(-0.04, 0.12);
      rec.collateralized_amt = rec.used * amt.uniform(0.2, 0.7);
      rec.protection_value = rec.collateralized_amt * amt.uniform(0.5, 1.1);
      troubled_amounts(rec.bank_class, rec.used, pressure, amt, rec);
      if (rec.bank_class > 0) {
        rec.forborne_amt = rec.used * amt.uniform(0.05, 0.25);
      } else if (amt.uniform() < 0.03) {
        rec.forborne_amt = rec.used * amt.uniform(0.01, 0.05);
      }
      yq = yq.next();
    }

    if (has_balance[i]) {
      Rng bal(derive_seed(config.seed, "balance", i));
      const double revenue_base = std::exp(bal.normal(12.3, 1.1));
      const double k = config.balance_signal;
      const int first_year = config.start.year;
      const int last_year = panel.quarters.back().quarter.year;
      for (int year = first_year; year <= last_year; ++year) {
        BalanceSheetRecord bs;
        bs.firm_id = panel.firm_id;
        bs.year = year;
        // Profitability and charge ratios deteriorate with the firm's overall
        // distress, so annual accounts add an independent read of the same
        // risk the loan behaviour reflects.
        bs.revenues = revenue_base * bal.uniform(0.90, 1.12);
        bs.roe = 0.060 - 0.150 * k * d.distress + bal.normal(0.0, 0.04);
        bs.roa = 0.025 - 0.060 * k * d.distress + bal.normal(0.0, 0.015);
        bs.turnover = bs.revenues * bal.uniform(0.85, 1.15);
        bs.total_assets = bs.revenues * bal.uniform(0.9, 2.8);
        bs.fin_charges_over_op_margin =
            0.30 + 0.600 * k * d.distress + bal.normal(0.0, 0.09);
        bs.ebitda = bs.total_assets *
                    (0.050 - 0.110 * k * d.distress + bal.normal(0.0, 0.025));
        panel.balance_sheets.push_back(std::move(bs));
      }
    }
  }
  return panels;
}

CalibrationReport calibration_report(const std::vector<FirmPanel>& panels,
                                     int reference_year, double threshold) {
  if (panels.empty()) throw DataError("empty panel set");
  CalibrationReport rep;
  rep.n_firms = panels.size();
  std::size_t quarters_total = 0;
  std::array<std::size_t, 4> severity_counts{};
  std::size_t with_balance = 0;
  for (const auto& panel : panels) {
    if (!panel.balance_sheets.empty()) ++with_balance;
    for (const auto& rec : panel.quarters) {
      ++quarters_total;
      const int cls = std::clamp(rec.bank_class, 0, 3);
      ++severity_counts[static_cast<std::size_t>(cls)];
    }
    if (auto target = make_target(panel, reference_year, threshold)) {
      ++rep.eligible_firms;
      if (*target == 1) ++rep.defaulted_firms;
    }
  }
  if (rep.eligible_firms > 0) {
    rep.default_rate = static_cast<double>(rep.defaulted_firms) /
                       static_cast<double>(rep.eligible_firms);
  }
  rep.balance_coverage =
      static_cast<double>(with_balance) / static_cast<double>(rep.n_firms);
  if (quarters_total > 0) {
    for (std::size_t s = 0; s < 4; ++s) {
      rep.severity_prevalence[s] = static_cast<double>(severity_counts[s]) /
                                   static_cast<double>(quarters_total);
    }
  }
  return rep;
}

std::string render_calibration_json(const CalibrationReport& report) {
  nlohmann::json j;
  j["version"] = 1;
  j["n_firms"] = report.n_firms;
  j["eligible_firms"] = report.eligible_firms;
  j["defaulted_firms"] = report.defaulted_firms;
  j["default_rate"] = format_double(report.default_rate);
  j["balance_coverage"] = format_double(report.balance_coverage);
  j["severity_prevalence"] = {
      {"performing", format_double(report.severity_prevalence[0])},
      {"past_due", format_double(report.severity_prevalence[1])},
      {"unlikely_to_pay", format_double(report.severity_prevalence[2])},
      {"bad", format_double(report.severity_prevalence[3])},
  };
  return j.dump(2) + "\n";
}

}  // namespace creditrisk
