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
#include "creditrisk/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "creditrisk/errors.hpp"
#include "creditrisk/util.hpp"

namespace creditrisk {

namespace {

using nlohmann::json;

const char kLoansHeader[] =
    "firm_id,year,quarter,L1,L2,L3,L4,L5,L6,L7,L8,L9,L10,L11,L12,sector,geo";
const char kBalanceHeader[] = "firm_id,year,B1,B2,B3,B5,B6,B7,B8";

std::string row_context(const std::string& path, std::size_t line_no) {
  return path + ":" + std::to_string(line_no);
}

void check_header(const std::string& path, const std::string& got,
                  const std::string& want) {
  if (got == want) return;
  const auto g = split_csv_line(got);
  const auto w = split_csv_line(want);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i >= g.size() || g[i] != w[i]) {
      throw DataError(path + ": missing or misplaced column '" + w[i] +
                      "' (expected header '" + want + "')");
    }
  }
  throw DataError(path + ": unexpected extra columns (expected header '" +
                  want + "')");
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (lines.empty()) throw DataError(path + ": empty file");
  return lines;
}

// Empty balance-sheet fields mean "not reported"; they join the downstream
// zero-imputation path, so parse them as 0.
double parse_balance_field(const std::string& s, const std::string& ctx) {
  if (s.empty()) return 0.0;
  return parse_double(s, ctx);
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DataError("cannot rename " + tmp + " to " + path + ": " +
                    ec.message());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_loans_csv(const std::vector<FirmPanel>& panels,
                     const std::string& path) {
  std::string out;
  out.reserve(panels.size() * 24 * 96);
  out += kLoansHeader;
  out += '\n';
  for (const FirmPanel& p : panels) {
    for (const FirmQuarterRecord& q : p.quarters) {
      out += p.firm_id;
      out += ',';
      out += std::to_string(q.quarter.year);
      out += ',';
      out += std::to_string(q.quarter.quarter);
      out += ',';
      out += format_double(q.granted);
      out += ',';
      out += format_double(q.used);
      out += ',';
      out += std::to_string(q.bank_class);
      out += ',';
      out += format_double(q.avg_used);
      out += ',';
      out += format_double(q.overdraft);
      out += ',';
      out += format_double(q.margins);
      out += ',';
      out += format_double(q.past_due_amt);
      out += ',';
      out += format_double(q.problematic_amt);
      out += ',';
      out += format_double(q.nonperforming_amt);
      out += ',';
      out += format_double(q.collateralized_amt);
      out += ',';
      out += format_double(q.protection_value);
      out += ',';
      out += format_double(q.forborne_amt);
      out += ',';
      out += std::to_string(p.segment.sector_code);
      out += ',';
      out += std::to_string(p.segment.geo_code);
      out += '\n';
    }
  }
  write_text_file(path, out);
}

void write_balance_csv(const std::vector<FirmPanel>& panels,
                       const std::string& path) {
  std::string out;
  out += kBalanceHeader;
  out += '\n';
  for (const FirmPanel& p : panels) {
    for (const BalanceSheetRecord& b : p.balance_sheets) {
      out += p.firm_id;
      out += ',';
      out += std::to_string(b.year);
      out += ',';
      out += format_double(b.revenues);
      out += ',';
      out += format_double(b.roe);
      out += ',';
      out += format_double(b.roa);
      out += ',';
      out += format_double(b.turnover);
      out += ',';
      out += format_double(b.total_assets);
      out += ',';
      out += format_double(b.fin_charges_over_op_margin);
      out += ',';
      out += format_double(b.ebitda);
      out += '\n';
    }
  }
  write_text_file(path, out);
}

std::vector<FirmPanel> read_panels(const std::string& loans_path,
                                   const std::string& balance_path) {
  const std::vector<std::string> lines = read_lines(loans_path);
  check_header(loans_path, lines[0], kLoansHeader);

  std::vector<FirmPanel> panels;
  std::map<std::string, std::size_t> index;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const std::string ctx = row_context(loans_path, li + 1);
    const auto f = split_csv_line(lines[li]);
    if (f.size() != 17) {
      throw DataError(ctx + ": expected 17 fields, got " +
                      std::to_string(f.size()));
    }
    FirmQuarterRecord rec;
    rec.firm_id = f[0];
    rec.quarter.year = static_cast<int>(parse_int(f[1], ctx + " year"));
    rec.quarter.quarter = static_cast<int>(parse_int(f[2], ctx + " quarter"));
    rec.granted = parse_double(f[3], ctx + " L1");
    rec.used = parse_double(f[4], ctx + " L2");
    rec.bank_class = static_cast<int>(parse_int(f[5], ctx + " L3"));
    rec.avg_used = parse_double(f[6], ctx + " L4");
    rec.overdraft = parse_double(f[7], ctx + " L5");
    rec.margins = parse_double(f[8], ctx + " L6");
    rec.past_due_amt = parse_double(f[9], ctx + " L7");
    rec.problematic_amt = parse_double(f[10], ctx + " L8");
    rec.nonperforming_amt = parse_double(f[11], ctx + " L9");
    rec.collateralized_amt = parse_double(f[12], ctx + " L10");
    rec.protection_value = parse_double(f[13], ctx + " L11");
    rec.forborne_amt = parse_double(f[14], ctx + " L12");
    Segment seg;
    seg.sector_code = static_cast<int>(parse_int(f[15], ctx + " sector"));
    seg.geo_code = static_cast<int>(parse_int(f[16], ctx + " geo"));
    if (rec.quarter.quarter < 1 || rec.quarter.quarter > 4) {
      throw DataError(ctx + ": quarter out of range 1..4");
    }

    auto [it, inserted] = index.try_emplace(rec.firm_id, panels.size());
    if (inserted) {
      FirmPanel p;
      p.firm_id = rec.firm_id;
      p.segment = seg;
      panels.push_back(std::move(p));
    }
    FirmPanel& panel = panels[it->second];
    if (panel.segment != seg) {
      throw DataError(ctx + ": firm " + rec.firm_id +
                      " changes sector/geo mid-file");
    }
    for (const FirmQuarterRecord& q : panel.quarters) {
      if (q.quarter == rec.quarter) {
        throw DataError(ctx + ": duplicate quarter for firm " + rec.firm_id);
      }
    }
    panel.quarters.push_back(std::move(rec));
  }
  for (FirmPanel& p : panels) {
    std::sort(p.quarters.begin(), p.quarters.end(),
              [](const FirmQuarterRecord& a, const FirmQuarterRecord& b) {
                return a.quarter < b.quarter;
              });
  }

  if (!balance_path.empty()) {
    const std::vector<std::string> blines = read_lines(balance_path);
    check_header(balance_path, blines[0], kBalanceHeader);
    for (std::size_t li = 1; li < blines.size(); ++li) {
      if (blines[li].empty()) continue;
      const std::string ctx = row_context(balance_path, li + 1);
      const auto f = split_csv_line(blines[li]);
      if (f.size() != 9) {
        throw DataError(ctx + ": expected 9 fields, got " +
                        std::to_string(f.size()));
      }
      const auto it = index.find(f[0]);
      if (it == index.end()) {
        throw DataError(ctx + ": balance sheet for unknown firm " + f[0]);
      }
      BalanceSheetRecord b;
      b.firm_id = f[0];
      b.year = static_cast<int>(parse_int(f[1], ctx + " year"));
      b.revenues = parse_balance_field(f[2], ctx + " B1");
      b.roe = parse_balance_field(f[3], ctx + " B2");
      b.roa = parse_balance_field(f[4], ctx + " B3");
      b.turnover = parse_balance_field(f[5], ctx + " B5");
      b.total_assets = parse_balance_field(f[6], ctx + " B6");
      b.fin_charges_over_op_margin = parse_balance_field(f[7], ctx + " B7");
      b.ebitda = parse_balance_field(f[8], ctx + " B8");
      panels[it->second].balance_sheets.push_back(std::move(b));
    }
    for (FirmPanel& p : panels) {
      std::sort(p.balance_sheets.begin(), p.balance_sheets.end(),
                [](const BalanceSheetRecord& a, const BalanceSheetRecord& b) {
                  return a.year < b.year;
                });
    }
  }
  return panels;
}

std::string dataset_manifest_path(const std::string& csv_path) {
  std::string base = csv_path;
  if (base.size() > 4 && base.substr(base.size() - 4) == ".csv") {
    base.resize(base.size() - 4);
  }
  return base + ".manifest.json";
}

void write_dataset_csv(const LabeledDataset& ds, const std::string& path) {
  std::string out;
  out.reserve(ds.n_rows() * (ds.width() + 4) * 12);
  out += "firm_id,sector,geo,label";
  for (const std::string& name : ds.feature_names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    out += ds.firm_ids[i];
    out += ',';
    out += std::to_string(ds.segments[i].sector_code);
    out += ',';
    out += std::to_string(ds.segments[i].geo_code);
    out += ',';
    out += std::to_string(ds.labels[i]);
    const std::span<const double> row = ds.row(i);
    for (const double v : row) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

LabeledDataset read_dataset_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  const auto header = split_csv_line(lines[0]);
  const char* fixed[] = {"firm_id", "sector", "geo", "label"};
  for (std::size_t i = 0; i < 4; ++i) {
    if (i >= header.size() || header[i] != fixed[i]) {
      throw DataError(path + ": missing or misplaced column '" +
                      std::string(fixed[i]) + "'");
    }
  }
  LabeledDataset ds;
  ds.feature_names.assign(header.begin() + 4, header.end());
  const std::size_t width = ds.feature_names.size();
  std::vector<double> row(width);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const std::string ctx = row_context(path, li + 1);
    const auto f = split_csv_line(lines[li]);
    if (f.size() != 4 + width) {
      throw DataError(ctx + ": expected " + std::to_string(4 + width) +
                      " fields, got " + std::to_string(f.size()));
    }
    Segment seg;
    seg.sector_code = static_cast<int>(parse_int(f[1], ctx + " sector"));
    seg.geo_code = static_cast<int>(parse_int(f[2], ctx + " geo"));
    const long long label = parse_int(f[3], ctx + " label");
    if (label != 0 && label != 1) {
      throw DataError(ctx + ": label must be 0 or 1");
    }
    for (std::size_t j = 0; j < width; ++j) {
      row[j] = parse_double(f[4 + j], ctx + " " + ds.feature_names[j]);
    }
    ds.append_row(row, static_cast<int>(label), f[0], seg);
  }
  ds.validate();
  return ds;
}

void write_manifest(const DatasetManifest& m, const std::string& path) {
  json j;
  j["version"] = m.version;
  j["feature_names"] = m.feature_names;
  j["reference_year"] = m.reference_year;
  j["use_balance"] = m.use_balance;
  j["threshold"] = format_double(m.threshold);
  j["seed"] = m.seed;
  j["skips"] = {{"missing_window", m.skips.missing_window},
                {"missing_horizon", m.skips.missing_horizon},
                {"already_default", m.skips.already_default}};
  write_text_file(path, j.dump(2) + "\n");
}

DatasetManifest read_manifest(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  DatasetManifest m;
  try {
    m.version = j.at("version").get<int>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.reference_year = j.at("reference_year").get<int>();
    m.use_balance = j.at("use_balance").get<bool>();
    m.threshold = parse_double(j.at("threshold").get<std::string>(),
                               path + " threshold");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.skips.missing_window = j.at("skips").at("missing_window").get<std::size_t>();
    m.skips.missing_horizon =
        j.at("skips").at("missing_horizon").get<std::size_t>();
    m.skips.already_default =
        j.at("skips").at("already_default").get<std::size_t>();
  } catch (const json::exception& e) {
    throw DataError(path + ": manifest field error: " + e.what());
  }
  return m;
}

}  // namespace creditrisk
