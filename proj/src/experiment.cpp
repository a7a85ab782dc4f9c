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
#include "creditrisk/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

#include "creditrisk/ensemble.hpp"
#include "creditrisk/errors.hpp"
#include "creditrisk/learners.hpp"
#include "creditrisk/rng.hpp"
#include "creditrisk/tree.hpp"
#include "creditrisk/util.hpp"

namespace creditrisk {
namespace {

bool is_tree_method(std::string_view name) {
  return name == "GB" || name == "RF" || name == "DT" || name == "BAG" ||
         name == "ADA" || name == "COMB";
}

std::vector<std::string> resolve_methods(const ExperimentConfig& cfg) {
  for (const auto& m : cfg.methods) {
    if (!is_known_method(m)) throw ConfigError("unknown method '" + m + "'");
  }
  std::vector<std::string> out;
  for (std::string_view name : kMethodOrder) {
    const bool wanted =
        cfg.methods.empty() ||
        std::find(cfg.methods.begin(), cfg.methods.end(), name) !=
            cfg.methods.end();
    if (wanted) out.emplace_back(name);
  }
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0))
    throw ConfigError("test_fraction must be in (0, 1)");
  if (!(cfg.tune_fraction > 0.0 && cfg.tune_fraction < 1.0))
    throw ConfigError("tune_fraction must be in (0, 1)");
  if (cfg.vote_threshold < 1 || cfg.vote_threshold > 10)
    throw ConfigError("vote_threshold must be in 1..10");
}

std::string cell_text(double value, bool degenerate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f%s", value, degenerate ? "*" : " ");
  return buf;
}

bool flagged(const MetricsReport& r, const char* metric) {
  return std::find(r.degenerate.begin(), r.degenerate.end(), metric) !=
         r.degenerate.end();
}

}  // namespace

bool is_known_method(std::string_view name) {
  return std::find(kMethodOrder.begin(), kMethodOrder.end(), name) !=
         kMethodOrder.end();
}

ExperimentResult run_experiment(const std::vector<FirmPanel>& panels,
                                const ExperimentConfig& cfg) {
  validate(cfg);
  const std::vector<std::string> methods = resolve_methods(cfg);

  FeatureBuildResult built =
      build_features(panels, cfg.reference_year, cfg.use_balance, cfg.threshold);
  if (built.dataset.n_rows() == 0)
    throw DataError("no firm has a defined target at reference year " +
                    std::to_string(cfg.reference_year));

  auto [train, test] = train_test_split(built.dataset, cfg.test_fraction,
                                        derive_seed(cfg.seed, "split"));
  if (cfg.balance_training)
    train = balanced_subsample(train, derive_seed(cfg.seed, "balance"));

  ExperimentResult result;
  result.skips = built.skips;
  result.n_train = train.n_rows();
  result.n_test = test.n_rows();
  result.train_positives = train.count_label(1);
  result.test_positives = test.count_label(1);

  const bool any_tree = std::any_of(methods.begin(), methods.end(),
                                    [](const std::string& m) {
                                      return is_tree_method(m);
                                    });
  std::optional<Presorted> pre;
  if (any_tree) pre.emplace(Presorted::build(MatrixView::of(train)));
  const Presorted* pre_ptr = pre ? &*pre : nullptr;

  // The committee is fitted first: its default members are exactly the five
  // tree families under documented defaults on this training split, so the
  // individual rows can reuse them instead of training twice.
  const bool comb_wanted =
      std::find(methods.begin(), methods.end(), "COMB") != methods.end();
  std::optional<CombModel> comb;
  std::string comb_error;
  if (comb_wanted) {
    try {
      comb = comb_fit(train, {}, cfg.vote_threshold,
                      derive_seed(cfg.seed, "comb"), cfg.tune_fraction,
                      pre_ptr);
    } catch (const std::exception& e) {
      comb_error = e.what();
    }
  }

  const MatrixView test_view = MatrixView::of(test);
  for (const std::string& name : methods) {
    MethodOutcome row;
    row.method = name;
    try {
      std::vector<int> preds;
      if (name == "COMB") {
        if (!comb) throw TrainError(comb_error);
        preds = comb_predict(*comb, test_view);
      } else {
        const Family family = *family_from_name(name);
        const TrainedModel* member = nullptr;
        if (comb && is_tree_method(name)) {
          for (std::size_t fi = 0; fi < kCombFamilies.size(); ++fi) {
            if (kCombFamilies[fi] == family)
              member = &comb->members[2 * fi];
          }
        }
        if (member != nullptr) {
          preds = predict(*member, test_view);
        } else {
          const TrainedModel model =
              fit_model(family, train, HyperParams::defaults_for(family),
                        derive_seed(cfg.seed, family_name(family)), pre_ptr);
          preds = predict(model, test_view);
        }
      }
      row.report = metrics(preds, test.labels);
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string render_metrics_table(const ExperimentResult& result) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-8s%9s%9s%9s%9s%9s%9s\n", "method",
                "Pr", "Re", "F1", "Type-I", "Type-II", "BACC");
  out += line;
  bool any_flag = false;
  for (const auto& row : result.rows) {
    if (!row.ok) {
      std::snprintf(line, sizeof line, "%-8sfailed: %s\n", row.method.c_str(),
                    row.error.c_str());
      out += line;
      continue;
    }
    const MetricsReport& r = row.report;
    const struct {
      double value;
      const char* flag;
    } cells[6] = {
        {r.precision, "precision"}, {r.recall, "recall"},
        {r.f1, "f1"},               {r.type_i, "type_i"},
        {r.type_ii, "type_ii"},     {r.bacc, "bacc"},
    };
    std::string text = row.method;
    text.resize(8, ' ');
    for (const auto& cell : cells) {
      const bool f = flagged(r, cell.flag);
      any_flag = any_flag || f;
      std::string c = cell_text(cell.value, f);
      text += std::string(9 - c.size(), ' ') + c;
    }
    out += text + "\n";
  }
  std::snprintf(line, sizeof line,
                "\ntrain rows: %zu (%zu default)  test rows: %zu (%zu default)\n",
                result.n_train, result.train_positives, result.n_test,
                result.test_positives);
  out += line;
  std::snprintf(line, sizeof line,
                "skipped firms: %zu window gap, %zu horizon gap, %zu already "
                "in default\n",
                result.skips.missing_window, result.skips.missing_horizon,
                result.skips.already_default);
  out += line;
  out +=
      "measures: Type-I = 1 - Re (missed defaults); Type-II = false-alarm "
      "rate;\nBACC is balanced accuracy, (true-positive rate + true-negative "
      "rate) / 2.\n";
  if (any_flag)
    out += "cells marked * had a zero denominator and are reported as 0.\n";
  return out;
}

std::string render_metrics_csv(const ExperimentResult& result) {
  std::string out = "method,pr,re,f1,type1,type2,bacc\n";
  for (const auto& row : result.rows) {
    if (!row.ok) continue;
    const MetricsReport& r = row.report;
    out += row.method + "," + format_double(r.precision) + "," +
           format_double(r.recall) + "," + format_double(r.f1) + "," +
           format_double(r.type_i) + "," + format_double(r.type_ii) + "," +
           format_double(r.bacc) + "\n";
  }
  return out;
}

}  // namespace creditrisk
