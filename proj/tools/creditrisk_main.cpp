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
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "creditrisk/ensemble.hpp"
#include "creditrisk/errors.hpp"
#include "creditrisk/experiment.hpp"
#include "creditrisk/features.hpp"
#include "creditrisk/io.hpp"
#include "creditrisk/learners.hpp"
#include "creditrisk/model_io.hpp"
#include "creditrisk/pd.hpp"
#include "creditrisk/rng.hpp"
#include "creditrisk/synth.hpp"
#include "creditrisk/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace creditrisk;

namespace {

// Exit codes: 0 success, 2 usage/validation, 3 data error, 4 internal.
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

struct GlobalArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all available cores
  std::string out = ".";
};

/// Fills option values from the JSON config file for flags absent from the
/// command line; command-line flags always win. A key is looked up first in
/// the active command's section, then at the top level.
class ConfigValues {
 public:
  ConfigValues(std::string path, std::string command)
      : command_(std::move(command)) {
    if (path.empty()) return;
    json parsed = json::parse(read_text_file(path), nullptr, false);
    if (parsed.is_discarded())
      throw ConfigError(path + ": config file is not valid JSON");
    if (!parsed.is_object())
      throw ConfigError(path + ": config root must be a JSON object");
    root_ = std::move(parsed);
  }

  template <typename T>
  void merge(const CLI::App& owner, const std::string& flag,
             const std::string& key, T& value) const {
    if (owner.count(flag) > 0) return;
    const json* found = lookup(key);
    if (found == nullptr) return;
    try {
      found->get_to(value);
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }

 private:
  const json* lookup(const std::string& key) const {
    if (!root_.is_object()) return nullptr;
    if (auto sec = root_.find(command_);
        sec != root_.end() && sec->is_object()) {
      if (auto it = sec->find(key); it != sec->end()) return &*it;
    }
    if (auto it = root_.find(key); it != root_.end()) return &*it;
    return nullptr;
  }

  json root_;
  std::string command_;
};

void log_resolved(const json& resolved) {
  std::cout << "resolved-config " << resolved.dump() << "\n";
}

std::string joined(const fs::path& dir, const std::string& name) {
  return (dir / name).string();
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  fs::create_directories(dir);
  return dir;
}

/// Removes every file this run already wrote when a later write fails.
class WrittenFiles {
 public:
  void note(const std::string& path) { paths_.push_back(path); }

  void write(const std::string& path, const std::string& content) {
    write_text_file(path, content);
    paths_.push_back(path);
  }

  void discard() {
    for (const auto& p : paths_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    paths_.clear();
  }

 private:
  std::vector<std::string> paths_;
};

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::size_t firms = 1000;
  double balance_fraction = 0.375;
  int start_year = 2012;
  int start_quarter = 4;
  int quarters = 9;
  double target_rate = 0.043;
  double balance_signal = 1.0;
  int sectors = 12;
  int geos = 10;
  double threshold = 0.05;
};

int cmd_generate(const GlobalArgs& g, const GenerateArgs& a) {
  if (a.firms == 0) throw ConfigError("--firms must be positive");

  GeneratorConfig cfg;
  cfg.n_firms = a.firms;
  cfg.balance_sheet_fraction = a.balance_fraction;
  cfg.start = {a.start_year, a.start_quarter};
  cfg.n_quarters = a.quarters;
  cfg.target_default_rate = a.target_rate;
  cfg.balance_signal = a.balance_signal;
  cfg.n_sectors = a.sectors;
  cfg.n_geos = a.geos;
  cfg.seed = g.seed;

  const fs::path dir = prepare_out_dir(g.out);
  log_resolved({{"command", "generate"},
                {"firms", a.firms},
                {"balance_fraction", a.balance_fraction},
                {"start_year", a.start_year},
                {"start_quarter", a.start_quarter},
                {"quarters", a.quarters},
                {"target_rate", a.target_rate},
                {"balance_signal", a.balance_signal},
                {"sectors", a.sectors},
                {"geos", a.geos},
                {"threshold", a.threshold},
                {"seed", g.seed},
                {"out", dir.string()}});

  const std::vector<FirmPanel> panels = generate(cfg);
  const CalibrationReport report = calibration_report(
      panels, generator_reference_year(cfg), a.threshold);

  // Each writer stages through a temp file; on a later failure the files
  // already written this run are removed so no partial set remains.
  WrittenFiles files;
  try {
    write_loans_csv(panels, joined(dir, "loans.csv"));
    files.note(joined(dir, "loans.csv"));
    write_balance_csv(panels, joined(dir, "balance.csv"));
    files.note(joined(dir, "balance.csv"));
    files.write(joined(dir, "calibration.json"),
                render_calibration_json(report));
  } catch (...) {
    files.discard();
    throw;
  }

  std::printf("wrote %s (%zu firms), realized default rate %.4f\n",
              joined(dir, "loans.csv").c_str(), panels.size(),
              report.default_rate);
  return 0;
}

// --- featurize --------------------------------------------------------------

struct FeaturizeArgs {
  std::string loans;
  std::string balance;
  int reference_year = 2013;
  bool use_balance = false;
  double threshold = 0.05;
};

int cmd_featurize(const GlobalArgs& g, const FeaturizeArgs& a) {
  if (a.loans.empty()) throw ConfigError("--loans is required");

  const fs::path dir = prepare_out_dir(g.out);
  log_resolved({{"command", "featurize"},
                {"loans", a.loans},
                {"balance", a.balance},
                {"reference_year", a.reference_year},
                {"use_balance", a.use_balance},
                {"threshold", a.threshold},
                {"seed", g.seed},
                {"out", dir.string()}});

  const std::vector<FirmPanel> panels = read_panels(a.loans, a.balance);
  FeatureBuildResult built =
      build_features(panels, a.reference_year, a.use_balance, a.threshold);

  const std::string csv_path = joined(dir, "features.csv");
  write_dataset_csv(built.dataset, csv_path);

  DatasetManifest manifest;
  manifest.feature_names = built.dataset.feature_names;
  manifest.reference_year = a.reference_year;
  manifest.use_balance = a.use_balance;
  manifest.threshold = a.threshold;
  manifest.seed = g.seed;
  manifest.skips = built.skips;
  write_manifest(manifest, dataset_manifest_path(csv_path));

  std::printf("wrote %s: %zu rows (%zu default), skipped %zu firms\n",
              csv_path.c_str(), built.dataset.n_rows(),
              built.dataset.count_label(1), built.skips.total());
  return 0;
}

// --- train ------------------------------------------------------------------

struct TrainArgs {
  std::string features;
  std::string method = "COMB";
  bool tuned = false;
  int vote_threshold = 3;
  double tune_fraction = 0.3;
};

int cmd_train(const GlobalArgs& g, const TrainArgs& a) {
  if (a.features.empty()) throw ConfigError("--features is required");
  if (!is_known_method(a.method))
    throw ConfigError("unknown method '" + a.method + "'");

  const fs::path dir = prepare_out_dir(g.out);
  log_resolved({{"command", "train"},
                {"features", a.features},
                {"method", a.method},
                {"tuned", a.tuned},
                {"vote_threshold", a.vote_threshold},
                {"tune_fraction", a.tune_fraction},
                {"seed", g.seed},
                {"out", dir.string()}});

  const LabeledDataset ds = read_dataset_csv(a.features);
  const std::string model_path = joined(dir, "model.json");

  if (a.method == "COMB") {
    const CombModel model =
        comb_fit(ds, {}, a.vote_threshold, derive_seed(g.seed, "comb"),
                 a.tune_fraction);
    save_comb(model, model_path);
    std::printf("wrote %s (vote committee, %zu members)\n", model_path.c_str(),
                model.members.size());
    return 0;
  }

  const Family family = *family_from_name(a.method);
  HyperParams hp = HyperParams::defaults_for(family);
  if (a.tuned)
    hp = tune(family, ds, default_grid(family), a.tune_fraction,
              derive_seed(g.seed, "tune"));
  const TrainedModel model =
      fit_model(family, ds, hp, derive_seed(g.seed, a.method));
  save_model(model, model_path);
  std::printf("wrote %s (%s%s)\n", model_path.c_str(), a.method.c_str(),
              a.tuned ? ", tuned" : "");
  return 0;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  std::string loans;
  std::string balance;
  int reference_year = 2013;
  double threshold = 0.05;
  double test_fraction = 0.3;
  double tune_fraction = 0.3;
  int vote_threshold = 3;
  std::vector<std::string> modes = {"all"};
  std::vector<std::string> methods;
};

struct EvalMode {
  const char* name;
  bool use_balance;
  bool balance_training;
};

constexpr EvalMode kEvalModes[] = {
    {"loan-imbalanced", false, false},
    {"loan-balanced", false, true},
    {"balance-imbalanced", true, false},
    {"balance-balanced", true, true},
};

int cmd_evaluate(const GlobalArgs& g, const EvaluateArgs& a) {
  if (a.loans.empty()) throw ConfigError("--loans is required");

  std::vector<EvalMode> selected;
  for (const std::string& m : a.modes) {
    if (m == "all") {
      selected.assign(std::begin(kEvalModes), std::end(kEvalModes));
      continue;
    }
    bool found = false;
    for (const EvalMode& mode : kEvalModes) {
      if (m == mode.name) {
        selected.push_back(mode);
        found = true;
      }
    }
    if (!found)
      throw ConfigError(
          "unknown mode '" + m +
          "' (expected all, loan-imbalanced, loan-balanced, "
          "balance-imbalanced, or balance-balanced)");
  }

  const fs::path dir = prepare_out_dir(g.out);
  json mode_names = json::array();
  for (const auto& m : selected) mode_names.push_back(m.name);
  log_resolved({{"command", "evaluate"},
                {"loans", a.loans},
                {"balance", a.balance},
                {"reference_year", a.reference_year},
                {"threshold", a.threshold},
                {"test_fraction", a.test_fraction},
                {"tune_fraction", a.tune_fraction},
                {"vote_threshold", a.vote_threshold},
                {"modes", mode_names},
                {"methods", a.methods},
                {"seed", g.seed},
                {"out", dir.string()}});

  const std::vector<FirmPanel> panels = read_panels(a.loans, a.balance);
  for (const EvalMode& mode : selected) {
    ExperimentConfig cfg;
    cfg.reference_year = a.reference_year;
    cfg.use_balance = mode.use_balance;
    cfg.balance_training = mode.balance_training;
    cfg.threshold = a.threshold;
    cfg.test_fraction = a.test_fraction;
    cfg.tune_fraction = a.tune_fraction;
    cfg.vote_threshold = a.vote_threshold;
    cfg.seed = g.seed;
    cfg.methods = a.methods;

    const ExperimentResult result = run_experiment(panels, cfg);
    const std::string table = render_metrics_table(result);
    std::printf("== %s ==\n%s\n", mode.name, table.c_str());

    std::string base = "results_" + std::string(mode.name);
    for (char& c : base) {
      if (c == '-') c = '_';
    }
    write_text_file(joined(dir, base + ".txt"), table);
    write_text_file(joined(dir, base + ".csv"), render_metrics_csv(result));
  }
  return 0;
}

// --- pd-report --------------------------------------------------------------

struct PdArgs {
  std::string loans;
  std::string balance;
  std::string model;  // existing committee manifest
  bool train = false;
  bool oracle = false;
  bool signed_errors = false;
  int reference_year = 2013;
  double threshold = 0.05;
  double test_fraction = 0.3;
  double tune_fraction = 0.3;
  int vote_threshold = 3;
  bool use_balance = false;
};

int cmd_pd_report(const GlobalArgs& g, const PdArgs& a) {
  if (a.loans.empty()) throw ConfigError("--loans is required");
  if (a.model.empty() && !a.train && !a.oracle)
    throw ConfigError(
        "no model: pass --model <committee.json>, --train, or --oracle");

  const fs::path dir = prepare_out_dir(g.out);
  log_resolved({{"command", "pd-report"},
                {"loans", a.loans},
                {"balance", a.balance},
                {"model", a.model},
                {"train", a.train},
                {"oracle", a.oracle},
                {"signed_errors", a.signed_errors},
                {"reference_year", a.reference_year},
                {"threshold", a.threshold},
                {"test_fraction", a.test_fraction},
                {"tune_fraction", a.tune_fraction},
                {"vote_threshold", a.vote_threshold},
                {"use_balance", a.use_balance},
                {"seed", g.seed},
                {"out", dir.string()}});

  const std::vector<FirmPanel> panels = read_panels(a.loans, a.balance);
  FeatureBuildResult built =
      build_features(panels, a.reference_year, a.use_balance, a.threshold);
  if (built.dataset.n_rows() == 0)
    throw DataError("no firm has a defined target at reference year " +
                    std::to_string(a.reference_year));
  auto [history, evaluation] = train_test_split(
      built.dataset, a.test_fraction, derive_seed(g.seed, "split"));

  std::vector<int> predictions;
  if (a.oracle) {
    predictions = evaluation.labels;
  } else if (a.train) {
    const CombModel model =
        comb_fit(history, {}, a.vote_threshold, derive_seed(g.seed, "comb"),
                 a.tune_fraction);
    save_comb(model, joined(dir, "pd_model.json"));
    predictions = comb_predict(model, MatrixView::of(evaluation));
  } else {
    const CombModel model = load_comb(a.model);
    predictions = comb_predict(model, MatrixView::of(evaluation));
  }

  const SegmentPdReport coarse =
      segment_pd_report(history, evaluation, predictions, Granularity::kCoarse,
                        a.signed_errors);
  const SegmentPdReport fine =
      segment_pd_report(history, evaluation, predictions, Granularity::kFine,
                        a.signed_errors);
  const SegmentPdReport reports[] = {coarse, fine};

  write_text_file(joined(dir, "pd_segments.csv"), render_pd_csv(reports));
  const std::string summary = render_pd_summary_json(reports);
  write_text_file(joined(dir, "pd_summary.json"), summary);
  std::printf("%s", summary.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjusted-default prediction pipeline over credit-register panels"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs g;
  app.add_option("--config", g.config_path, "JSON config file; flags override");
  app.add_option("--seed", g.seed, "Top-level seed; all randomness derives from it");
  app.add_option("--threads", g.threads, "Worker-thread cap (0 = all cores)");
  app.add_option("--out", g.out, "Output directory");

  GenerateArgs gen;
  CLI::App* c_gen = app.add_subcommand("generate", "Generate a synthetic panel");
  c_gen->add_option("--firms", gen.firms, "Number of firms");
  c_gen->add_option("--balance-fraction", gen.balance_fraction,
                    "Share of firms with balance sheets");
  c_gen->add_option("--start-year", gen.start_year, "First panel year");
  c_gen->add_option("--start-quarter", gen.start_quarter, "First panel quarter");
  c_gen->add_option("--quarters", gen.quarters, "Panel length in quarters");
  c_gen->add_option("--target-rate", gen.target_rate,
                    "Calibrated default rate among eligible firms");
  c_gen->add_option("--balance-signal", gen.balance_signal,
                    "Fundamentals signal strength in balance columns");
  c_gen->add_option("--sectors", gen.sectors, "Number of sector codes");
  c_gen->add_option("--geos", gen.geos, "Number of geography codes");
  c_gen->add_option("--threshold", gen.threshold,
                    "Adjusted-default exposure threshold for the report");

  FeaturizeArgs fea;
  CLI::App* c_fea = app.add_subcommand("featurize", "Build the labeled dataset");
  c_fea->add_option("--loans", fea.loans, "Firm-quarter CSV");
  c_fea->add_option("--balance", fea.balance, "Balance-sheet CSV (optional)");
  c_fea->add_option("--reference-year", fea.reference_year, "Reference year");
  c_fea->add_flag("--use-balance", fea.use_balance,
                  "Include balance-sheet feature columns");
  c_fea->add_option("--threshold", fea.threshold,
                    "Adjusted-default exposure threshold");

  TrainArgs tra;
  CLI::App* c_tra = app.add_subcommand("train", "Train a model on a dataset");
  c_tra->add_option("--features", tra.features, "Dataset CSV from featurize");
  c_tra->add_option("--method", tra.method,
                    "NAIVE, MNB, LOG, GB, RF, DT, BAG, ADA, or COMB");
  c_tra->add_flag("--tuned", tra.tuned,
                  "Grid-tune hyperparameters before the final fit");
  c_tra->add_option("--vote-threshold", tra.vote_threshold,
                    "Committee votes needed for a default call");
  c_tra->add_option("--tune-fraction", tra.tune_fraction,
                    "Validation share of the tuning split");

  EvaluateArgs eva;
  CLI::App* c_eva = app.add_subcommand("evaluate", "Run the method comparison");
  c_eva->add_option("--loans", eva.loans, "Firm-quarter CSV");
  c_eva->add_option("--balance", eva.balance, "Balance-sheet CSV (optional)");
  c_eva->add_option("--reference-year", eva.reference_year, "Reference year");
  c_eva->add_option("--threshold", eva.threshold,
                    "Adjusted-default exposure threshold");
  c_eva->add_option("--test-fraction", eva.test_fraction, "Held-out share");
  c_eva->add_option("--tune-fraction", eva.tune_fraction,
                    "Committee tuning holdout share");
  c_eva->add_option("--vote-threshold", eva.vote_threshold,
                    "Committee votes needed for a default call");
  c_eva->add_option("--mode", eva.modes,
                    "all, loan-imbalanced, loan-balanced, balance-imbalanced, "
                    "balance-balanced")
      ->delimiter(',');
  c_eva->add_option("--methods", eva.methods, "Subset of methods to run")
      ->delimiter(',');

  PdArgs pd;
  CLI::App* c_pd = app.add_subcommand(
      "pd-report", "Segment-level probability-of-default comparison");
  c_pd->add_option("--loans", pd.loans, "Firm-quarter CSV");
  c_pd->add_option("--balance", pd.balance, "Balance-sheet CSV (optional)");
  c_pd->add_option("--model", pd.model, "Existing committee manifest");
  c_pd->add_flag("--train", pd.train, "Train a committee on the history split");
  c_pd->add_flag("--oracle", pd.oracle,
                 "Debug: use the true labels as predictions");
  c_pd->add_flag("--signed-errors", pd.signed_errors,
                 "Report signed instead of absolute errors");
  c_pd->add_option("--reference-year", pd.reference_year, "Reference year");
  c_pd->add_option("--threshold", pd.threshold,
                   "Adjusted-default exposure threshold");
  c_pd->add_option("--test-fraction", pd.test_fraction, "Evaluated share");
  c_pd->add_option("--tune-fraction", pd.tune_fraction,
                   "Committee tuning holdout share");
  c_pd->add_option("--vote-threshold", pd.vote_threshold,
                   "Committee votes needed for a default call");
  c_pd->add_flag("--use-balance", pd.use_balance,
                 "Include balance-sheet feature columns");

  try {
    app.parse(argc, argv);

    CLI::App* active = app.get_subcommands().front();
    const std::string command = active->get_name();
    const ConfigValues cfgfile(g.config_path, command);
    cfgfile.merge(app, "--seed", "seed", g.seed);
    cfgfile.merge(app, "--threads", "threads", g.threads);
    cfgfile.merge(app, "--out", "out", g.out);

    if (g.threads < 0) throw ConfigError("--threads must be >= 0");
    set_max_threads(static_cast<std::size_t>(g.threads));

    if (command == "generate") {
      cfgfile.merge(*c_gen, "--firms", "firms", gen.firms);
      cfgfile.merge(*c_gen, "--balance-fraction", "balance_fraction",
                    gen.balance_fraction);
      cfgfile.merge(*c_gen, "--start-year", "start_year", gen.start_year);
      cfgfile.merge(*c_gen, "--start-quarter", "start_quarter",
                    gen.start_quarter);
      cfgfile.merge(*c_gen, "--quarters", "quarters", gen.quarters);
      cfgfile.merge(*c_gen, "--target-rate", "target_rate", gen.target_rate);
      cfgfile.merge(*c_gen, "--balance-signal", "balance_signal",
                    gen.balance_signal);
      cfgfile.merge(*c_gen, "--sectors", "sectors", gen.sectors);
      cfgfile.merge(*c_gen, "--geos", "geos", gen.geos);
      cfgfile.merge(*c_gen, "--threshold", "threshold", gen.threshold);
      return cmd_generate(g, gen);
    }
    if (command == "featurize") {
      cfgfile.merge(*c_fea, "--loans", "loans", fea.loans);
      cfgfile.merge(*c_fea, "--balance", "balance", fea.balance);
      cfgfile.merge(*c_fea, "--reference-year", "reference_year",
                    fea.reference_year);
      cfgfile.merge(*c_fea, "--use-balance", "use_balance", fea.use_balance);
      cfgfile.merge(*c_fea, "--threshold", "threshold", fea.threshold);
      return cmd_featurize(g, fea);
    }
    if (command == "train") {
      cfgfile.merge(*c_tra, "--features", "features", tra.features);
      cfgfile.merge(*c_tra, "--method", "method", tra.method);
      cfgfile.merge(*c_tra, "--tuned", "tuned", tra.tuned);
      cfgfile.merge(*c_tra, "--vote-threshold", "vote_threshold",
                    tra.vote_threshold);
      cfgfile.merge(*c_tra, "--tune-fraction", "tune_fraction",
                    tra.tune_fraction);
      return cmd_train(g, tra);
    }
    if (command == "evaluate") {
      cfgfile.merge(*c_eva, "--loans", "loans", eva.loans);
      cfgfile.merge(*c_eva, "--balance", "balance", eva.balance);
      cfgfile.merge(*c_eva, "--reference-year", "reference_year",
                    eva.reference_year);
      cfgfile.merge(*c_eva, "--threshold", "threshold", eva.threshold);
      cfgfile.merge(*c_eva, "--test-fraction", "test_fraction",
                    eva.test_fraction);
      cfgfile.merge(*c_eva, "--tune-fraction", "tune_fraction",
                    eva.tune_fraction);
      cfgfile.merge(*c_eva, "--vote-threshold", "vote_threshold",
                    eva.vote_threshold);
      cfgfile.merge(*c_eva, "--mode", "mode", eva.modes);
      cfgfile.merge(*c_eva, "--methods", "methods", eva.methods);
      return cmd_evaluate(g, eva);
    }
    cfgfile.merge(*c_pd, "--loans", "loans", pd.loans);
    cfgfile.merge(*c_pd, "--balance", "balance", pd.balance);
    cfgfile.merge(*c_pd, "--model", "model", pd.model);
    cfgfile.merge(*c_pd, "--train", "train", pd.train);
    cfgfile.merge(*c_pd, "--oracle", "oracle", pd.oracle);
    cfgfile.merge(*c_pd, "--signed-errors", "signed_errors", pd.signed_errors);
    cfgfile.merge(*c_pd, "--reference-year", "reference_year",
                  pd.reference_year);
    cfgfile.merge(*c_pd, "--threshold", "threshold", pd.threshold);
    cfgfile.merge(*c_pd, "--test-fraction", "test_fraction", pd.test_fraction);
    cfgfile.merge(*c_pd, "--tune-fraction", "tune_fraction", pd.tune_fraction);
    cfgfile.merge(*c_pd, "--vote-threshold", "vote_threshold",
                  pd.vote_threshold);
    cfgfile.merge(*c_pd, "--use-balance", "use_balance", pd.use_balance);
    return cmd_pd_report(g, pd);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message and usage hint
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const TrainError& e) {
    std::cerr << "training error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
