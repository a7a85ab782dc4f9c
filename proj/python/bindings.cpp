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
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "creditrisk/ensemble.hpp"
#include "creditrisk/errors.hpp"
#include "creditrisk/experiment.hpp"
#include "creditrisk/features.hpp"
#include "creditrisk/io.hpp"
#include "creditrisk/learners.hpp"
#include "creditrisk/metrics.hpp"
#include "creditrisk/model_io.hpp"
#include "creditrisk/pd.hpp"
#include "creditrisk/rng.hpp"
#include "creditrisk/synth.hpp"
#include "creditrisk/tree.hpp"
#include "creditrisk/util.hpp"

namespace py = pybind11;
using namespace creditrisk;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray = py::array_t<int, py::array::c_style | py::array::forcecast>;

/// Borrowing view over a 2-D numpy array; valid only within one call.
MatrixView view_of(const DoubleArray& a) {
  if (a.ndim() != 2) throw DataError("expected a 2-D float array");
  return MatrixView{a.data(), static_cast<std::size_t>(a.shape(0)),
                    static_cast<std::size_t>(a.shape(1))};
}

std::vector<int> to_labels(const IntArray& a) {
  if (a.ndim() != 1) throw DataError("expected a 1-D int array");
  return std::vector<int>(a.data(), a.data() + a.shape(0));
}

py::array_t<int> from_labels(const std::vector<int>& v) {
  py::array_t<int> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

struct Panels {
  std::vector<FirmPanel> items;
};

struct Dataset {
  LabeledDataset ds;
};

struct Model {
  TrainedModel model;
};

struct Committee {
  CombModel model;
};

py::dict metrics_dict(const MetricsReport& r) {
  py::dict d;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f1"] = r.f1;
  d["type_i"] = r.type_i;
  d["type_ii"] = r.type_ii;
  d["bacc"] = r.bacc;
  d["tp"] = r.matrix.tp;
  d["fp"] = r.matrix.fp;
  d["tn"] = r.matrix.tn;
  d["fn"] = r.matrix.fn;
  d["degenerate"] = r.degenerate;
  return d;
}

py::dict comparison_dict(const SegmentPdReport& rep) {
  py::dict d;
  d["granularity"] = granularity_name(rep.granularity);
  d["n_segments"] = rep.comparison.n_segments;
  d["baseline_mean_error"] = rep.comparison.baseline_mean_error;
  d["model_mean_error"] = rep.comparison.model_mean_error;
  d["baseline_var_error"] = rep.comparison.baseline_var_error;
  d["model_var_error"] = rep.comparison.model_var_error;
  d["baseline_superiority"] = rep.comparison.baseline_superiority;
  d["model_superiority"] = rep.comparison.model_superiority;
  d["ties"] = rep.comparison.tie_share;
  py::list rows;
  for (const auto& row : rep.rows) {
    py::dict r;
    r["sector"] = row.segment.sector_code;
    r["geo"] = row.segment.geo_code;
    r["n_firms"] = row.n_firms;
    r["baseline_pd"] = row.baseline_pd;
    r["model_pd"] = row.model_pd;
    r["realized_pd"] = row.realized_pd;
    rows.append(r);
  }
  d["rows"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_creditrisk, m) {
  m.doc() = "Adjusted-default prediction pipeline over credit-register panels";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<TrainError>(m, "TrainError", PyExc_RuntimeError);

  py::class_<GeneratorConfig>(m, "GeneratorConfig")
      .def(py::init<>())
      .def_readwrite("n_firms", &GeneratorConfig::n_firms)
      .def_readwrite("balance_sheet_fraction",
                     &GeneratorConfig::balance_sheet_fraction)
      .def_property(
          "start_year",
          [](const GeneratorConfig& c) { return c.start.year; },
          [](GeneratorConfig& c, int y) { c.start.year = y; })
      .def_property(
          "start_quarter",
          [](const GeneratorConfig& c) { return c.start.quarter; },
          [](GeneratorConfig& c, int q) { c.start.quarter = q; })
      .def_readwrite("n_quarters", &GeneratorConfig::n_quarters)
      .def_readwrite("target_default_rate",
                     &GeneratorConfig::target_default_rate)
      .def_readwrite("balance_signal", &GeneratorConfig::balance_signal)
      .def_readwrite("n_sectors", &GeneratorConfig::n_sectors)
      .def_readwrite("n_geos", &GeneratorConfig::n_geos)
      .def_readwrite("seed", &GeneratorConfig::seed);

  py::class_<Panels>(m, "Panels")
      .def("__len__", [](const Panels& p) { return p.items.size(); })
      .def("write_csv",
           [](const Panels& p, const std::string& loans,
              const std::string& balance) {
             write_loans_csv(p.items, loans);
             if (!balance.empty()) write_balance_csv(p.items, balance);
           },
           py::arg("loans"), py::arg("balance") = std::string())
      .def_static("read_csv",
                  [](const std::string& loans, const std::string& balance) {
                    return Panels{read_panels(loans, balance)};
                  },
                  py::arg("loans"), py::arg("balance") = std::string());

  m.def("generate",
        [](const GeneratorConfig& cfg) { return Panels{generate(cfg)}; },
        py::arg("config"), "Deterministically generate synthetic firm panels");

  m.def("generator_reference_year", &generator_reference_year,
        py::arg("config"));

  m.def("calibration_report",
        [](const Panels& p, int reference_year, double threshold) {
          const CalibrationReport r =
              calibration_report(p.items, reference_year, threshold);
          py::dict d;
          d["n_firms"] = r.n_firms;
          d["eligible_firms"] = r.eligible_firms;
          d["defaulted_firms"] = r.defaulted_firms;
          d["default_rate"] = r.default_rate;
          d["balance_coverage"] = r.balance_coverage;
          d["severity_prevalence"] = r.severity_prevalence;
          return d;
        },
        py::arg("panels"), py::arg("reference_year"),
        py::arg("threshold") = 0.05);

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly(
          "feature_names",
          [](const Dataset& d) { return d.ds.feature_names; })
      .def_property_readonly(
          "firm_ids", [](const Dataset& d) { return d.ds.firm_ids; })
      .def("__len__", [](const Dataset& d) { return d.ds.n_rows(); })
      .def("features",
           [](const Dataset& d) {
             const auto rows = static_cast<py::ssize_t>(d.ds.n_rows());
             const auto cols = static_cast<py::ssize_t>(d.ds.width());
             py::array_t<double> out({rows, cols});
             std::copy(d.ds.cells.begin(), d.ds.cells.end(),
                       out.mutable_data());
             return out;
           })
      .def("labels", [](const Dataset& d) { return from_labels(d.ds.labels); })
      .def("segments", [](const Dataset& d) {
        py::list out;
        for (const auto& s : d.ds.segments)
          out.append(py::make_tuple(s.sector_code, s.geo_code));
        return out;
      });

  m.def("feature_names", &feature_names, py::arg("use_balance") = false);

  m.def("build_features",
        [](const Panels& p, int reference_year, bool use_balance,
           double threshold) {
          FeatureBuildResult r =
              build_features(p.items, reference_year, use_balance, threshold);
          py::dict skips;
          skips["missing_window"] = r.skips.missing_window;
          skips["missing_horizon"] = r.skips.missing_horizon;
          skips["already_default"] = r.skips.already_default;
          return py::make_tuple(Dataset{std::move(r.dataset)}, skips);
        },
        py::arg("panels"), py::arg("reference_year"),
        py::arg("use_balance") = false, py::arg("threshold") = 0.05);

  m.def("read_dataset_csv",
        [](const std::string& path) { return Dataset{read_dataset_csv(path)}; },
        py::arg("path"));

  m.def("write_dataset_csv",
        [](const Dataset& d, const std::string& path) {
          write_dataset_csv(d.ds, path);
        },
        py::arg("dataset"), py::arg("path"));

  m.def("train_test_split",
        [](const Dataset& d, double test_fraction, std::uint64_t seed) {
          auto [train, test] = train_test_split(d.ds, test_fraction, seed);
          return py::make_tuple(Dataset{std::move(train)},
                                Dataset{std::move(test)});
        },
        py::arg("dataset"), py::arg("test_fraction") = 0.3,
        py::arg("seed") = 0);

  m.def("balanced_subsample",
        [](const Dataset& d, std::uint64_t seed) {
          return Dataset{balanced_subsample(d.ds, seed)};
        },
        py::arg("dataset"), py::arg("seed") = 0);

  py::class_<Model>(m, "Model")
      .def_property_readonly(
          "method", [](const Model& m_) { return family_name(m_.model.family); })
      .def("predict",
           [](const Model& m_, const DoubleArray& rows) {
             return from_labels(predict(m_.model, view_of(rows)));
           },
           py::arg("rows"))
      .def("save",
           [](const Model& m_, const std::string& path) {
             save_model(m_.model, path);
           },
           py::arg("path"))
      .def_static("load", [](const std::string& path) {
        return Model{load_model(path)};
      });

  m.def("fit",
        [](const std::string& method, const Dataset& d, std::uint64_t seed) {
          const auto family = family_from_name(method);
          if (!family) throw ConfigError("unknown method '" + method + "'");
          return Model{fit_model(*family, d.ds,
                                 HyperParams::defaults_for(*family), seed)};
        },
        py::arg("method"), py::arg("dataset"), py::arg("seed") = 0,
        "Fit one family under its documented default hyperparameters");

  py::class_<Committee>(m, "Committee")
      .def_property_readonly(
          "vote_threshold",
          [](const Committee& c) { return c.model.vote_threshold; })
      .def_property_readonly(
          "n_members", [](const Committee& c) { return c.model.members.size(); })
      .def("predict",
           [](const Committee& c, const DoubleArray& rows) {
             return from_labels(comb_predict(c.model, view_of(rows)));
           },
           py::arg("rows"))
      .def("save",
           [](const Committee& c, const std::string& path) {
             save_comb(c.model, path);
           },
           py::arg("path"))
      .def_static("load", [](const std::string& path) {
        return Committee{load_comb(path)};
      });

  m.def("fit_committee",
        [](const Dataset& d, int vote_threshold, std::uint64_t seed,
           double tune_fraction) {
          return Committee{
              comb_fit(d.ds, {}, vote_threshold, seed, tune_fraction)};
        },
        py::arg("dataset"), py::arg("vote_threshold") = 3, py::arg("seed") = 0,
        py::arg("tune_fraction") = 0.3);

  m.def("metrics",
        [](const IntArray& predictions, const IntArray& labels) {
          return metrics_dict(
              metrics(to_labels(predictions), to_labels(labels)));
        },
        py::arg("predictions"), py::arg("labels"));

  m.def("run_experiment",
        [](const Panels& p, int reference_year, bool use_balance,
           bool balance_training, double threshold, double test_fraction,
           double tune_fraction, int vote_threshold, std::uint64_t seed,
           const std::vector<std::string>& methods) {
          ExperimentConfig cfg;
          cfg.reference_year = reference_year;
          cfg.use_balance = use_balance;
          cfg.balance_training = balance_training;
          cfg.threshold = threshold;
          cfg.test_fraction = test_fraction;
          cfg.tune_fraction = tune_fraction;
          cfg.vote_threshold = vote_threshold;
          cfg.seed = seed;
          cfg.methods = methods;
          const ExperimentResult r = run_experiment(p.items, cfg);
          py::dict d;
          py::list rows;
          for (const auto& row : r.rows) {
            py::dict rd;
            rd["method"] = row.method;
            rd["ok"] = row.ok;
            if (row.ok) {
              rd["metrics"] = metrics_dict(row.report);
            } else {
              rd["error"] = row.error;
            }
            rows.append(rd);
          }
          d["rows"] = rows;
          d["n_train"] = r.n_train;
          d["n_test"] = r.n_test;
          d["table"] = render_metrics_table(r);
          d["csv"] = render_metrics_csv(r);
          return d;
        },
        py::arg("panels"), py::arg("reference_year"),
        py::arg("use_balance") = false, py::arg("balance_training") = false,
        py::arg("threshold") = 0.05, py::arg("test_fraction") = 0.3,
        py::arg("tune_fraction") = 0.3, py::arg("vote_threshold") = 3,
        py::arg("seed") = 0,
        py::arg("methods") = std::vector<std::string>{});

  m.def("segment_pd_report",
        [](const Dataset& history, const Dataset& evaluation,
           const IntArray& predictions, const std::string& granularity,
           bool signed_error) {
          Granularity g;
          if (granularity == "coarse") {
            g = Granularity::kCoarse;
          } else if (granularity == "fine") {
            g = Granularity::kFine;
          } else {
            throw ConfigError("granularity must be 'coarse' or 'fine'");
          }
          return comparison_dict(segment_pd_report(
              history.ds, evaluation.ds, to_labels(predictions), g,
              signed_error));
        },
        py::arg("history"), py::arg("evaluation"), py::arg("predictions"),
        py::arg("granularity") = "fine", py::arg("signed_error") = false);

  m.def("derive_seed",
        [](std::uint64_t base, const std::string& tag, std::uint64_t index) {
          return derive_seed(base, tag, index);
        },
        py::arg("base"), py::arg("tag"), py::arg("index") = 0);

  m.def("set_max_threads", &set_max_threads, py::arg("n"),
        "Cap worker threads; 0 restores the hardware default");
}
