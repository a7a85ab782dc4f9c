# Copyright 2026 The creditrisk Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Adjusted-default prediction over synthetic credit-register panels."""

from creditrisk._creditrisk import (
    Committee,
    ConfigError,
    DataError,
    Dataset,
    GeneratorConfig,
    Model,
    Panels,
    TrainError,
    balanced_subsample,
    build_features,
    calibration_report,
    derive_seed,
    feature_names,
    fit,
    fit_committee,
    generate,
    generator_reference_year,
    metrics,
    read_dataset_csv,
    run_experiment,
    segment_pd_report,
    set_max_threads,
    train_test_split,
    write_dataset_csv,
)

__all__ = [
    "Committee",
    "ConfigError",
    "DataError",
    "Dataset",
    "GeneratorConfig",
    "Model",
    "Panels",
    "TrainError",
    "balanced_subsample",
    "build_features",
    "calibration_report",
    "derive_seed",
    "feature_names",
    "fit",
    "fit_committee",
    "generate",
    "generator_reference_year",
    "metrics",
    "read_dataset_csv",
    "run_experiment",
    "segment_pd_report",
    "set_max_threads",
    "train_test_split",
    "write_dataset_csv",
]

__version__ = "0.1.0"
