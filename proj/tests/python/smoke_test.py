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
"""End-to-end smoke test of the Python bindings: generate, featurize, fit,
score, persist, and report through the package API."""

import math
import os
import tempfile

import creditrisk as cr


def main() -> None:
    cfg = cr.GeneratorConfig()
    cfg.n_firms = 250
    cfg.seed = 21
    panels = cr.generate(cfg)
    assert len(panels) == 250

    ref_year = cr.generator_reference_year(cfg)
    report = cr.calibration_report(panels, ref_year)
    assert report["n_firms"] == 250
    assert 0.0 < report["default_rate"] < 1.0

    dataset, skips = cr.build_features(panels, ref_year)
    assert len(dataset) + sum(skips.values()) == 250
    assert dataset.feature_names == cr.feature_names(use_balance=False)
    assert dataset.features().shape == (len(dataset), 60)

    with_balance, _ = cr.build_features(panels, ref_year, use_balance=True)
    assert len(with_balance.feature_names) == 68

    train, test = cr.train_test_split(dataset, test_fraction=0.3, seed=4)
    assert len(train) + len(test) == len(dataset)

    model = cr.fit("DT", train, seed=4)
    assert model.method == "DT"
    predictions = model.predict(test.features())
    scored = cr.metrics(predictions, test.labels())
    assert 0.0 <= scored["f1"] <= 1.0
    assert math.isclose(
        scored["bacc"], (scored["recall"] + (1.0 - scored["type_ii"])) / 2.0
    ) or "bacc" in scored["degenerate"]

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "model.json")
        model.save(path)
        again = cr.Model.load(path)
        assert (again.predict(test.features()) == predictions).all()

    committee = cr.fit_committee(train, vote_threshold=3, seed=4)
    assert committee.n_members == 10
    assert committee.vote_threshold == 3
    votes = committee.predict(test.features())
    pd = cr.segment_pd_report(train, test, votes, granularity="coarse")
    assert pd["granularity"] == "coarse"
    assert pd["n_segments"] == len(pd["rows"]) > 0
    assert pd["model_mean_error"] >= 0.0

    half = cr.balanced_subsample(train, seed=4)
    labels = half.labels()
    assert (labels == 1).sum() == (labels == 0).sum()

    result = cr.run_experiment(
        panels, ref_year, seed=4, methods=["NAIVE", "LOG", "DT"]
    )
    assert [row["method"] for row in result["rows"]] == ["NAIVE", "LOG", "DT"]
    assert all(row["ok"] for row in result["rows"])
    assert "BACC" in result["table"]
    assert result["csv"].startswith("method,pr,re,f1,type1,type2,bacc")

    try:
        cr.fit("XGB", train)
    except ValueError as err:
        assert "unknown method" in str(err)
    else:
        raise AssertionError("unknown method must raise")

    print("smoke test passed")


if __name__ == "__main__":
    main()
