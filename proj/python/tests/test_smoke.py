# Copyright 2026 The Leakage Lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the Python bindings."""

import math

import pytest

import leakage_lab as ll


def bec_joint(alpha):
    ch = ll.binary_erasure_channel(alpha)
    mass = [[0.5 * p for p in row] for row in ch["rows"]]
    return {"input_labels": ch["input_labels"], "output_labels": ch["output_labels"],
            "mass": mass}


def test_bec_leakage():
    for alpha in (0.1, 0.5, 0.9):
        assert ll.maximal_leakage(ll.binary_erasure_channel(alpha)) == pytest.approx(
            math.log(2 - alpha), abs=1e-12)


def test_bec_approx_max_information():
    assert ll.approx_max_information(bec_joint(0.5), 0.1) == pytest.approx(
        math.log(1.6), abs=1e-12)


def test_prior_support_matters():
    ch = {"input_labels": ["a", "b"], "output_labels": ["0", "1"],
          "rows": [[1, 0], [0, 1]]}
    assert ll.maximal_leakage(ch) == pytest.approx(math.log(2))
    point = {"labels": ["a", "b"], "probs": [1, 0]}
    assert ll.maximal_leakage(ch, point) == 0.0


def test_compose_dp_and_declared():
    ledger = ll.compose(declared=[0.3, 0.7])
    assert ledger["total_nats"] == pytest.approx(1.0)
    assert ll.dp_to_leakage(0.01, 100) == pytest.approx(1.0)
    assert ll.cardinality_bound(10) == pytest.approx(math.log(10))


def test_bounds():
    assert ll.adjusted_significance_for_count(0.05, 10) == 0.005
    report = ll.dwork_dp_bound(0.01, 0.01, 100)
    assert report["value"] == pytest.approx(0.3)
    assert report["flags"]["valid"] is True
    assert ll.sample_complexity(0.0, 0.1, 0.01, "mi") == 0.0


def test_errors_map_to_leakage_error():
    with pytest.raises(ll.LeakageError) as info:
        ll.approx_max_information(bec_joint(0.5), 1.5)
    assert info.value.code == "BetaOutOfRange"
    with pytest.raises(ValueError):
        ll.maximal_leakage({"input_labels": ["a"], "output_labels": ["0"], "rows": [[0.5]]})


def test_divergences():
    assert ll.renyi_inf_divergence([0.5, 0.5], [0.25, 0.75]) == pytest.approx(math.log(2))
    assert ll.approx_max_divergence([0.5, 0.5], [0.25, 0.75], 0.0) == pytest.approx(
        math.log(2))


def test_simulations_are_deterministic_across_workers():
    cfg = {"d": 2, "n": 4, "dataDistribution": "uniform",
           "learner": {"kind": "erm", "hypothesisClass": "all"},
           "eta": 0.4, "trials": 2000, "seed": 3}
    one = ll.simulate_generr(cfg, workers=1)
    four = ll.simulate_generr(cfg, workers=4)
    assert one == four
    assert one["pass"] is True
    assert one["exactLeakage_nats"] == pytest.approx(math.log(4))

    hyp = ll.simulate_hyptest({"n": 16, "numStats": 10, "sigma": 0.05, "delta": 0.05,
                               "trials": 2000, "seed": 1})
    assert hyp["adjustedSigma"] == 0.005
    assert hyp["pass"] is True


def test_verify_smoke():
    report = ll.verify("all", 5, 7)
    assert report["pass"] is True
    assert len(report["checks"]) == 16
