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
"""Maximal leakage measures, bounds and experiments.

Distributions, channels and joints are plain dicts in the JSON layout the
command-line tool reads, e.g. {"input_labels": [...], "output_labels": [...],
"rows": [[...], ...]} for a channel. Values are in nats.
"""

import json as _json

from leakage_lab import _core
from leakage_lab._core import (
    LeakageError,
    approx_max_divergence,
    adjusted_significance,
    adjusted_significance_for_count,
    cardinality_bound,
    derive_trial_seed,
    dp_to_leakage,
    renyi_inf_divergence,
    sample_complexity,
)

__all__ = [
    "LeakageError",
    "adaptive_event_bound",
    "adjusted_significance",
    "adjusted_significance_for_count",
    "approx_max_divergence",
    "approx_max_information",
    "binary_erasure_channel",
    "cardinality_bound",
    "compose",
    "derive_trial_seed",
    "dp_to_leakage",
    "dwork_dp_bound",
    "empirical_dp",
    "gen_error_bound",
    "max_information",
    "maximal_leakage",
    "mutual_information",
    "renyi_inf_divergence",
    "sample_complexity",
    "simulate_generr",
    "simulate_hyptest",
    "verify",
]


def _dump(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def _load(text):
    return _json.loads(text, parse_constant=float)


def maximal_leakage(channel, prior=None):
    return _core.maximal_leakage(_dump(channel), "" if prior is None else _dump(prior))


def mutual_information(joint):
    return _core.mutual_information(_dump(joint))


def max_information(joint):
    return _core.max_information(_dump(joint))


def approx_max_information(joint, beta):
    return _core.approx_max_information(_dump(joint), beta)


def empirical_dp(channel):
    return _core.empirical_dp(_dump(channel))


def binary_erasure_channel(alpha):
    return _load(_core.binary_erasure_channel(alpha))


def compose(ledger=None, declared=()):
    return _load(_core.compose("" if ledger is None else _dump(ledger), list(declared)))


def adaptive_event_bound(max_fiber_prob, leakage_nats):
    return _load(_core.adaptive_event_bound(max_fiber_prob, leakage_nats))


def gen_error_bound(n, eta, leakage_nats):
    return _load(_core.gen_error_bound(n, eta, leakage_nats))


def dwork_dp_bound(beta, epsilon, n):
    return _load(_core.dwork_dp_bound(beta, epsilon, n))


def simulate_generr(config, workers=0):
    return _load(_core.simulate_generr(_dump(config), workers))


def simulate_hyptest(config, workers=0):
    return _load(_core.simulate_hyptest(_dump(config), workers))


def verify(suite, instances, seed, workers=0):
    return _load(_core.verify(suite, instances, seed, workers))
