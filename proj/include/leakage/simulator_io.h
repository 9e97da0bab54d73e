// Copyright 2026 The Leakage Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEAKAGE_SIMULATOR_IO_H_
#define LEAKAGE_SIMULATOR_IO_H_

#include <span>
#include <string>

#include "leakage/serialization.h"
#include "leakage/simulator.h"

namespace leakage::io {

// Experiment configs. Field names: d, n, dataDistribution, learner {kind,
// epsilon, hypothesisClass, tieBreak}, eta, trials, seed, exactChannel for
// generalization runs; n, numStats, sigma, delta, trials, seed for
// hypothesis-testing runs. Unknown fields are rejected.
GenErrConfig GenErrConfigFromJson(const Json& doc);
HypTestConfig HypTestConfigFromJson(const Json& doc);
Json ToJson(const GenErrConfig& cfg);
Json ToJson(const HypTestConfig& cfg);

std::string LearnerKindName(LearnerKind kind);

Json ToJson(const ExperimentReport& report);
Json ToJson(const HypTestReport& report);

// One header line, then one line per trial.
std::string TraceCsv(std::span<const GenErrTrial> trials);
std::string TraceCsv(std::span<const HypTestTrial> trials);

}  // namespace leakage::io

#endif  // LEAKAGE_SIMULATOR_IO_H_
