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

#ifndef LEAKAGE_SIMULATOR_H_
#define LEAKAGE_SIMULATOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "leakage/distribution.h"

namespace leakage {

// Monte Carlo experiments with learners and selection rules whose channels
// can be enumerated exactly at small sizes.

// Per-trial stream key. For a fixed master seed, distinct trial indices map
// to distinct keys.
std::uint64_t DeriveTrialSeed(std::uint64_t master, std::uint64_t trial_index);

// Runs body(begin, end) over [0, count) split into contiguous chunks on
// `workers` threads (0 = hardware concurrency).
void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t, std::size_t)>& body);

// Sample space Z = X x {0, 1} with |X| = d uses index 2 * x + label.
Alphabet SampleAlphabet(int d);

// A binary labeling of the domain {0, ..., d-1}.
using Hypothesis = std::vector<std::uint8_t>;

// All 2^d labelings, hypothesis i labels x with bit x of i.
std::vector<Hypothesis> AllLabelings(int d);

enum class LearnerKind { kErm, kExponentialMechanism, kConstant };

struct LearnerSpec {
  LearnerKind kind = LearnerKind::kErm;
  // Privacy parameter of the exponential mechanism.
  double epsilon = 0.0;
  std::vector<Hypothesis> hypotheses;
};

// Throws InvalidArgument unless the class is nonempty, distinct, of length
// d and (for the exponential mechanism) epsilon > 0.
void ValidateLearner(const LearnerSpec& spec, int d);

// Mistakes of h on one sample.
int Errors(const Hypothesis& h, std::span<const std::size_t> sample);

// The learner's output distribution on one sample:
//   ERM: one-hot at the lowest-index minimizer of empirical risk.
//   exponential mechanism: weights exp(-eps * n * L_S(h) / 2).
//   constant: one-hot at hypothesis 0.
std::vector<double> LearnerOutput(const LearnerSpec& spec,
                                  std::span<const std::size_t> sample);

// L_P(h) = P_{(x,y) ~ data}(h(x) != y).
double TrueRisk(const Hypothesis& h, const DiscreteDistribution& data);

// The learner as a channel from the n-fold product of data.alphabet() to
// the hypothesis class. Throws CapExceeded if (2d)^n exceeds `cap`.
Channel LearnerChannel(const LearnerSpec& spec, int d, int n,
                       const DiscreteDistribution& data, std::size_t cap);
Channel LearnerChannel(const LearnerSpec& spec, int d, int n,
                       const DiscreteDistribution& data);

// E = {(S, h) : |L_P(h) - L_S(h)| > eta}, over the same alphabets as
// LearnerChannel.
EventMask GeneralizationEvent(const LearnerSpec& spec, int d, int n,
                              const DiscreteDistribution& data, double eta,
                              std::size_t cap);

struct GenErrConfig {
  int d = 2;
  int n = 1;
  DiscreteDistribution data = DiscreteDistribution::Uniform(SampleAlphabet(2));
  LearnerSpec learner;
  double eta = 0.1;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  // Compute the learner channel's leakage exactly; requires (2d)^n <= cap.
  bool exact_channel = true;
};

struct HypTestConfig {
  int n = 1;
  int num_stats = 1;
  double sigma = 0.05;
  double delta = 0.05;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
};

struct ExperimentReport {
  std::int64_t trials = 0;
  std::int64_t events = 0;
  double empirical_tail = 0.0;
  // empirical_tail minus its one-sided 99% Clopper-Pearson lower limit.
  double mc_half_width = 0.0;
  double theoretical_bound = 0.0;
  std::optional<double> exact_leakage_nats;
  double ledger_bound_nats = 0.0;
  // empirical_tail - mc_half_width <= theoretical_bound.
  bool pass = false;
};

struct HypTestReport {
  double adjusted_sigma = 0.0;
  // The selection rule's ledger bound, log T.
  double leakage_bound_nats = 0.0;
  ExperimentReport at_adjusted;
  ExperimentReport at_raw;
  bool pass = false;
};

struct GenErrTrial {
  std::int64_t trial = 0;
  std::size_t hypothesis = 0;
  double empirical_risk = 0.0;
  double true_risk = 0.0;
  bool event = false;
};

struct HypTestTrial {
  std::int64_t trial = 0;
  std::size_t selected = 0;
  double min_p_value = 0.0;
  bool discovery_adjusted = false;
  bool discovery_raw = false;
};

struct RunOptions {
  int workers = 0;
  std::size_t cap = 0;  // 0 = EnumerationCap()
};

// Fills `report` from the event count.
void FinalizeReport(ExperimentReport& report);

// One-sided Clopper-Pearson lower confidence limit.
double ClopperPearsonLower(std::int64_t events, std::int64_t trials,
                           double confidence);

ExperimentReport RunGenErrorExperiment(const GenErrConfig& cfg,
                                       const RunOptions& options = {},
                                       std::vector<GenErrTrial>* trace = nullptr);

// Window [offset, offset + length) of test statistic t.
struct StatWindow {
  int offset = 0;
  int length = 0;
};

// T overlapping windows of length max(1, n/2) with evenly spread offsets.
std::vector<StatWindow> StatisticWindows(int n, int num_stats);

// P(Bin(m, 1/2) >= k) for k = 0..m.
std::vector<double> BinomialUpperTails(int m);

HypTestReport RunHypTestExperiment(const HypTestConfig& cfg,
                                   const RunOptions& options = {},
                                   std::vector<HypTestTrial>* trace = nullptr);

}  // namespace leakage

#endif  // LEAKAGE_SIMULATOR_H_
