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

#ifndef LEAKAGE_CALCULUS_H_
#define LEAKAGE_CALCULUS_H_

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "leakage/distribution.h"
#include "leakage/measures.h"

namespace leakage {

// Leakage budgets: per-step guarantees converted to nats and summed under
// adaptive composition.

// Provenance of a ledger entry.
struct ComputedChannel {};
struct DpDerived {
  double epsilon = 0.0;
  int n = 1;
};
struct Cardinality {
  std::size_t output_size = 1;
};
struct MaxInfoDerived {
  double k = 0.0;
};
struct Declared {};

using Provenance =
    std::variant<ComputedChannel, DpDerived, Cardinality, MaxInfoDerived,
                 Declared>;

// "computed-channel", "dp-derived", ...
std::string ProvenanceKind(const Provenance& provenance);

class LedgerEntry {
 public:
  static LedgerEntry FromChannel(std::string label, double leakage_nats);
  static LedgerEntry FromDp(std::string label, double epsilon, int n);
  static LedgerEntry FromCardinality(std::string label, std::size_t output_size);
  static LedgerEntry FromMaxInfo(std::string label, double k);
  static LedgerEntry FromDeclared(std::string label, double bound_nats);

  const std::string& label() const { return label_; }
  double bound_nats() const { return bound_nats_; }
  const Provenance& provenance() const { return provenance_; }

 private:
  LedgerEntry(std::string label, double bound_nats, Provenance provenance);

  std::string label_;
  double bound_nats_;
  Provenance provenance_;
};

// An ordered, immutable list of per-step leakage bounds.
class LeakageLedger {
 public:
  LeakageLedger() = default;
  explicit LeakageLedger(std::vector<LedgerEntry> entries)
      : entries_(std::move(entries)) {}

  LeakageLedger Push(LedgerEntry entry) const;

  std::span<const LedgerEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double Total() const;

 private:
  std::vector<LedgerEntry> entries_;
};

// An eps-DP algorithm on datasets of n records leaks at most eps * n.
double DpToLeakage(double epsilon, int n);

// Any algorithm with output_size possible outputs leaks at most log of it.
double CardinalityBound(std::size_t output_size);

// Adaptive composition: the sum of the entries' bounds.
double Compose(const LeakageLedger& ledger);

// I_inf^beta <= L + log(1/beta).
double LeakageToApproxMaxInfo(double leakage_nats, double beta);

// A max-information bound k is also a leakage bound.
double MaxInfoToLeakage(double k);

// Adaptive composition of channels. Step i maps (x, y_1, ..., y_{i-1}) to
// y_i, with its input enumerated lexicographically (x most significant).
// The result maps x to (y_1, ..., y_m), also lexicographic.
Channel ComposeAdaptively(std::span<const Channel> steps);

// max over previous outputs y^{i-1} of ML(X -> A_i(X, y^{i-1})), with X
// restricted to `support`. `x_count` is |X|; step.input_size() must be a
// multiple of it.
double StepLeakageBound(const Channel& step, std::size_t x_count,
                        std::span<const std::size_t> support);

// ML(X -> A_1), ML(X -> A_2 | A_1), ..., ML(X -> A_m | A^{m-1}), each term
// evaluated by ConditionalMaximalLeakage over the pairs (x, a^{i-1}) of
// positive probability under `prior` and the earlier steps.
std::vector<double> ChainRuleTerms(const DiscreteDistribution& prior,
                                   std::span<const Channel> steps);

}  // namespace leakage

#endif  // LEAKAGE_CALCULUS_H_
