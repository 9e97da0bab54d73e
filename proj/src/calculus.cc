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

#include "leakage/calculus.h"

#include <cmath>
#include <utility>

#include "leakage/error.h"

namespace leakage {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireBound(double nats, const char* what) {
  if (!(nats >= 0.0) || !std::isfinite(nats)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       std::string(what) + " must be a finite value >= 0");
  }
}

}  // namespace

std::string ProvenanceKind(const Provenance& provenance) {
  return std::visit(Overloaded{
                        [](const ComputedChannel&) { return "computed-channel"; },
                        [](const DpDerived&) { return "dp-derived"; },
                        [](const Cardinality&) { return "cardinality"; },
                        [](const MaxInfoDerived&) { return "max-info-derived"; },
                        [](const Declared&) { return "declared"; },
                    },
                    provenance);
}

LedgerEntry::LedgerEntry(std::string label, double bound_nats,
                         Provenance provenance)
    : label_(std::move(label)),
      bound_nats_(bound_nats),
      provenance_(std::move(provenance)) {}

LedgerEntry LedgerEntry::FromChannel(std::string label, double leakage_nats) {
  RequireBound(leakage_nats, "computed leakage");
  return LedgerEntry(std::move(label), leakage_nats, ComputedChannel{});
}

LedgerEntry LedgerEntry::FromDp(std::string label, double epsilon, int n) {
  return LedgerEntry(std::move(label), DpToLeakage(epsilon, n),
                     DpDerived{epsilon, n});
}

LedgerEntry LedgerEntry::FromCardinality(std::string label,
                                         std::size_t output_size) {
  return LedgerEntry(std::move(label), CardinalityBound(output_size),
                     Cardinality{output_size});
}

LedgerEntry LedgerEntry::FromMaxInfo(std::string label, double k) {
  return LedgerEntry(std::move(label), MaxInfoToLeakage(k), MaxInfoDerived{k});
}

LedgerEntry LedgerEntry::FromDeclared(std::string label, double bound_nats) {
  RequireBound(bound_nats, "declared bound");
  return LedgerEntry(std::move(label), bound_nats, Declared{});
}

LeakageLedger LeakageLedger::Push(LedgerEntry entry) const {
  std::vector<LedgerEntry> entries = entries_;
  entries.push_back(std::move(entry));
  return LeakageLedger(std::move(entries));
}

double LeakageLedger::Total() const {
  double total = 0.0;
  for (const LedgerEntry& e : entries_) total += e.bound_nats();
  return total;
}

double DpToLeakage(double epsilon, int n) {
  if (!(epsilon >= 0.0)) {
    throw LeakageError(ErrorCode::kNegativeEpsilon,
                       "epsilon must be >= 0, got " + std::to_string(epsilon));
  }
  if (n < 1) {
    throw LeakageError(ErrorCode::kInvalidArgument, "n must be >= 1");
  }
  return epsilon * static_cast<double>(n);
}

double CardinalityBound(std::size_t output_size) {
  if (output_size < 1) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "output alphabet size must be >= 1");
  }
  return std::log(static_cast<double>(output_size));
}

double Compose(const LeakageLedger& ledger) { return ledger.Total(); }

double LeakageToApproxMaxInfo(double leakage_nats, double beta) {
  RequireBound(leakage_nats, "leakage");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw LeakageError(ErrorCode::kBetaOutOfRange,
                       "beta must lie in (0, 1), got " + std::to_string(beta));
  }
  return leakage_nats + std::log(1.0 / beta);
}

double MaxInfoToLeakage(double k) {
  RequireBound(k, "max-information bound");
  return k;
}

Channel ComposeAdaptively(std::span<const Channel> steps) {
  if (steps.empty()) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "adaptive composition needs at least one step");
  }
  const Alphabet& x_alphabet = steps[0].input();
  const std::size_t x_count = x_alphabet.size();
  std::vector<double> rows(steps[0].row_major().begin(),
                           steps[0].row_major().end());
  Alphabet outputs = steps[0].output();
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const Channel& step = steps[i];
    const std::size_t prev = outputs.size();
    if (step.input_size() != x_count * prev) {
      throw LeakageError(ErrorCode::kAlphabetMismatch,
                         "step " + std::to_string(i) + " input has " +
                             std::to_string(step.input_size()) +
                             " symbols, expected |X| * " + std::to_string(prev));
    }
    const std::size_t next = step.output_size();
    std::vector<double> composed(x_count * prev * next);
    for (std::size_t x = 0; x < x_count; ++x) {
      for (std::size_t a = 0; a < prev; ++a) {
        const double w = rows[x * prev + a];
        const auto step_row = step.row(x * prev + a);
        for (std::size_t y = 0; y < next; ++y) {
          composed[(x * prev + a) * next + y] = w * step_row[y];
        }
      }
    }
    rows = std::move(composed);
    outputs = PairAlphabet(outputs, step.output());
  }
  return Channel(x_alphabet, std::move(outputs), std::move(rows));
}

double StepLeakageBound(const Channel& step, std::size_t x_count,
                        std::span<const std::size_t> support) {
  if (x_count == 0 || step.input_size() % x_count != 0) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "step input is not a multiple of |X|");
  }
  const std::size_t prev = step.input_size() / x_count;
  double worst = 0.0;
  std::vector<std::size_t> rows(support.size());
  for (std::size_t a = 0; a < prev; ++a) {
    for (std::size_t i = 0; i < support.size(); ++i) {
      rows[i] = support[i] * prev + a;
    }
    worst = std::max(worst, MaximalLeakage(step, rows).nats);
  }
  return worst;
}

std::vector<double> ChainRuleTerms(const DiscreteDistribution& prior,
                                   std::span<const Channel> steps) {
  if (steps.empty()) return {};
  std::vector<double> terms;
  terms.push_back(MaximalLeakage(prior, steps[0]).nats);
  const std::size_t x_count = prior.size();
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const Channel history = ComposeAdaptively(steps.first(i));
    const std::size_t z_count = history.output_size();
    std::vector<SectionIndex> support;
    for (std::size_t x = 0; x < x_count; ++x) {
      for (std::size_t z = 0; z < z_count; ++z) {
        if (prior[x] * history.at(x, z) > 0.0) support.push_back({x, z});
      }
    }
    terms.push_back(ConditionalMaximalLeakage(steps[i], z_count, support).nats);
  }
  return terms;
}

}  // namespace leakage
