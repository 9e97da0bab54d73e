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

#ifndef LEAKAGE_BOUNDS_H_
#define LEAKAGE_BOUNDS_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "leakage/distribution.h"

namespace leakage {

// The result of evaluating one bound. Probability bounds that reach 1 are
// returned unclamped and flagged `trivial`.
struct BoundReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> inputs;
  bool trivial = false;
  std::map<std::string, bool> flags;
  std::vector<std::string> notes;
};

// P(E) <= exp(L) * max_y P_X(E_y).
BoundReport AdaptiveEventBound(double max_fiber_prob, double leakage_nats);

// Sum of the joint mass over the event.
double ExactEventProbability(const JointDistribution& joint,
                             const EventMask& event);

// One-sided McDiarmid tail exp(-2 t^2 / (n c^2)) for a function of
// sensitivity c of n independent variables.
double McDiarmidTail(int n, double t, double c);

// P(|L_P(h) - L_S(h)| > eta) <= 2 exp(L - 2 n eta^2).
BoundReport GenErrorBound(int n, double eta, double leakage_nats);

// 2 exp(L - 2 eta^2 / (c^2 n)) for a statistic of sensitivity c.
BoundReport GenErrorBoundSensitivity(int n, double eta, double c,
                                     double leakage_nats);

// Significance level that keeps the false discovery probability under
// delta after selecting with leakage L: delta * exp(-L).
double AdjustedSignificance(double delta, double leakage_nats);

// The same with L = log(count) for a selection among `count` statistics,
// evaluated as delta / count.
double AdjustedSignificanceForCount(double delta, std::size_t count);

// P(false discovery) <= exp(L) * sigma.
BoundReport FdrBound(double sigma, double leakage_nats);
// With L = log(count), evaluated as count * sigma.
BoundReport FdrBoundForCount(double sigma, std::size_t count);

// 3 sqrt(beta) for eps-DP selection; flags["valid"] records whether
// eps <= sqrt(ln(1/beta) / (2n)).
BoundReport DworkDpBound(double beta, double epsilon, int n);

// (I + log 2) / (2 n eta^2 - log 2). Throws DenominatorNonPositive.
BoundReport MiGenBound(double mutual_info_nats, int n, double eta);

enum class ComplexityMode { kLeakage, kMutualInfo };

// Sufficient sample size for accuracy eta and confidence delta:
//   leakage:     (L + ln(1/delta)) / eta^2
//   mutual-info: I / (eta^2 delta)
double SampleComplexity(double measure_nats, double eta, double delta,
                        ComplexityMode mode);

// Both sides of a bound comparison plus the condition under which the
// leakage-based side is the smaller one.
struct Comparison {
  std::string name;
  double leakage_bound = 0.0;
  double reference_bound = 0.0;
  std::string condition;
  bool condition_holds = false;
  std::map<std::string, double> inputs;
  std::map<std::string, double> derived;
};

// exp(eps n) beta (leakage route through eps-DP) against 3 sqrt(beta);
// condition eps <= log(3 / sqrt(beta)) / n.
Comparison CompareWithDworkDp(double beta, double epsilon, int n);

// 2 exp(L - 2 eta^2/(c^2 n)) against 3 exp(-eta^2/(c^2 n)); the condition
// is the numeric inequality between the two.
Comparison CompareWithSensitivityDp(int n, double eta, double c,
                                    double leakage_nats);

// Generalization tail from leakage against the mutual-information bound.
Comparison CompareWithMutualInfo(int n, double eta, double leakage_nats,
                                 double mutual_info_nats);

}  // namespace leakage

#endif  // LEAKAGE_BOUNDS_H_
