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

#include "leakage/bounds.h"

#include <cmath>
#include <numbers>
#include <string>

#include "leakage/error.h"

namespace leakage {
namespace {

void RequireLeakage(double nats) {
  if (!(nats >= 0.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "leakage must be >= 0, got " + std::to_string(nats));
  }
}

void RequireCount(int n) {
  if (n < 1) throw LeakageError(ErrorCode::kInvalidArgument, "n must be >= 1");
}

void RequireOpenUnit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       std::string(name) + " must lie in (0, 1), got " +
                           std::to_string(v));
  }
}

void RequireSensitivity(double c) {
  if (!(c > 0.0)) {
    throw LeakageError(ErrorCode::kNonPositiveSensitivity,
                       "sensitivity must be > 0, got " + std::to_string(c));
  }
}

BoundReport ProbabilityReport(std::string name, double value,
                              std::map<std::string, double> inputs) {
  BoundReport report;
  report.name = std::move(name);
  report.value = value;
  report.inputs = std::move(inputs);
  report.trivial = value >= 1.0;
  return report;
}

}  // namespace

BoundReport AdaptiveEventBound(double max_fiber_prob, double leakage_nats) {
  if (!(max_fiber_prob >= 0.0 && max_fiber_prob <= 1.0 + kInputTolerance)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "fiber probability must lie in [0, 1]");
  }
  RequireLeakage(leakage_nats);
  return ProbabilityReport(
      "adapt", std::exp(leakage_nats) * max_fiber_prob,
      {{"max_fiber_prob", max_fiber_prob}, {"L_nats", leakage_nats}});
}

double ExactEventProbability(const JointDistribution& joint,
                             const EventMask& event) {
  if (!(joint.input() == event.input()) || !(joint.output() == event.output())) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "event alphabets differ from the joint's");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < joint.input_size(); ++x) {
    for (std::size_t y = 0; y < joint.output_size(); ++y) {
      if (event.contains(x, y)) total += joint.at(x, y);
    }
  }
  return total;
}

double McDiarmidTail(int n, double t, double c) {
  RequireCount(n);
  RequireSensitivity(c);
  if (!(t > 0.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument, "deviation t must be > 0");
  }
  return std::exp(-2.0 * t * t / (static_cast<double>(n) * c * c));
}

BoundReport GenErrorBound(int n, double eta, double leakage_nats) {
  RequireCount(n);
  RequireOpenUnit(eta, "eta");
  RequireLeakage(leakage_nats);
  // Two-sided: each tail is a one-sided McDiarmid bound with c = 1/n.
  const double tail = McDiarmidTail(n, eta, 1.0 / static_cast<double>(n));
  return ProbabilityReport(
      "generr", 2.0 * std::exp(leakage_nats) * tail,
      {{"n", n}, {"eta", eta}, {"L_nats", leakage_nats}});
}

BoundReport GenErrorBoundSensitivity(int n, double eta, double c,
                                     double leakage_nats) {
  RequireCount(n);
  RequireSensitivity(c);
  RequireLeakage(leakage_nats);
  if (!(eta > 0.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument, "eta must be > 0");
  }
  const double exponent =
      leakage_nats - 2.0 * eta * eta / (c * c * static_cast<double>(n));
  return ProbabilityReport(
      "generr-c", 2.0 * std::exp(exponent),
      {{"n", n}, {"eta", eta}, {"c", c}, {"L_nats", leakage_nats}});
}

double AdjustedSignificance(double delta, double leakage_nats) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "delta must lie in (0, 1]");
  }
  RequireLeakage(leakage_nats);
  return delta / std::exp(leakage_nats);
}

double AdjustedSignificanceForCount(double delta, std::size_t count) {
  if (count == 0) {
    throw LeakageError(ErrorCode::kInvalidArgument, "count must be >= 1");
  }
  AdjustedSignificance(delta, 0.0);
  return delta / static_cast<double>(count);
}

BoundReport FdrBoundForCount(double sigma, std::size_t count) {
  if (count == 0) {
    throw LeakageError(ErrorCode::kInvalidArgument, "count must be >= 1");
  }
  BoundReport report = FdrBound(sigma, std::log(static_cast<double>(count)));
  report.value = static_cast<double>(count) * sigma;
  report.trivial = report.value >= 1.0;
  report.inputs["count"] = static_cast<double>(count);
  return report;
}

BoundReport FdrBound(double sigma, double leakage_nats) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "sigma must lie in [0, 1]");
  }
  RequireLeakage(leakage_nats);
  BoundReport report = ProbabilityReport(
      "hyptest", std::exp(leakage_nats) * sigma,
      {{"sigma", sigma}, {"L_nats", leakage_nats}});
  report.notes.push_back(
      "p-values as statistics of unit sensitivity give only "
      "P(E) <= exp(L - 2 eta^2); not evaluated here");
  return report;
}

BoundReport DworkDpBound(double beta, double epsilon, int n) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw LeakageError(ErrorCode::kBetaOutOfRange,
                       "beta must lie in (0, 1), got " + std::to_string(beta));
  }
  if (!(epsilon >= 0.0)) {
    throw LeakageError(ErrorCode::kNegativeEpsilon, "epsilon must be >= 0");
  }
  RequireCount(n);
  BoundReport report = ProbabilityReport(
      "dwork", 3.0 * std::sqrt(beta),
      {{"beta", beta}, {"eps", epsilon}, {"n", n}});
  const double max_epsilon =
      std::sqrt(std::log(1.0 / beta) / (2.0 * static_cast<double>(n)));
  report.flags["valid"] = epsilon <= max_epsilon;
  report.inputs["eps_max"] = max_epsilon;
  return report;
}

BoundReport MiGenBound(double mutual_info_nats, int n, double eta) {
  RequireCount(n);
  RequireOpenUnit(eta, "eta");
  RequireLeakage(mutual_info_nats);
  const double denominator =
      2.0 * static_cast<double>(n) * eta * eta - std::numbers::ln2;
  if (!(denominator > 0.0)) {
    throw LeakageError(ErrorCode::kDenominatorNonPositive,
                       "2 n eta^2 must exceed log 2");
  }
  return ProbabilityReport("mi", (mutual_info_nats + std::numbers::ln2) /
                                     denominator,
                           {{"I_nats", mutual_info_nats}, {"n", n}, {"eta", eta}});
}

double SampleComplexity(double measure_nats, double eta, double delta,
                        ComplexityMode mode) {
  RequireLeakage(measure_nats);
  RequireOpenUnit(eta, "eta");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "delta must lie in (0, 1]");
  }
  const double eta2 = eta * eta;
  switch (mode) {
    case ComplexityMode::kLeakage:
      return (measure_nats + std::log(1.0 / delta)) / eta2;
    case ComplexityMode::kMutualInfo:
      return measure_nats / (eta2 * delta);
  }
  return 0.0;
}

Comparison CompareWithDworkDp(double beta, double epsilon, int n) {
  const BoundReport dwork = DworkDpBound(beta, epsilon, n);
  Comparison cmp;
  cmp.name = "leakage-vs-dwork-dp";
  cmp.leakage_bound = std::exp(epsilon * static_cast<double>(n)) * beta;
  cmp.reference_bound = dwork.value;
  const double threshold =
      std::log(3.0 / std::sqrt(beta)) / static_cast<double>(n);
  cmp.condition = "eps <= log(3/sqrt(beta))/n";
  cmp.condition_holds = epsilon <= threshold;
  cmp.inputs = {{"beta", beta}, {"eps", epsilon}, {"n", n}};
  cmp.derived = {{"eps_crossover", threshold},
                 {"eps_max_reference", dwork.inputs.at("eps_max")},
                 {"reference_valid", dwork.flags.at("valid") ? 1.0 : 0.0}};
  return cmp;
}

Comparison CompareWithSensitivityDp(int n, double eta, double c,
                                    double leakage_nats) {
  const BoundReport ours = GenErrorBoundSensitivity(n, eta, c, leakage_nats);
  Comparison cmp;
  cmp.name = "leakage-vs-sensitivity-dp";
  cmp.leakage_bound = ours.value;
  cmp.reference_bound =
      3.0 * std::exp(-eta * eta / (c * c * static_cast<double>(n)));
  cmp.condition = "2 exp(L - 2 eta^2/(c^2 n)) < 3 exp(-eta^2/(c^2 n))";
  cmp.condition_holds = cmp.leakage_bound < cmp.reference_bound;
  cmp.inputs = {{"n", n}, {"eta", eta}, {"c", c}, {"L_nats", leakage_nats}};
  return cmp;
}

Comparison CompareWithMutualInfo(int n, double eta, double leakage_nats,
                                 double mutual_info_nats) {
  Comparison cmp;
  cmp.name = "leakage-vs-mutual-info";
  cmp.leakage_bound = GenErrorBound(n, eta, leakage_nats).value;
  cmp.reference_bound = MiGenBound(mutual_info_nats, n, eta).value;
  cmp.condition = "2 exp(L - 2 n eta^2) < (I + log 2)/(2 n eta^2 - log 2)";
  cmp.condition_holds = cmp.leakage_bound < cmp.reference_bound;
  cmp.inputs = {{"n", n},
                {"eta", eta},
                {"L_nats", leakage_nats},
                {"I_nats", mutual_info_nats}};
  return cmp;
}

}  // namespace leakage
