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

#include "leakage/measures.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "leakage/error.h"

namespace leakage {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The true value is nonnegative; rounding in the column sums can push the
// logarithm a few ulps below zero.
double ClampedLog(double sum) { return std::max(0.0, std::log(sum)); }

void RequireSameSize(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       std::string(what) + ": sizes " + std::to_string(a) +
                           " and " + std::to_string(b) + " differ");
  }
}

}  // namespace

LeakageValue MaximalLeakage(const Channel& ch,
                            std::span<const std::size_t> support) {
  if (support.empty()) {
    throw LeakageError(ErrorCode::kEmptySupport,
                       "maximal leakage needs a nonempty input support");
  }
  const std::span<const double> first = ch.row(support[0]);
  const bool constant = std::all_of(support.begin(), support.end(), [&](std::size_t x) {
    return std::ranges::equal(ch.row(x), first);
  });
  if (constant) return {0.0, support.size()};
  double sum = 0.0;
  for (std::size_t y = 0; y < ch.output_size(); ++y) {
    double column_max = 0.0;
    for (std::size_t x : support) column_max = std::max(column_max, ch.at(x, y));
    sum += column_max;
  }
  return {ClampedLog(sum), support.size()};
}

LeakageValue MaximalLeakage(const DiscreteDistribution& prior,
                            const Channel& ch) {
  if (!(prior.alphabet() == ch.input())) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "prior alphabet differs from channel input");
  }
  const std::vector<std::size_t> support = prior.Support();
  return MaximalLeakage(ch, support);
}

LeakageValue MaximalLeakage(const Channel& ch) {
  std::vector<std::size_t> support(ch.input_size());
  std::iota(support.begin(), support.end(), std::size_t{0});
  return MaximalLeakage(ch, support);
}

LeakageValue MaximalLeakage(const JointDistribution& joint) {
  const std::vector<double> px = joint.InputMarginal();
  double sum = 0.0;
  std::size_t support_size = 0;
  for (double p : px) support_size += p > 0.0 ? 1 : 0;
  for (std::size_t y = 0; y < joint.output_size(); ++y) {
    double column_max = 0.0;
    for (std::size_t x = 0; x < joint.input_size(); ++x) {
      if (px[x] > 0.0) column_max = std::max(column_max, joint.at(x, y) / px[x]);
    }
    sum += column_max;
  }
  return {ClampedLog(sum), support_size};
}

std::vector<std::size_t> ReachableOutputs(
    const Channel& ch, std::span<const std::size_t> support) {
  std::vector<std::size_t> reachable;
  for (std::size_t y = 0; y < ch.output_size(); ++y) {
    const bool hit = std::any_of(support.begin(), support.end(),
                                 [&](std::size_t x) { return ch.at(x, y) > 0.0; });
    if (hit) reachable.push_back(y);
  }
  return reachable;
}

LeakageValue ConditionalMaximalLeakage(const Channel& ch, std::size_t z_count,
                                       std::span<const SectionIndex> support) {
  if (support.empty()) {
    throw LeakageError(ErrorCode::kEmptySupport,
                       "conditional leakage needs a nonempty support");
  }
  if (z_count == 0 || ch.input_size() % z_count != 0) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "channel input is not an (x, z) pair alphabet");
  }
  const std::size_t x_count = ch.input_size() / z_count;
  std::vector<std::vector<std::size_t>> sections(z_count);
  for (const SectionIndex& s : support) {
    if (s.x >= x_count || s.z >= z_count) {
      throw LeakageError(ErrorCode::kInvalidArgument,
                         "support pair out of range");
    }
    sections[s.z].push_back(s.x * z_count + s.z);
  }
  double best = 0.0;
  std::size_t widest = 0;
  for (const auto& section : sections) {
    if (section.empty()) continue;
    widest = std::max(widest, section.size());
    double sum = 0.0;
    for (std::size_t y = 0; y < ch.output_size(); ++y) {
      double column_max = 0.0;
      for (std::size_t row : section) {
        column_max = std::max(column_max, ch.at(row, y));
      }
      sum += column_max;
    }
    best = std::max(best, sum);
  }
  return {ClampedLog(best), widest};
}

double MutualInformation(const JointDistribution& joint) {
  const std::vector<double> px = joint.InputMarginal();
  const std::vector<double> py = joint.OutputMarginal();
  double total = 0.0;
  for (std::size_t x = 0; x < joint.input_size(); ++x) {
    for (std::size_t y = 0; y < joint.output_size(); ++y) {
      const double m = joint.at(x, y);
      if (m > 0.0) total += m * std::log(m / (px[x] * py[y]));
    }
  }
  return std::max(0.0, total);
}

double RenyiInfDivergence(std::span<const double> p,
                          std::span<const double> q) {
  RequireSameSize(p.size(), q.size(), "max-divergence");
  double best = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    best = std::max(best, p[i] / q[i]);
  }
  return std::log(best);
}

double RenyiInfDivergence(const DiscreteDistribution& p,
                          const DiscreteDistribution& q) {
  if (!(p.alphabet() == q.alphabet())) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "max-divergence of distributions on different alphabets");
  }
  return RenyiInfDivergence(p.probs(), q.probs());
}

double ApproxMaxDivergence(std::span<const double> p, std::span<const double> q,
                           double delta) {
  RequireSameSize(p.size(), q.size(), "approximate max-divergence");
  if (!(delta >= 0.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument, "delta must be >= 0");
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) order.push_back(i);
  }
  // Descending ratio; p_i > 0 = q_i sorts first. Ties keep index order.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (q[b] <= 0.0) return false;
    if (q[a] <= 0.0) return true;
    return p[a] / q[a] > p[b] / q[b];
  });

  double p_mass = 0.0;
  double q_mass = 0.0;
  double best = -1.0;
  for (std::size_t i : order) {
    p_mass += p[i];
    q_mass += std::max(q[i], 0.0);
    if (p_mass <= delta) continue;
    if (q_mass <= 0.0) return kInf;
    best = std::max(best, (p_mass - delta) / q_mass);
  }
  if (best <= 0.0) {
    throw LeakageError(ErrorCode::kNoFeasibleSet,
                       "no event has probability above delta = " +
                           std::to_string(delta));
  }
  return std::log(best);
}

double ApproxMaxDivergence(const DiscreteDistribution& p,
                           const DiscreteDistribution& q, double delta) {
  if (!(p.alphabet() == q.alphabet())) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "approximate max-divergence on different alphabets");
  }
  return ApproxMaxDivergence(p.probs(), q.probs(), delta);
}

double MaxInformation(const JointDistribution& joint) {
  const std::vector<double> product = joint.ProductOfMarginals();
  return RenyiInfDivergence(joint.row_major(), product);
}

double ApproxMaxInformation(const JointDistribution& joint, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw LeakageError(ErrorCode::kBetaOutOfRange,
                       "beta must lie in (0, 1), got " + std::to_string(beta));
  }
  const std::vector<double> product = joint.ProductOfMarginals();
  return ApproxMaxDivergence(joint.row_major(), product, beta);
}

double EmpiricalDp(const Channel& ch) {
  const ProductAlphabet* product = ch.input().product();
  if (product == nullptr) {
    throw LeakageError(ErrorCode::kInputNotProduct,
                       "channel input is not a product (dataset) alphabet");
  }
  double worst_ratio = 1.0;
  for (std::size_t s = 0; s < ch.input_size(); ++s) {
    const auto row_s = ch.row(s);
    for (std::size_t t : product->Neighbors(s)) {
      const auto row_t = ch.row(t);
      for (std::size_t y = 0; y < ch.output_size(); ++y) {
        const double a = row_s[y];
        const double b = row_t[y];
        if (a == 0.0) continue;
        if (b == 0.0) return kInf;
        worst_ratio = std::max(worst_ratio, a / b);
      }
    }
  }
  return std::log(worst_ratio);
}

}  // namespace leakage
