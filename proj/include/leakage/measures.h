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

#ifndef LEAKAGE_MEASURES_H_
#define LEAKAGE_MEASURES_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "leakage/distribution.h"

// Exact information measures over finite alphabets. All values are in
// nats. Divergence-type measures return +infinity when unbounded.
namespace leakage {

struct LeakageValue {
  double nats = 0.0;
  // Number of input symbols the maximum ranged over.
  std::size_t support_size = 0;
};

// ML(X -> Y) = log sum_y max_{x in support} P(y|x). Depends on the prior
// only through `support`. Throws EmptySupport if `support` is empty.
LeakageValue MaximalLeakage(const Channel& ch,
                            std::span<const std::size_t> support);
// Support taken from `prior`.
LeakageValue MaximalLeakage(const DiscreteDistribution& prior,
                            const Channel& ch);
// Full input support.
LeakageValue MaximalLeakage(const Channel& ch);
// P(y|x) recovered from the joint on the support of its input marginal.
LeakageValue MaximalLeakage(const JointDistribution& joint);

// Outputs y with P(y|x) > 0 for some x in `support`.
std::vector<std::size_t> ReachableOutputs(const Channel& ch,
                                          std::span<const std::size_t> support);

// A pair (x, z) of the conditioning alphabet, used for conditional leakage.
struct SectionIndex {
  std::size_t x = 0;
  std::size_t z = 0;
};

// ML(X -> Y | Z) = log max_z sum_y max_{x : (x, z) in support} P(y|x, z).
// `ch` maps the pair alphabet to Y, with input index x * z_count + z.
LeakageValue ConditionalMaximalLeakage(const Channel& ch, std::size_t z_count,
                                       std::span<const SectionIndex> support);

// I(X; Y) with the convention 0 log(0/q) = 0.
double MutualInformation(const JointDistribution& joint);

// D_inf(p || q) = log max_{i : p_i > 0} p_i / q_i.
double RenyiInfDivergence(std::span<const double> p, std::span<const double> q);
double RenyiInfDivergence(const DiscreteDistribution& p,
                          const DiscreteDistribution& q);

// D_inf^delta(p || q) = log max_{O : p(O) > delta} (p(O) - delta) / q(O).
//
// The maximizing set is always a superlevel set of the ratio p_i / q_i, so
// outcomes are sorted by ratio (q_i = 0 < p_i first) and every feasible
// prefix is evaluated. Throws NoFeasibleSet when no set has p(O) > delta.
double ApproxMaxDivergence(std::span<const double> p, std::span<const double> q,
                           double delta);
double ApproxMaxDivergence(const DiscreteDistribution& p,
                           const DiscreteDistribution& q, double delta);

// I_inf(X; Y) = D_inf(P_XY || P_X P_Y).
double MaxInformation(const JointDistribution& joint);

// I_inf^beta(X; Y) = D_inf^beta(P_XY || P_X P_Y). Requires 0 < beta < 1
// (BetaOutOfRange otherwise); beta = 0 is MaxInformation.
double ApproxMaxInformation(const JointDistribution& joint, double beta);

// Smallest eps such that the channel is eps-differentially private: the
// max over Hamming neighbors (s, s') and outputs y of log P(y|s)/P(y|s').
// Outputs impossible under both datasets are skipped. The channel input
// must be a flattened product alphabet (InputNotProduct otherwise).
double EmpiricalDp(const Channel& ch);

}  // namespace leakage

#endif  // LEAKAGE_MEASURES_H_
