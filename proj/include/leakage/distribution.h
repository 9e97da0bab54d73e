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

#ifndef LEAKAGE_DISTRIBUTION_H_
#define LEAKAGE_DISTRIBUTION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "leakage/alphabet.h"

namespace leakage {

// Tolerance for normalization of user-supplied probabilities.
inline constexpr double kInputTolerance = 1e-9;
// Tolerance for identities that hold exactly in real arithmetic.
inline constexpr double kIdentityTolerance = 1e-12;

// Throws NegativeMass, EmptySupport or NotNormalized (in that order of
// precedence) if `probs` is not a probability vector.
void ValidateDistribution(std::span<const double> probs);

// A probability mass function over a finite alphabet. Zero-probability
// symbols stay in the alphabet; the support is computed on demand.
class DiscreteDistribution {
 public:
  DiscreteDistribution(Alphabet alphabet, std::vector<double> probs);

  static DiscreteDistribution Uniform(Alphabet alphabet);
  static DiscreteDistribution PointMass(Alphabet alphabet, std::size_t index);
  // Over {"0","1"} with P(1) = p.
  static DiscreteDistribution Bernoulli(double p);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

  // Indices with probability strictly greater than zero.
  std::vector<std::size_t> Support() const;

 private:
  Alphabet alphabet_;
  std::vector<double> probs_;
};

// A conditional distribution P(y|x) stored as a row-stochastic matrix,
// one row per input symbol.
class Channel {
 public:
  Channel(Alphabet input, Alphabet output, std::vector<double> row_major);
  Channel(Alphabet input, Alphabet output,
          const std::vector<std::vector<double>>& rows);

  static Channel Identity(Alphabet alphabet);
  // Row x is one-hot at map[x].
  static Channel Deterministic(Alphabet input, Alphabet output,
                               std::span<const std::size_t> map);
  // Every row equals `output`.
  static Channel Constant(Alphabet input, const DiscreteDistribution& output);

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  std::size_t input_size() const { return input_.size(); }
  std::size_t output_size() const { return output_.size(); }

  double at(std::size_t x, std::size_t y) const {
    return rows_[x * output_size() + y];
  }
  std::span<const double> row(std::size_t x) const {
    return {rows_.data() + x * output_size(), output_size()};
  }
  std::span<const double> row_major() const { return rows_; }

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<double> rows_;
};

// A distribution on input x output pairs.
class JointDistribution {
 public:
  JointDistribution(Alphabet input, Alphabet output,
                    std::vector<double> row_major);
  JointDistribution(Alphabet input, Alphabet output,
                    const std::vector<std::vector<double>>& mass);

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  std::size_t input_size() const { return input_.size(); }
  std::size_t output_size() const { return output_.size(); }

  double at(std::size_t x, std::size_t y) const {
    return mass_[x * output_size() + y];
  }
  std::span<const double> row(std::size_t x) const {
    return {mass_.data() + x * output_size(), output_size()};
  }
  // The joint as a single vector indexed by x * |output| + y.
  std::span<const double> row_major() const { return mass_; }

  std::vector<double> InputMarginal() const;
  std::vector<double> OutputMarginal() const;
  // Outer product of the two marginals, same layout as row_major().
  std::vector<double> ProductOfMarginals() const;

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<double> mass_;
};

// A subset E of input x output pairs; fiber(y) = {x : (x, y) in E}.
class EventMask {
 public:
  EventMask(Alphabet input, Alphabet output, std::vector<bool> row_major);
  EventMask(Alphabet input, Alphabet output,
            const std::vector<std::vector<bool>>& mask);

  static EventMask Full(Alphabet input, Alphabet output);
  static EventMask Empty(Alphabet input, Alphabet output);
  // (x, y) in E iff x == y; requires equal sizes.
  static EventMask Diagonal(Alphabet input, Alphabet output);

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  std::size_t input_size() const { return input_.size(); }
  std::size_t output_size() const { return output_.size(); }

  bool contains(std::size_t x, std::size_t y) const {
    return mask_[x * output_size() + y];
  }
  std::vector<std::size_t> Fiber(std::size_t y) const;

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<bool> mask_;
};

// mass(x, y) = prior(x) * ch(y|x).
JointDistribution JointFrom(const DiscreteDistribution& prior,
                            const Channel& ch);

// The channel X -> Z of running `a` and feeding its output to `b`.
Channel ComposeChannels(const Channel& a, const Channel& b);

// The distribution of n i.i.d. draws of `p`, over the flattened product
// alphabet. Throws CapExceeded if |p|^n exceeds `cap`.
DiscreteDistribution IidPrior(const DiscreteDistribution& p, int n,
                              std::size_t cap);
DiscreteDistribution IidPrior(const DiscreteDistribution& p, int n);

// max over y of prior(fiber(y)).
double FiberMaxProb(const EventMask& event, const DiscreteDistribution& prior);

// Input {"0","1"}, output {"0","1","e"}; erases with probability alpha.
Channel BinaryErasureChannel(double alpha);

// k-ary randomized response: keeps the input with probability
// e^eps / (e^eps + k - 1), otherwise reports one of the other symbols.
Channel RandomizedResponse(double epsilon, std::size_t k = 2);

}  // namespace leakage

#endif  // LEAKAGE_DISTRIBUTION_H_
