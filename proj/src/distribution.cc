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

#include "leakage/distribution.h"

#include <cmath>
#include <string>
#include <utility>

#include "leakage/error.h"

namespace leakage {
namespace {

void ValidateMass(std::span<const double> values, const std::string& what) {
  bool any_positive = false;
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw LeakageError(ErrorCode::kNegativeMass,
                         what + " entry " + std::to_string(i) + " is " +
                             std::to_string(v));
    }
    any_positive = any_positive || v > 0.0;
    total += v;
  }
  if (!any_positive) {
    throw LeakageError(ErrorCode::kEmptySupport, what + " has no mass");
  }
  const double residual = total - 1.0;
  if (std::abs(residual) > kInputTolerance) {
    throw NormalizationError(residual, what + " sums to " +
                                           std::to_string(total) +
                                           " (residual " +
                                           std::to_string(residual) + ")");
  }
}

void CheckShape(std::size_t rows, std::size_t cols, std::size_t actual,
                const char* what) {
  if (rows * cols != actual) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       std::string(what) + " has " + std::to_string(actual) +
                           " entries, expected " + std::to_string(rows) +
                           "x" + std::to_string(cols));
  }
}

template <typename T>
std::vector<T> Flatten(const std::vector<std::vector<T>>& rows,
                       std::size_t cols, const char* what) {
  std::vector<T> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw LeakageError(ErrorCode::kInvalidArgument,
                         std::string(what) + " row has " +
                             std::to_string(r.size()) + " entries, expected " +
                             std::to_string(cols));
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

}  // namespace

void ValidateDistribution(std::span<const double> probs) {
  ValidateMass(probs, "distribution");
}

DiscreteDistribution::DiscreteDistribution(Alphabet alphabet,
                                           std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  if (probs_.size() != alphabet_.size()) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "distribution has " + std::to_string(probs_.size()) +
                           " probabilities for " +
                           std::to_string(alphabet_.size()) + " labels");
  }
  ValidateDistribution(probs_);
}

DiscreteDistribution DiscreteDistribution::Uniform(Alphabet alphabet) {
  const std::size_t k = alphabet.size();
  return DiscreteDistribution(std::move(alphabet),
                              std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

DiscreteDistribution DiscreteDistribution::PointMass(Alphabet alphabet,
                                                     std::size_t index) {
  std::vector<double> probs(alphabet.size(), 0.0);
  probs.at(index) = 1.0;
  return DiscreteDistribution(std::move(alphabet), std::move(probs));
}

DiscreteDistribution DiscreteDistribution::Bernoulli(double p) {
  return DiscreteDistribution(Alphabet({"0", "1"}), {1.0 - p, p});
}

std::vector<std::size_t> DiscreteDistribution::Support() const {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] > 0.0) support.push_back(i);
  }
  return support;
}

Channel::Channel(Alphabet input, Alphabet output, std::vector<double> row_major)
    : input_(std::move(input)),
      output_(std::move(output)),
      rows_(std::move(row_major)) {
  CheckShape(input_size(), output_size(), rows_.size(), "channel");
  for (std::size_t x = 0; x < input_size(); ++x) {
    ValidateMass(row(x), "channel row " + std::to_string(x));
  }
}

Channel::Channel(Alphabet input, Alphabet output,
                 const std::vector<std::vector<double>>& rows)
    : Channel(input, output, Flatten(rows, output.size(), "channel")) {
  CheckShape(input_size(), 1, rows.size(), "channel rows");
}

Channel Channel::Identity(Alphabet alphabet) {
  const std::size_t k = alphabet.size();
  std::vector<double> rows(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) rows[i * k + i] = 1.0;
  return Channel(alphabet, alphabet, std::move(rows));
}

Channel Channel::Deterministic(Alphabet input, Alphabet output,
                               std::span<const std::size_t> map) {
  CheckShape(input.size(), 1, map.size(), "deterministic map");
  const std::size_t cols = output.size();
  std::vector<double> rows(input.size() * cols, 0.0);
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (map[x] >= cols) {
      throw LeakageError(ErrorCode::kInvalidArgument,
                         "deterministic map target out of range");
    }
    rows[x * cols + map[x]] = 1.0;
  }
  return Channel(std::move(input), std::move(output), std::move(rows));
}

Channel Channel::Constant(Alphabet input, const DiscreteDistribution& output) {
  std::vector<double> rows;
  rows.reserve(input.size() * output.size());
  for (std::size_t x = 0; x < input.size(); ++x) {
    rows.insert(rows.end(), output.probs().begin(), output.probs().end());
  }
  return Channel(std::move(input), output.alphabet(), std::move(rows));
}

JointDistribution::JointDistribution(Alphabet input, Alphabet output,
                                     std::vector<double> row_major)
    : input_(std::move(input)),
      output_(std::move(output)),
      mass_(std::move(row_major)) {
  CheckShape(input_size(), output_size(), mass_.size(), "joint");
  ValidateMass(mass_, "joint");
}

JointDistribution::JointDistribution(
    Alphabet input, Alphabet output,
    const std::vector<std::vector<double>>& mass)
    : JointDistribution(input, output, Flatten(mass, output.size(), "joint")) {
  CheckShape(input_size(), 1, mass.size(), "joint rows");
}

std::vector<double> JointDistribution::InputMarginal() const {
  std::vector<double> marginal(input_size(), 0.0);
  for (std::size_t x = 0; x < input_size(); ++x) {
    for (double m : row(x)) marginal[x] += m;
  }
  return marginal;
}

std::vector<double> JointDistribution::OutputMarginal() const {
  std::vector<double> marginal(output_size(), 0.0);
  for (std::size_t x = 0; x < input_size(); ++x) {
    for (std::size_t y = 0; y < output_size(); ++y) marginal[y] += at(x, y);
  }
  return marginal;
}

std::vector<double> JointDistribution::ProductOfMarginals() const {
  const std::vector<double> px = InputMarginal();
  const std::vector<double> py = OutputMarginal();
  std::vector<double> product;
  product.reserve(mass_.size());
  for (double a : px) {
    for (double b : py) product.push_back(a * b);
  }
  return product;
}

EventMask::EventMask(Alphabet input, Alphabet output,
                     std::vector<bool> row_major)
    : input_(std::move(input)),
      output_(std::move(output)),
      mask_(std::move(row_major)) {
  CheckShape(input_size(), output_size(), mask_.size(), "event mask");
}

EventMask::EventMask(Alphabet input, Alphabet output,
                     const std::vector<std::vector<bool>>& mask)
    : EventMask(input, output, Flatten(mask, output.size(), "event mask")) {
  CheckShape(input_size(), 1, mask.size(), "event mask rows");
}

EventMask EventMask::Full(Alphabet input, Alphabet output) {
  const std::size_t n = input.size() * output.size();
  return EventMask(std::move(input), std::move(output),
                   std::vector<bool>(n, true));
}

EventMask EventMask::Empty(Alphabet input, Alphabet output) {
  const std::size_t n = input.size() * output.size();
  return EventMask(std::move(input), std::move(output),
                   std::vector<bool>(n, false));
}

EventMask EventMask::Diagonal(Alphabet input, Alphabet output) {
  const std::size_t k = input.size();
  if (output.size() != k) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "diagonal event needs equally sized alphabets");
  }
  std::vector<bool> mask(k * k, false);
  for (std::size_t i = 0; i < k; ++i) mask[i * k + i] = true;
  return EventMask(std::move(input), std::move(output), std::move(mask));
}

std::vector<std::size_t> EventMask::Fiber(std::size_t y) const {
  std::vector<std::size_t> fiber;
  for (std::size_t x = 0; x < input_size(); ++x) {
    if (contains(x, y)) fiber.push_back(x);
  }
  return fiber;
}

JointDistribution JointFrom(const DiscreteDistribution& prior,
                            const Channel& ch) {
  if (!(prior.alphabet() == ch.input())) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "prior alphabet differs from channel input");
  }
  std::vector<double> mass;
  mass.reserve(ch.input_size() * ch.output_size());
  for (std::size_t x = 0; x < ch.input_size(); ++x) {
    for (double p : ch.row(x)) mass.push_back(prior[x] * p);
  }
  return JointDistribution(ch.input(), ch.output(), std::move(mass));
}

Channel ComposeChannels(const Channel& a, const Channel& b) {
  if (!(a.output() == b.input())) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "first channel output differs from second input");
  }
  const std::size_t nz = b.output_size();
  std::vector<double> rows(a.input_size() * nz, 0.0);
  for (std::size_t x = 0; x < a.input_size(); ++x) {
    double* out = rows.data() + x * nz;
    for (std::size_t y = 0; y < a.output_size(); ++y) {
      const double w = a.at(x, y);
      if (w == 0.0) continue;
      const auto brow = b.row(y);
      for (std::size_t z = 0; z < nz; ++z) out[z] += w * brow[z];
    }
  }
  return Channel(a.input(), b.output(), std::move(rows));
}

DiscreteDistribution IidPrior(const DiscreteDistribution& p, int n,
                              std::size_t cap) {
  const ProductAlphabet product(p.alphabet(), n, cap);
  std::vector<double> probs(product.size());
  std::vector<std::size_t> digits(static_cast<std::size_t>(n));
  for (std::size_t index = 0; index < product.size(); ++index) {
    product.Decode(index, digits);
    double prob = 1.0;
    for (std::size_t d : digits) prob *= p[d];
    probs[index] = prob;
  }
  return DiscreteDistribution(product.Flatten(), std::move(probs));
}

DiscreteDistribution IidPrior(const DiscreteDistribution& p, int n) {
  return IidPrior(p, n, EnumerationCap());
}

double FiberMaxProb(const EventMask& event, const DiscreteDistribution& prior) {
  if (!(event.input() == prior.alphabet())) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "prior alphabet differs from event input");
  }
  double best = 0.0;
  for (std::size_t y = 0; y < event.output_size(); ++y) {
    double mass = 0.0;
    for (std::size_t x = 0; x < event.input_size(); ++x) {
      if (event.contains(x, y)) mass += prior[x];
    }
    best = std::max(best, mass);
  }
  return best;
}

Channel BinaryErasureChannel(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "erasure probability must lie in [0, 1]");
  }
  return Channel(Alphabet({"0", "1"}), Alphabet({"0", "1", "e"}),
                 {{1.0 - alpha, 0.0, alpha}, {0.0, 1.0 - alpha, alpha}});
}

Channel RandomizedResponse(double epsilon, std::size_t k) {
  if (k < 2 || !(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "randomized response needs k >= 2 and finite eps >= 0");
  }
  const double e = std::exp(epsilon);
  const double keep = e / (e + static_cast<double>(k - 1));
  const double flip = 1.0 / (e + static_cast<double>(k - 1));
  std::vector<double> rows(k * k, flip);
  for (std::size_t i = 0; i < k; ++i) rows[i * k + i] = keep;
  return Channel(Alphabet::Indexed(k), Alphabet::Indexed(k), std::move(rows));
}

}  // namespace leakage
