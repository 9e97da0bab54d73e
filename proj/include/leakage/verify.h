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

#ifndef LEAKAGE_VERIFY_H_
#define LEAKAGE_VERIFY_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "leakage/distribution.h"
#include "leakage/serialization.h"

namespace leakage {

// Randomized property suites over seeded random instances.

// Random objects for property sweeps. All draws go through one
// std::mt19937_64 so instances are reproducible from their seed.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double Uniform();
  // Uniform integer in [lo, hi].
  int Int(int lo, int hi);
  bool Coin(double p) { return Uniform() < p; }

  // Dirichlet(1) weights; each entry is zeroed with probability
  // `zero_prob`, keeping at least one positive entry.
  std::vector<double> Simplex(std::size_t size, double zero_prob);

  DiscreteDistribution Distribution(const Alphabet& alphabet, double zero_prob);
  // Mixes dense, sparse, deterministic and constant-row channels.
  Channel RandomChannel(const Alphabet& input, const Alphabet& output);
  EventMask RandomEvent(const Alphabet& input, const Alphabet& output);

 private:
  std::mt19937_64 engine_;
};

// D_inf^delta(p || q) by enumerating every nonempty subset of outcomes.
// Exponential; used only to cross-check ApproxMaxDivergence. Sizes above 20
// are rejected.
double ApproxMaxDivergenceBySubsets(std::span<const double> p,
                                    std::span<const double> q, double delta);

struct CheckResult {
  std::string name;
  std::int64_t instances = 0;
  std::int64_t violations = 0;
  // Smallest bound minus value over all instances; a check fails when this
  // drops below minus its tolerance.
  double worst_margin = 0.0;
  // The first violating instance.
  std::optional<io::Json> offending;
};

struct VerifyReport {
  std::string suite;
  std::int64_t instances = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass = false;
};

// Suites: "soundness", "composition", "maxinfo", "all".
std::vector<std::string> VerifySuites();

// Throws InvalidArgument for an unknown suite or instances < 1.
VerifyReport RunVerify(const std::string& suite, std::int64_t instances,
                       std::uint64_t seed, int workers);

io::Json ToJson(const VerifyReport& report);

}  // namespace leakage

#endif  // LEAKAGE_VERIFY_H_
