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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "leakage/calculus.h"
#include "leakage/distribution.h"
#include "leakage/error.h"
#include "leakage/measures.h"
#include "leakage/serialization.h"
#include "test_util.h"

namespace leakage {
namespace {

using ::leakage::testing::LeakageOracle;
using ::leakage::testing::Matrix;
using ::leakage::testing::Rows;
using ::leakage::testing::TestRng;

TEST(LedgerTest, ExamplesAndProvenance) {
  EXPECT_DOUBLE_EQ(DpToLeakage(0.01, 100), 1.0);
  EXPECT_DOUBLE_EQ(CardinalityBound(10), std::log(10.0));
  const LeakageLedger two = LeakageLedger()
                                .Push(LedgerEntry::FromDeclared("a", 0.3))
                                .Push(LedgerEntry::FromDeclared("b", 0.7));
  EXPECT_DOUBLE_EQ(Compose(two), 1.0);
  EXPECT_EQ(LeakageLedger().Total(), 0.0);

  const LedgerEntry dp = LedgerEntry::FromDp("dp", 0.5, 4);
  EXPECT_EQ(ProvenanceKind(dp.provenance()), "dp-derived");
  EXPECT_DOUBLE_EQ(dp.bound_nats(), 2.0);
  EXPECT_EQ(ProvenanceKind(LedgerEntry::FromChannel("c", 0.1).provenance()),
            "computed-channel");
  EXPECT_EQ(ProvenanceKind(LedgerEntry::FromCardinality("k", 3).provenance()),
            "cardinality");
  EXPECT_EQ(ProvenanceKind(LedgerEntry::FromMaxInfo("m", 0.2).provenance()),
            "max-info-derived");
  EXPECT_DOUBLE_EQ(MaxInfoToLeakage(0.2), 0.2);
}

TEST(LedgerTest, PushLeavesOriginalUntouched) {
  const LeakageLedger a = LeakageLedger().Push(LedgerEntry::FromDeclared("a", 1.0));
  const LeakageLedger b = a.Push(LedgerEntry::FromDeclared("b", 2.0));
  EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(b.size(), 2u);
  EXPECT_DOUBLE_EQ(a.Total(), 1.0);
}

TEST(LedgerTest, TotalIsPermutationInvariant) {
  TestRng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LedgerEntry> entries;
    for (int i = 0; i < rng.Int(1, 10); ++i) {
      entries.push_back(LedgerEntry::FromDeclared("e", 5 * rng.Uniform()));
    }
    const double total = LeakageLedger(entries).Total();
    std::vector<std::size_t> perm(entries.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int round = 0; round < 5; ++round) {
      std::next_permutation(perm.begin(), perm.end());
      std::vector<LedgerEntry> shuffled;
      for (std::size_t i : perm) shuffled.push_back(entries[i]);
      EXPECT_NEAR(LeakageLedger(shuffled).Total(), total, 1e-12);
    }
  }
}

TEST(LedgerTest, Errors) {
  try {
    DpToLeakage(-0.1, 3);
    FAIL();
  } catch (const LeakageError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNegativeEpsilon);
  }
  EXPECT_THROW(CardinalityBound(0), LeakageError);
  for (double beta : {0.0, 1.0}) {
    try {
      LeakageToApproxMaxInfo(1.0, beta);
      FAIL();
    } catch (const LeakageError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBetaOutOfRange);
    }
  }
  EXPECT_DOUBLE_EQ(LeakageToApproxMaxInfo(1.0, 0.1), 1.0 + std::log(10.0));
}

TEST(LedgerTest, JsonRoundTripAndConsistencyCheck) {
  const LeakageLedger ledger = LeakageLedger()
                                   .Push(LedgerEntry::FromDp("dp", 0.01, 100))
                                   .Push(LedgerEntry::FromCardinality("card", 10))
                                   .Push(LedgerEntry::FromMaxInfo("mi", 0.25))
                                   .Push(LedgerEntry::FromChannel("ch", 0.125))
                                   .Push(LedgerEntry::FromDeclared("d", 0.5));
  const io::Json doc = io::ToJson(ledger);
  const LeakageLedger back = io::LedgerFromJson(io::ParseJson(io::Dump(doc)));
  ASSERT_EQ(back.size(), ledger.size());
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    EXPECT_EQ(back.entries()[i].label(), ledger.entries()[i].label());
    EXPECT_EQ(back.entries()[i].bound_nats(), ledger.entries()[i].bound_nats());
    EXPECT_EQ(ProvenanceKind(back.entries()[i].provenance()),
              ProvenanceKind(ledger.entries()[i].provenance()));
  }
  io::Json tampered = doc;
  tampered["entries"][0]["bound_nats"] = 0.5;
  EXPECT_THROW(io::LedgerFromJson(tampered), LeakageError);
}

// P((y1, y2) | x) = A(y1 | x) B(y2 | x, y1), written out by hand.
Matrix TwoStepOracle(const Channel& a, const Channel& b) {
  const std::size_t n1 = a.output_size();
  const std::size_t n2 = b.output_size();
  Matrix m(a.input_size(), std::vector<double>(n1 * n2, 0.0));
  for (std::size_t x = 0; x < a.input_size(); ++x) {
    for (std::size_t y1 = 0; y1 < n1; ++y1) {
      for (std::size_t y2 = 0; y2 < n2; ++y2) {
        m[x][y1 * n2 + y2] = a.at(x, y1) * b.at(x * n1 + y1, y2);
      }
    }
  }
  return m;
}

TEST(ComposeAdaptivelyTest, MatchesHandBuiltJointChannel) {
  TestRng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto nx = static_cast<std::size_t>(rng.Int(1, 5));
    const auto n1 = static_cast<std::size_t>(rng.Int(1, 4));
    const auto n2 = static_cast<std::size_t>(rng.Int(1, 4));
    const Channel a = rng.RandomChannel(nx, n1, 0.3);
    const Channel b(PairAlphabet(a.input(), a.output()), Alphabet::Indexed(n2),
                    rng.Stochastic(nx * n1, n2, 0.3));
    const std::vector<Channel> steps = {a, b};
    const Channel joint = ComposeAdaptively(steps);
    const Matrix oracle = TwoStepOracle(a, b);
    ASSERT_EQ(joint.output_size(), n1 * n2);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < n1 * n2; ++y) {
        EXPECT_NEAR(joint.at(x, y), oracle[x][y], 1e-15);
      }
    }
  }
}

TEST(ComposeAdaptivelyTest, TwoStepLeakageBoundedBySum) {
  TestRng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto nx = static_cast<std::size_t>(rng.Int(1, 5));
    const auto n1 = static_cast<std::size_t>(rng.Int(1, 4));
    const auto n2 = static_cast<std::size_t>(rng.Int(1, 4));
    const DiscreteDistribution prior = rng.RandomDistribution(nx, 0.3);
    const std::vector<std::size_t> support = prior.Support();
    const Channel a = rng.RandomChannel(nx, n1, 0.3);
    const Channel b(PairAlphabet(a.input(), a.output()), Alphabet::Indexed(n2),
                    rng.Stochastic(nx * n1, n2, 0.3));
    double k2 = 0.0;
    for (std::size_t y1 = 0; y1 < n1; ++y1) {
      std::vector<std::size_t> section;
      for (std::size_t x : support) section.push_back(x * n1 + y1);
      k2 = std::max(k2, LeakageOracle(Rows(b), section));
    }
    EXPECT_NEAR(StepLeakageBound(b, nx, support), k2, 1e-12);
    const double k1 = MaximalLeakage(a, support).nats;
    const double total = LeakageOracle(TwoStepOracle(a, b), support);
    EXPECT_LE(total, k1 + k2 + 1e-10);
    EXPECT_NEAR(MaximalLeakage(ComposeAdaptively(std::vector<Channel>{a, b}), support).nats,
                std::max(0.0, total), 1e-12);
  }
}

TEST(ComposeAdaptivelyTest, ThreeStepChainRule) {
  TestRng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto nx = static_cast<std::size_t>(rng.Int(1, 4));
    const DiscreteDistribution prior = rng.RandomDistribution(nx, 0.3);
    const std::vector<std::size_t> support = prior.Support();
    const Alphabet x = prior.alphabet();
    const Alphabet a1 = Alphabet::Indexed(static_cast<std::size_t>(rng.Int(1, 3)));
    const Alphabet a2 = Alphabet::Indexed(static_cast<std::size_t>(rng.Int(1, 3)));
    const Alphabet a3 = Alphabet::Indexed(static_cast<std::size_t>(rng.Int(1, 3)));
    const Channel s1(x, a1, rng.Stochastic(x.size(), a1.size(), 0.4));
    const Alphabet h2 = PairAlphabet(x, a1);
    const Channel s2(h2, a2, rng.Stochastic(h2.size(), a2.size(), 0.4));
    const Alphabet h3 = PairAlphabet(x, PairAlphabet(a1, a2));
    const Channel s3(h3, a3, rng.Stochastic(h3.size(), a3.size(), 0.4));
    const std::vector<Channel> steps = {s1, s2, s3};

    const double total = MaximalLeakage(ComposeAdaptively(steps), support).nats;
    const std::vector<double> terms = ChainRuleTerms(prior, steps);
    ASSERT_EQ(terms.size(), 3u);
    EXPECT_NEAR(terms[0], MaximalLeakage(s1, support).nats, 1e-12);
    const double chain = terms[0] + terms[1] + terms[2];
    EXPECT_LE(total, chain + 1e-10);
    const double ledger = MaximalLeakage(s1, support).nats +
                          StepLeakageBound(s2, nx, support) +
                          StepLeakageBound(s3, nx, support);
    EXPECT_LE(chain, ledger + 1e-10);
    EXPECT_LE(total, ledger + 1e-10);
  }
}

TEST(PostProcessingTest, NeverIncreasesLeakage) {
  TestRng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto nx = static_cast<std::size_t>(rng.Int(1, 6));
    const auto ny = static_cast<std::size_t>(rng.Int(1, 6));
    const auto nz = static_cast<std::size_t>(rng.Int(1, 6));
    const DiscreteDistribution prior = rng.RandomDistribution(nx, 0.3);
    const Channel a = rng.RandomChannel(nx, ny, 0.3);
    const Channel b = rng.RandomChannel(ny, nz, 0.3);
    EXPECT_LE(MaximalLeakage(prior, ComposeChannels(a, b)).nats,
              MaximalLeakage(prior, a).nats + 1e-12);
  }
}

TEST(ComposeAdaptivelyTest, RejectsMisshapenSteps) {
  const Channel a = Channel::Identity(Alphabet::Indexed(2));
  const Channel wrong = Channel::Identity(Alphabet::Indexed(3));
  EXPECT_THROW(ComposeAdaptively(std::vector<Channel>{a, wrong}), LeakageError);
  EXPECT_THROW(ComposeAdaptively(std::vector<Channel>{}), LeakageError);
}

}  // namespace
}  // namespace leakage
