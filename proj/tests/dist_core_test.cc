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

#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "leakage/alphabet.h"
#include "leakage/distribution.h"
#include "leakage/error.h"
#include "leakage/serialization.h"
#include "test_util.h"

namespace leakage {
namespace {

using ::leakage::testing::MatMul;
using ::leakage::testing::Matrix;
using ::leakage::testing::Rows;
using ::leakage::testing::TestRng;

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const LeakageError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a LeakageError";
  return ErrorCode::kInvalidArgument;
}

TEST(AlphabetTest, RejectsEmptyAndDuplicateLabels) {
  EXPECT_EQ(CodeOf([] { Alphabet(std::vector<std::string>{}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Alphabet({"a", "b", "a"}); }), ErrorCode::kInvalidArgument);
}

TEST(AlphabetTest, IndexLabelBijection) {
  const Alphabet a({"z", "b", "m"});
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.IndexOf(a.label(i)), i);
  }
  EXPECT_FALSE(a.IndexOf("q").has_value());
}

TEST(ValidateDistributionTest, Examples) {
  EXPECT_NO_THROW(ValidateDistribution(std::vector<double>{0.5, 0.5}));
  try {
    ValidateDistribution(std::vector<double>{0.5, 0.6});
    FAIL();
  } catch (const NormalizationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotNormalized);
    EXPECT_NEAR(e.residual(), 0.1, 1e-15);
  }
  EXPECT_EQ(CodeOf([] { ValidateDistribution(std::vector<double>{1.0, -1e-12}); }),
            ErrorCode::kNegativeMass);
  EXPECT_EQ(CodeOf([] { ValidateDistribution(std::vector<double>{0.0, 0.0}); }),
            ErrorCode::kEmptySupport);
}

TEST(ValidateDistributionTest, NegativeMassTakesPrecedence) {
  EXPECT_EQ(CodeOf([] { ValidateDistribution(std::vector<double>{0.7, -0.2}); }),
            ErrorCode::kNegativeMass);
}

TEST(ValidateDistributionTest, ToleranceIsOneInABillion) {
  EXPECT_NO_THROW(ValidateDistribution(std::vector<double>{0.5, 0.5 + 5e-10}));
  EXPECT_EQ(CodeOf([] { ValidateDistribution(std::vector<double>{0.5, 0.5 + 5e-9}); }),
            ErrorCode::kNotNormalized);
}

TEST(ChannelTest, RejectsNonStochasticRows) {
  EXPECT_EQ(CodeOf([] {
              Channel(Alphabet::Indexed(2), Alphabet::Indexed(2),
                      Matrix{{0.5, 0.5}, {0.9, 0.2}});
            }),
            ErrorCode::kNotNormalized);
}

TEST(JointFromTest, IdentityChannel) {
  const auto prior = DiscreteDistribution::Uniform(Alphabet::Indexed(2));
  const JointDistribution j = JointFrom(prior, Channel::Identity(Alphabet::Indexed(2)));
  EXPECT_EQ(j.at(0, 0), 0.5);
  EXPECT_EQ(j.at(0, 1), 0.0);
  EXPECT_EQ(j.at(1, 0), 0.0);
  EXPECT_EQ(j.at(1, 1), 0.5);
}

TEST(JointFromTest, DegeneratePriorZeroesRow) {
  TestRng rng(3);
  const Channel ch = rng.RandomChannel(2, 3);
  const JointDistribution j =
      JointFrom(DiscreteDistribution(Alphabet::Indexed(2), {1.0, 0.0}), ch);
  for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(j.at(1, y), 0.0);
}

TEST(JointFromTest, BinaryErasure) {
  const JointDistribution j =
      JointFrom(DiscreteDistribution::Bernoulli(0.5), BinaryErasureChannel(0.5));
  const Matrix expected = {{0.25, 0, 0.25}, {0, 0.25, 0.25}};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 3; ++y) EXPECT_DOUBLE_EQ(j.at(x, y), expected[x][y]);
  }
}

TEST(JointFromTest, AlphabetMismatch) {
  EXPECT_EQ(CodeOf([] {
              JointFrom(DiscreteDistribution::Uniform(Alphabet::Indexed(3)),
                        Channel::Identity(Alphabet::Indexed(2)));
            }),
            ErrorCode::kAlphabetMismatch);
}

TEST(JointFromTest, MarginalRecoversPrior) {
  TestRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nx = static_cast<std::size_t>(rng.Int(1, 8));
    const std::size_t ny = static_cast<std::size_t>(rng.Int(1, 8));
    const DiscreteDistribution prior = rng.RandomDistribution(nx, 0.3);
    const JointDistribution j = JointFrom(prior, rng.RandomChannel(nx, ny, 0.3));
    const std::vector<double> marginal = j.InputMarginal();
    for (std::size_t x = 0; x < nx; ++x) EXPECT_NEAR(marginal[x], prior[x], 1e-12);
  }
}

TEST(ComposeChannelsTest, IdentityIsNeutral) {
  TestRng rng(5);
  const Channel a = rng.RandomChannel(3, 4);
  const Channel left = ComposeChannels(Channel::Identity(a.input()), a);
  const Channel right = ComposeChannels(a, Channel::Identity(a.output()));
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 4; ++y) {
      EXPECT_DOUBLE_EQ(left.at(x, y), a.at(x, y));
      EXPECT_DOUBLE_EQ(right.at(x, y), a.at(x, y));
    }
  }
}

TEST(ComposeChannelsTest, ErasureThenMerge) {
  const Channel bec = BinaryErasureChannel(0.5);
  const std::vector<std::size_t> map = {0, 1, 0};
  const Channel merge = Channel::Deterministic(bec.output(), Alphabet::Indexed(2), map);
  const Channel c = ComposeChannels(bec, merge);
  const Matrix oracle = MatMul(Rows(bec), Rows(merge));
  const Matrix expected = {{1, 0}, {0.5, 0.5}};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      EXPECT_DOUBLE_EQ(c.at(x, y), expected[x][y]);
      EXPECT_DOUBLE_EQ(c.at(x, y), oracle[x][y]);
    }
  }
}

TEST(ComposeChannelsTest, Mismatch) {
  EXPECT_EQ(CodeOf([] {
              ComposeChannels(Channel::Identity(Alphabet::Indexed(2)),
                              Channel::Identity(Alphabet::Indexed(3)));
            }),
            ErrorCode::kAlphabetMismatch);
}

TEST(ComposeChannelsTest, AssociativeOnRandomTriples) {
  TestRng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = [&] { return static_cast<std::size_t>(rng.Int(1, 6)); };
    const std::size_t n0 = s(), n1 = s(), n2 = s(), n3 = s();
    const Channel a = rng.RandomChannel(n0, n1, 0.2);
    const Channel b = rng.RandomChannel(n1, n2, 0.2);
    const Channel c = rng.RandomChannel(n2, n3, 0.2);
    const Channel left = ComposeChannels(ComposeChannels(a, b), c);
    const Channel right = ComposeChannels(a, ComposeChannels(b, c));
    for (std::size_t i = 0; i < left.row_major().size(); ++i) {
      EXPECT_NEAR(left.row_major()[i], right.row_major()[i], 1e-12);
    }
  }
}

TEST(IidPriorTest, Examples) {
  const DiscreteDistribution u = IidPrior(DiscreteDistribution::Bernoulli(0.5), 2);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(u[i], 0.25);

  const DiscreteDistribution point = IidPrior(DiscreteDistribution::Bernoulli(1.0), 3);
  EXPECT_EQ(point.Support(), std::vector<std::size_t>{7});
  EXPECT_EQ(point.alphabet().label(7), "1,1,1");

  const DiscreteDistribution b = IidPrior(DiscreteDistribution::Bernoulli(0.2), 2);
  const std::vector<double> expected = {0.8 * 0.8, 0.8 * 0.2, 0.2 * 0.8, 0.2 * 0.2};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(b[i], expected[i], 1e-15);
  EXPECT_NEAR(b[0], 0.64, 1e-15);
  EXPECT_NEAR(b[3], 0.04, 1e-15);
}

TEST(IidPriorTest, CapExceeded) {
  EXPECT_EQ(CodeOf([] {
              IidPrior(DiscreteDistribution::Uniform(Alphabet::Indexed(10)), 7, 1'000'000);
            }),
            ErrorCode::kCapExceeded);
  EXPECT_NO_THROW(
      IidPrior(DiscreteDistribution::Uniform(Alphabet::Indexed(10)), 6, 1'000'000));
}

TEST(FiberMaxProbTest, Examples) {
  const Alphabet in = Alphabet::Indexed(3);
  const Alphabet out = Alphabet::Indexed(2);
  const DiscreteDistribution prior(in, {0.2, 0.3, 0.5});
  EXPECT_DOUBLE_EQ(FiberMaxProb(EventMask::Full(in, out), prior), 1.0);
  EXPECT_EQ(FiberMaxProb(EventMask::Empty(in, out), prior), 0.0);
  const EventMask e(in, out, std::vector<std::vector<bool>>{{true, false},
                                                            {true, true},
                                                            {false, true}});
  EXPECT_DOUBLE_EQ(FiberMaxProb(e, prior), 0.8);
  EXPECT_EQ(e.Fiber(0), (std::vector<std::size_t>{0, 1}));
}

TEST(ProductAlphabetTest, LexicographicOrder) {
  const ProductAlphabet p(Alphabet({"a", "b", "c"}), 2, 100);
  EXPECT_EQ(p.size(), 9u);
  EXPECT_EQ(p.Decode(5), (std::vector<std::size_t>{1, 2}));
  const std::vector<std::size_t> digits = {2, 0};
  EXPECT_EQ(p.Encode(digits), 6u);
  EXPECT_EQ(p.Flatten().label(5), "b,c");
}

TEST(ProductAlphabetTest, NeighborsSymmetricIrreflexiveExhaustive) {
  for (std::size_t base = 1; base <= 3; ++base) {
    for (int n = 1; n <= 4; ++n) {
      const ProductAlphabet p(Alphabet::Indexed(base), n, 1'000'000);
      std::vector<std::set<std::size_t>> adj(p.size());
      for (std::size_t s = 0; s < p.size(); ++s) {
        const std::vector<std::size_t> nb = p.Neighbors(s);
        EXPECT_EQ(nb.size(), static_cast<std::size_t>(n) * (base - 1));
        adj[s].insert(nb.begin(), nb.end());
        EXPECT_EQ(adj[s].size(), nb.size());
        EXPECT_EQ(adj[s].count(s), 0u);
        // Hamming distance exactly one.
        for (std::size_t t : nb) {
          const auto a = p.Decode(s);
          const auto b = p.Decode(t);
          int diff = 0;
          for (int i = 0; i < n; ++i) diff += a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)];
          EXPECT_EQ(diff, 1);
        }
      }
      for (std::size_t s = 0; s < p.size(); ++s) {
        for (std::size_t t : adj[s]) EXPECT_EQ(adj[t].count(s), 1u);
      }
    }
  }
}

TEST(SerializationTest, RoundTripsBitExactly) {
  TestRng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t nx = static_cast<std::size_t>(rng.Int(1, 6));
    const std::size_t ny = static_cast<std::size_t>(rng.Int(1, 6));
    const DiscreteDistribution d = rng.RandomDistribution(nx, 0.3);
    const Channel ch = rng.RandomChannel(nx, ny, 0.3);
    const JointDistribution j = JointFrom(d, ch);
    std::vector<bool> mask(nx * ny);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.Uniform() < 0.5;
    const EventMask e(d.alphabet(), ch.output(), mask);

    const auto reparse = [](const io::Json& doc) { return io::ParseJson(io::Dump(doc)); };
    const DiscreteDistribution d2 = io::DistributionFromJson(reparse(io::ToJson(d)));
    const Channel ch2 = io::ChannelFromJson(reparse(io::ToJson(ch)));
    const JointDistribution j2 = io::JointFromJson(reparse(io::ToJson(j)));
    const EventMask e2 = io::EventFromJson(reparse(io::ToJson(e)));
    EXPECT_TRUE(d2.alphabet() == d.alphabet());
    EXPECT_TRUE(std::ranges::equal(d2.probs(), d.probs()));
    EXPECT_TRUE(std::ranges::equal(ch2.row_major(), ch.row_major()));
    EXPECT_TRUE(std::ranges::equal(j2.row_major(), j.row_major()));
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) EXPECT_EQ(e2.contains(x, y), e.contains(x, y));
    }
  }
}

TEST(SerializationTest, ProductStructureSurvives) {
  const DiscreteDistribution prior = IidPrior(DiscreteDistribution::Bernoulli(0.3), 3);
  const Channel ch = Channel::Identity(prior.alphabet());
  const Channel back = io::ChannelFromJson(io::ParseJson(io::Dump(io::ToJson(ch))));
  ASSERT_NE(back.input().product(), nullptr);
  EXPECT_EQ(back.input().product()->length(), 3);
  const DiscreteDistribution p2 =
      io::DistributionFromJson(io::ParseJson(io::Dump(io::ToJson(prior))));
  ASSERT_NE(p2.alphabet().product(), nullptr);
}

TEST(SerializationTest, FieldNames) {
  const io::Json doc = io::ToJson(BinaryErasureChannel(0.25));
  EXPECT_TRUE(doc.contains("input_labels"));
  EXPECT_TRUE(doc.contains("output_labels"));
  EXPECT_TRUE(doc.contains("rows"));
  const io::Json d = io::ToJson(DiscreteDistribution::Bernoulli(0.25));
  EXPECT_TRUE(d.contains("labels"));
  EXPECT_TRUE(d.contains("probs"));
  EXPECT_NE(io::Dump(io::Json{{"x", 0.1}}).find("0.10000000000000001"), std::string::npos);
}

TEST(SerializationTest, MalformedInputIsParseError) {
  EXPECT_EQ(CodeOf([] { io::ParseJson("{"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { io::DistributionFromJson(io::ParseJson(R"({"labels":["a"]})")); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] {
              io::DistributionFromJson(
                  io::ParseJson(R"({"labels":["a","b"],"probs":[0.5,0.6]})"));
            }),
            ErrorCode::kNotNormalized);
}

}  // namespace
}  // namespace leakage
