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
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "leakage/error.h"
#include "leakage/measures.h"
#include "leakage/serialization.h"
#include "leakage/verify.h"

namespace leakage {
namespace {

TEST(VerifyTest, SuitesListed) {
  const std::vector<std::string> suites = VerifySuites();
  EXPECT_EQ(suites, (std::vector<std::string>{"soundness", "composition", "maxinfo", "all"}));
}

TEST(VerifyTest, AllSuitesPass) {
  for (const std::string& suite : VerifySuites()) {
    const VerifyReport r = RunVerify(suite, 2000, 11, 0);
    EXPECT_TRUE(r.pass) << io::Dump(ToJson(r));
    EXPECT_FALSE(r.checks.empty());
    for (const CheckResult& c : r.checks) {
      EXPECT_EQ(c.instances, 2000) << c.name;
      EXPECT_EQ(c.violations, 0) << c.name;
      EXPECT_FALSE(c.offending.has_value()) << c.name;
      EXPECT_EQ(c.name.find(suite == "all" ? "" : suite + "/"), 0u) << c.name;
    }
  }
  EXPECT_EQ(RunVerify("all", 10, 1, 1).checks.size(), 16u);
}

TEST(VerifyTest, DeterministicAcrossWorkers) {
  const std::string one = io::Dump(ToJson(RunVerify("all", 500, 5, 1)));
  EXPECT_EQ(io::Dump(ToJson(RunVerify("all", 500, 5, 4))), one);
  EXPECT_EQ(io::Dump(ToJson(RunVerify("all", 500, 5, 7))), one);
  EXPECT_NE(io::Dump(ToJson(RunVerify("all", 500, 6, 1))), one);
}

TEST(VerifyTest, JsonShape) {
  const io::Json doc = ToJson(RunVerify("maxinfo", 20, 3, 1));
  EXPECT_EQ(doc["suite"], "maxinfo");
  EXPECT_EQ(doc["instances"], 20);
  EXPECT_EQ(doc["seed"], 3);
  EXPECT_TRUE(doc["pass"].get<bool>());
  for (const auto& c : doc["checks"]) {
    EXPECT_TRUE(c.contains("name"));
    EXPECT_TRUE(c.contains("violations"));
    EXPECT_TRUE(c.contains("worst_margin"));
  }
}

TEST(VerifyTest, RejectsBadArguments) {
  try {
    RunVerify("nonsense", 10, 1, 1);
    FAIL();
  } catch (const LeakageError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(RunVerify("all", 0, 1, 1), LeakageError);
}

TEST(InstanceRngTest, SimplexIsNormalizedAndReproducible) {
  InstanceRng a(42);
  InstanceRng b(42);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> w = a.Simplex(6, 0.5);
    EXPECT_EQ(w, b.Simplex(6, 0.5));
    double total = 0.0;
    int positive = 0;
    for (double v : w) {
      EXPECT_GE(v, 0.0);
      total += v;
      positive += v > 0.0 ? 1 : 0;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_GE(positive, 1);
  }
}

TEST(SubsetDivergenceTest, AgreesWithPrefixScan) {
  InstanceRng rng(8);
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = static_cast<std::size_t>(rng.Int(1, 8));
    const std::vector<double> p = rng.Simplex(k, 0.2);
    const std::vector<double> q = rng.Simplex(k, 0.3);
    for (double delta : {0.0, 0.05, 0.2, 0.5}) {
      const double fast = ApproxMaxDivergence(p, q, delta);
      const double slow = ApproxMaxDivergenceBySubsets(p, q, delta);
      if (std::isinf(slow)) {
        EXPECT_TRUE(std::isinf(fast));
      } else {
        EXPECT_NEAR(fast, slow, 1e-10) << i << " " << delta;
      }
    }
    const double renyi = RenyiInfDivergence(p, q);
    const double slow0 = ApproxMaxDivergenceBySubsets(p, q, 0.0);
    if (std::isinf(renyi)) {
      EXPECT_TRUE(std::isinf(slow0));
    } else {
      EXPECT_NEAR(slow0, renyi, 1e-10);
    }
  }
}

}  // namespace
}  // namespace leakage
