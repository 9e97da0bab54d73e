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

#include "leakage/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "leakage/bounds.h"
#include "leakage/calculus.h"
#include "leakage/error.h"
#include "leakage/measures.h"
#include "leakage/simulator.h"

namespace leakage {
namespace {

constexpr double kSlack = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBetaGrid[] = {0.01, 0.05, 0.1, 0.3};
constexpr double kMonotoneGrid[] = {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5};

// One check evaluated on one instance: margin = bound - value, violated
// when below -tolerance.
struct Outcome {
  double margin = kInf;
  bool violated = false;
  io::Json instance;  // filled only when violated
};

using InstanceFn = std::function<std::vector<Outcome>(InstanceRng&)>;

struct Suite {
  std::string name;
  std::uint64_t id;
  std::vector<std::string> checks;
  InstanceFn run;
};

Outcome Check(double margin, double tolerance,
              const std::function<io::Json()>& describe) {
  Outcome out{margin, !(margin >= -tolerance), nullptr};
  if (out.violated) out.instance = describe();
  return out;
}

Outcome CheckTrue(bool ok, const std::function<io::Json()>& describe) {
  return Check(ok ? 0.0 : -1.0, 0.0, describe);
}

Alphabet RandomAlphabet(InstanceRng& rng, int max_size) {
  return Alphabet::Indexed(static_cast<std::size_t>(rng.Int(1, max_size)));
}

// Matches `prior`'s support with different positive values.
DiscreteDistribution Reweighted(InstanceRng& rng, const DiscreteDistribution& prior) {
  std::vector<double> probs(prior.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (prior[i] > 0.0) {
      probs[i] = 0.05 + rng.Uniform();
      total += probs[i];
    }
  }
  for (double& p : probs) p /= total;
  return DiscreteDistribution(prior.alphabet(), std::move(probs));
}

std::vector<Outcome> SoundnessInstance(InstanceRng& rng) {
  const Alphabet in = RandomAlphabet(rng, 8);
  const Alphabet out = RandomAlphabet(rng, 8);
  const DiscreteDistribution prior = rng.Distribution(in, 0.3);
  const Channel ch = rng.RandomChannel(in, out);
  const EventMask event = rng.RandomEvent(in, out);
  const JointDistribution joint = JointFrom(prior, ch);
  const std::vector<std::size_t> support = prior.Support();
  const double leakage = MaximalLeakage(ch, support).nats;
  const auto describe = [&] {
    return io::Json{{"prior", io::ToJson(prior)},
                    {"channel", io::ToJson(ch)},
                    {"event", io::ToJson(event)}};
  };

  std::vector<Outcome> results;
  const double exact = ExactEventProbability(joint, event);
  const double bound = AdaptiveEventBound(FiberMaxProb(event, prior), leakage).value;
  results.push_back(Check(bound - exact, kSlack, describe));

  const double cap = std::log(static_cast<double>(
      std::min(support.size(), ch.output_size())));
  results.push_back(Check(std::min(leakage, cap - leakage), kSlack, describe));

  results.push_back(Check(leakage - MutualInformation(joint), kSlack, describe));

  const bool identical = std::all_of(support.begin(), support.end(), [&](std::size_t x) {
    return std::ranges::equal(ch.row(x), ch.row(support[0]));
  });
  results.push_back(CheckTrue(identical == (leakage == 0.0), describe));

  const DiscreteDistribution other = Reweighted(rng, prior);
  results.push_back(CheckTrue(MaximalLeakage(other, ch).nats == leakage, describe));

  // Identity channel with the diagonal event under a uniform prior on a
  // random subset: the bound holds with equality.
  const std::size_t k = in.size();
  std::vector<double> flat(k, 0.0);
  std::vector<double> mask_support = rng.Simplex(k, 0.5);
  std::size_t count = 0;
  for (double w : mask_support) count += w > 0.0 ? 1 : 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (mask_support[i] > 0.0) flat[i] = 1.0 / static_cast<double>(count);
  }
  const DiscreteDistribution uniform(in, flat);
  const Channel identity = Channel::Identity(in);
  const EventMask diagonal = EventMask::Diagonal(in, in);
  const double witness_exact =
      ExactEventProbability(JointFrom(uniform, identity), diagonal);
  const double witness_bound =
      AdaptiveEventBound(FiberMaxProb(diagonal, uniform),
                         MaximalLeakage(uniform, identity).nats)
          .value;
  results.push_back(Check(-std::abs(witness_bound - witness_exact), kIdentityTolerance,
                          [&] { return io::Json{{"prior", io::ToJson(uniform)}}; }));
  return results;
}

// A step (x, y^{i-1}) -> y_i over the given history alphabet.
Channel RandomStep(InstanceRng& rng, const Alphabet& x, const Alphabet& history,
                   const Alphabet& out) {
  return rng.RandomChannel(PairAlphabet(x, history), out);
}

std::vector<Outcome> CompositionInstance(InstanceRng& rng) {
  std::vector<Outcome> results;
  const Alphabet in = RandomAlphabet(rng, 6);
  const DiscreteDistribution prior = rng.Distribution(in, 0.3);
  const std::vector<std::size_t> support = prior.Support();

  {
    const Alphabet mid = RandomAlphabet(rng, 6);
    const Alphabet out = RandomAlphabet(rng, 6);
    const Channel a = rng.RandomChannel(in, mid);
    const Channel b = rng.RandomChannel(mid, out);
    const Channel ba = ComposeChannels(a, b);
    const double la = MaximalLeakage(a, support).nats;
    const double lb = MaximalLeakage(b, ReachableOutputs(a, support)).nats;
    const double lba = MaximalLeakage(ba, support).nats;
    results.push_back(Check(std::min(la, lb) - lba, kSlack, [&] {
      return io::Json{{"prior", io::ToJson(prior)},
                      {"first", io::ToJson(a)},
                      {"second", io::ToJson(b)}};
    }));
  }

  const auto steps_json = [&](std::span<const Channel> steps) {
    io::Json list = io::Json::array();
    for (const Channel& s : steps) list.push_back(io::ToJson(s));
    return io::Json{{"prior", io::ToJson(prior)}, {"steps", list}};
  };

  {
    const Alphabet y1 = RandomAlphabet(rng, 4);
    const Alphabet y2 = RandomAlphabet(rng, 4);
    std::vector<Channel> steps;
    steps.push_back(rng.RandomChannel(in, y1));
    steps.push_back(RandomStep(rng, in, y1, y2));
    const double k1 = MaximalLeakage(steps[0], support).nats;
    const double k2 = StepLeakageBound(steps[1], in.size(), support);
    const double total = MaximalLeakage(ComposeAdaptively(steps), support).nats;
    results.push_back(Check(k1 + k2 - total, kSlack, [&] { return steps_json(steps); }));
  }

  {
    const Alphabet y1 = RandomAlphabet(rng, 3);
    const Alphabet y2 = RandomAlphabet(rng, 3);
    const Alphabet y3 = RandomAlphabet(rng, 3);
    std::vector<Channel> steps;
    steps.push_back(rng.RandomChannel(in, y1));
    steps.push_back(RandomStep(rng, in, y1, y2));
    steps.push_back(RandomStep(rng, in, PairAlphabet(y1, y2), y3));
    LeakageLedger ledger;
    ledger = ledger.Push(LedgerEntry::FromChannel(
        "step1", MaximalLeakage(steps[0], support).nats));
    ledger = ledger.Push(LedgerEntry::FromChannel(
        "step2", StepLeakageBound(steps[1], in.size(), support)));
    ledger = ledger.Push(LedgerEntry::FromChannel(
        "step3", StepLeakageBound(steps[2], in.size(), support)));
    const double total = MaximalLeakage(ComposeAdaptively(steps), support).nats;
    results.push_back(
        Check(Compose(ledger) - total, kSlack, [&] { return steps_json(steps); }));

    const std::vector<double> terms = ChainRuleTerms(prior, steps);
    const double chain = std::accumulate(terms.begin(), terms.end(), 0.0);
    results.push_back(Check(chain - total, kSlack, [&] { return steps_json(steps); }));
    results.push_back(Check(Compose(ledger) - chain, kSlack,
                            [&] { return steps_json(steps); }));
  }

  {
    std::vector<LedgerEntry> entries;
    const int size = rng.Int(1, 8);
    for (int i = 0; i < size; ++i) {
      entries.push_back(LedgerEntry::FromDeclared("e" + std::to_string(i),
                                                  3.0 * rng.Uniform()));
    }
    const double forward = Compose(LeakageLedger(entries));
    for (std::size_t i = entries.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.Int(0, static_cast<int>(i) - 1));
      std::swap(entries[i - 1], entries[j]);
    }
    const double shuffled = Compose(LeakageLedger(entries));
    results.push_back(Check(-std::abs(forward - shuffled), kIdentityTolerance, [&] {
      return io::Json{{"ledger", io::ToJson(LeakageLedger(entries))}};
    }));
  }
  return results;
}

double SafeApproxMaxDivergence(
    const std::function<double(std::span<const double>, std::span<const double>,
                               double)>& fn,
    std::span<const double> p, std::span<const double> q, double delta) {
  try {
    return fn(p, q, delta);
  } catch (const LeakageError& e) {
    if (e.code() != ErrorCode::kNoFeasibleSet) throw;
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<Outcome> MaxInfoInstance(InstanceRng& rng) {
  std::vector<Outcome> results;
  const Alphabet in = RandomAlphabet(rng, 6);
  const Alphabet out = RandomAlphabet(rng, 6);
  const DiscreteDistribution prior = rng.Distribution(in, 0.3);
  const JointDistribution joint = JointFrom(prior, rng.RandomChannel(in, out));
  const double leakage = MaximalLeakage(joint).nats;
  const auto describe = [&] { return io::Json{{"joint", io::ToJson(joint)}}; };

  double worst = kInf;
  for (double beta : kBetaGrid) {
    const double value = ApproxMaxInformation(joint, beta);
    worst = std::min(worst, LeakageToApproxMaxInfo(leakage, beta) - value);
  }
  results.push_back(Check(worst, kSlack, describe));

  results.push_back(Check(MaxInformation(joint) - leakage, kSlack, describe));

  double previous = kInf;
  double monotone = kInf;
  for (double beta : kMonotoneGrid) {
    const double value = ApproxMaxInformation(joint, beta);
    if (previous != kInf) monotone = std::min(monotone, previous - value);
    previous = value;
  }
  results.push_back(Check(monotone, kSlack, describe));

  const auto m = static_cast<std::size_t>(rng.Int(1, 12));
  const std::vector<double> p = rng.Simplex(m, 0.2);
  const std::vector<double> q = rng.Simplex(m, 0.2);
  const double delta = rng.Coin(0.2) ? 0.0 : 0.9 * rng.Uniform();
  const double scan = SafeApproxMaxDivergence(
      [](auto a, auto b, double d) { return ApproxMaxDivergence(a, b, d); }, p, q,
      delta);
  const double exhaustive =
      SafeApproxMaxDivergence(ApproxMaxDivergenceBySubsets, p, q, delta);
  bool match = false;
  if (std::isnan(scan) || std::isnan(exhaustive)) {
    match = std::isnan(scan) && std::isnan(exhaustive);
  } else if (std::isinf(scan) || std::isinf(exhaustive)) {
    match = scan == exhaustive;
  } else {
    match = std::abs(scan - exhaustive) <= kIdentityTolerance;
  }
  results.push_back(CheckTrue(match, [&] {
    io::Json pj = io::Json::array();
    io::Json qj = io::Json::array();
    for (double v : p) pj.push_back(v);
    for (double v : q) qj.push_back(v);
    return io::Json{{"p", pj}, {"q", qj}, {"delta", delta}};
  }));
  return results;
}

const std::vector<Suite>& Suites() {
  static const std::vector<Suite> suites = {
      {"soundness",
       1,
       {"adaptive-event-bound", "leakage-range", "leakage-vs-mutual-information",
        "zero-iff-identical-rows", "support-only", "identity-diagonal-equality"},
       SoundnessInstance},
      {"composition",
       2,
       {"post-processing", "two-step-composition", "three-step-ledger",
        "chain-rule", "chain-rule-vs-ledger", "ledger-permutation"},
       CompositionInstance},
      {"maxinfo",
       3,
       {"approx-maxinfo-vs-leakage", "maxinfo-implies-leakage",
        "approx-maxinfo-monotone-in-beta", "threshold-vs-subsets"},
       MaxInfoInstance},
  };
  return suites;
}

std::vector<CheckResult> RunSuite(const Suite& suite, std::int64_t instances,
                                  std::uint64_t seed, int workers) {
  const std::uint64_t master = DeriveTrialSeed(seed, suite.id);
  const auto count = static_cast<std::size_t>(instances);
  std::vector<std::vector<Outcome>> outcomes(count);
  ParallelFor(count, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      InstanceRng rng(DeriveTrialSeed(master, i));
      outcomes[i] = suite.run(rng);
    }
  });
  std::vector<CheckResult> results;
  for (const std::string& name : suite.checks) {
    results.push_back({name, instances, 0, kInf, std::nullopt});
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t c = 0; c < results.size(); ++c) {
      const Outcome& o = outcomes[i][c];
      CheckResult& r = results[c];
      r.worst_margin = std::min(r.worst_margin, o.margin);
      if (o.violated) {
        if (std::isnan(o.margin)) r.worst_margin = o.margin;
        ++r.violations;
        if (!r.offending) {
          io::Json instance = o.instance;
          instance["index"] = i;
          r.offending = instance;
        }
      }
    }
  }
  return results;
}

}  // namespace

double InstanceRng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int InstanceRng::Int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

std::vector<double> InstanceRng::Simplex(std::size_t size, double zero_prob) {
  std::vector<double> w(size);
  for (double& v : w) v = -std::log(1.0 - Uniform());
  const std::size_t keep = static_cast<std::size_t>(Int(0, static_cast<int>(size) - 1));
  for (std::size_t i = 0; i < size; ++i) {
    if (i != keep && Coin(zero_prob)) w[i] = 0.0;
  }
  if (w[keep] == 0.0) w[keep] = 1.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return w;
}

DiscreteDistribution InstanceRng::Distribution(const Alphabet& alphabet,
                                               double zero_prob) {
  return DiscreteDistribution(alphabet, Simplex(alphabet.size(), zero_prob));
}

Channel InstanceRng::RandomChannel(const Alphabet& input, const Alphabet& output) {
  const std::size_t rows = input.size();
  const std::size_t cols = output.size();
  std::vector<double> flat;
  flat.reserve(rows * cols);
  const double style = Uniform();
  if (style < 0.1) {
    const std::vector<double> row = Simplex(cols, 0.3);
    for (std::size_t x = 0; x < rows; ++x) flat.insert(flat.end(), row.begin(), row.end());
  } else if (style < 0.25) {
    for (std::size_t x = 0; x < rows; ++x) {
      std::vector<double> row(cols, 0.0);
      row[static_cast<std::size_t>(Int(0, static_cast<int>(cols) - 1))] = 1.0;
      flat.insert(flat.end(), row.begin(), row.end());
    }
  } else {
    const double zero_prob = style < 0.6 ? 0.4 : 0.0;
    for (std::size_t x = 0; x < rows; ++x) {
      const std::vector<double> row = Simplex(cols, zero_prob);
      flat.insert(flat.end(), row.begin(), row.end());
    }
  }
  return Channel(input, output, std::move(flat));
}

EventMask InstanceRng::RandomEvent(const Alphabet& input, const Alphabet& output) {
  const double density = Uniform();
  std::vector<bool> mask(input.size() * output.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = Coin(density);
  return EventMask(input, output, std::move(mask));
}

double ApproxMaxDivergenceBySubsets(std::span<const double> p,
                                    std::span<const double> q, double delta) {
  if (p.size() != q.size()) {
    throw LeakageError(ErrorCode::kAlphabetMismatch, "p and q differ in size");
  }
  if (p.size() > 20) {
    throw LeakageError(ErrorCode::kCapExceeded, "subset enumeration over 20 outcomes");
  }
  if (!(delta >= 0.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument, "delta must be >= 0");
  }
  bool feasible = false;
  double best = 0.0;
  for (std::uint32_t subset = 1; subset < (1U << p.size()); ++subset) {
    double ps = 0.0;
    double qs = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (subset & (1U << i)) {
        ps += p[i];
        qs += q[i];
      }
    }
    if (!(ps > delta)) continue;
    if (qs == 0.0) return kInf;
    feasible = true;
    best = std::max(best, (ps - delta) / qs);
  }
  if (!feasible) {
    throw LeakageError(ErrorCode::kNoFeasibleSet, "no subset has p(O) > delta");
  }
  return std::log(best);
}

std::vector<std::string> VerifySuites() {
  std::vector<std::string> names;
  for (const Suite& s : Suites()) names.push_back(s.name);
  names.push_back("all");
  return names;
}

VerifyReport RunVerify(const std::string& suite, std::int64_t instances,
                       std::uint64_t seed, int workers) {
  if (instances < 1) {
    throw LeakageError(ErrorCode::kInvalidArgument, "instances must be >= 1");
  }
  VerifyReport report;
  report.suite = suite;
  report.instances = instances;
  report.seed = seed;
  bool found = false;
  for (const Suite& s : Suites()) {
    if (suite != "all" && suite != s.name) continue;
    found = true;
    for (CheckResult& r : RunSuite(s, instances, seed, workers)) {
      r.name = s.name + "/" + r.name;
      report.checks.push_back(std::move(r));
    }
  }
  if (!found) {
    throw LeakageError(ErrorCode::kInvalidArgument, "unknown suite " + suite);
  }
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& r) { return r.violations == 0; });
  return report;
}

io::Json ToJson(const VerifyReport& report) {
  io::Json checks = io::Json::array();
  for (const CheckResult& r : report.checks) {
    io::Json c = {{"name", r.name},
                  {"instances", r.instances},
                  {"violations", r.violations},
                  {"worst_margin", io::RealToJson(r.worst_margin)}};
    if (r.offending) c["offending"] = *r.offending;
    checks.push_back(std::move(c));
  }
  return io::Json{{"suite", report.suite},
                  {"instances", report.instances},
                  {"seed", report.seed},
                  {"checks", std::move(checks)},
                  {"pass", report.pass}};
}

}  // namespace leakage
