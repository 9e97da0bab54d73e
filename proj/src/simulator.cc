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

#include "leakage/simulator.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <set>
#include <string>
#include <thread>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "leakage/bounds.h"
#include "leakage/calculus.h"
#include "leakage/error.h"
#include "leakage/measures.h"

namespace leakage {
namespace {

constexpr double kConfidence = 0.99;

std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform on [0, 1) from the top 53 bits.
double UnitDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t SampleIndex(std::span<const double> cdf, double u) {
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    if (u < cdf[i]) return i;
  }
  // u landed above a cumulative sum that rounded below 1.
  std::size_t last = cdf.size() - 1;
  while (last > 0 && cdf[last] == cdf[last - 1]) --last;
  return last;
}

std::vector<double> Cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  return cdf;
}

std::string HypothesisLabel(const Hypothesis& h) {
  std::string label;
  for (std::uint8_t bit : h) label += bit ? '1' : '0';
  return label;
}

void ValidateConfig(const GenErrConfig& cfg) {
  if (cfg.d < 1 || cfg.n < 1) {
    throw LeakageError(ErrorCode::kInvalidArgument, "d and n must be >= 1");
  }
  if (cfg.data.size() != 2 * static_cast<std::size_t>(cfg.d)) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "data distribution must range over 2d samples");
  }
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument, "eta must lie in (0, 1)");
  }
  if (cfg.trials < 1) {
    throw LeakageError(ErrorCode::kInvalidArgument, "trials must be >= 1");
  }
  ValidateLearner(cfg.learner, cfg.d);
}

LeakageLedger LearnerLedger(const LearnerSpec& spec, int n) {
  switch (spec.kind) {
    case LearnerKind::kExponentialMechanism:
      return LeakageLedger().Push(
          LedgerEntry::FromDp("exponential-mechanism", spec.epsilon, n));
    case LearnerKind::kConstant:
      return LeakageLedger().Push(LedgerEntry::FromCardinality("constant", 1));
    case LearnerKind::kErm:
      break;
  }
  return LeakageLedger().Push(
      LedgerEntry::FromCardinality("erm-range", spec.hypotheses.size()));
}

}  // namespace

std::uint64_t DeriveTrialSeed(std::uint64_t master, std::uint64_t trial_index) {
  return Mix64(master ^ Mix64(trial_index));
}

void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t, std::size_t)>& body) {
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  pool.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(count, t * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&body, &errors, t, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  // The lowest chunk's error, so the reported failure does not depend on
  // scheduling.
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Alphabet SampleAlphabet(int d) {
  std::vector<std::string> labels;
  for (int x = 0; x < d; ++x) {
    labels.push_back(std::to_string(x) + ":0");
    labels.push_back(std::to_string(x) + ":1");
  }
  return Alphabet(std::move(labels));
}

std::vector<Hypothesis> AllLabelings(int d) {
  if (d < 1 || d > 20) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "domain size must lie in [1, 20]");
  }
  std::vector<Hypothesis> out;
  for (std::size_t i = 0; i < (std::size_t{1} << d); ++i) {
    Hypothesis h(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x) h[static_cast<std::size_t>(x)] = (i >> x) & 1U;
    out.push_back(std::move(h));
  }
  return out;
}

void ValidateLearner(const LearnerSpec& spec, int d) {
  if (spec.hypotheses.empty()) {
    throw LeakageError(ErrorCode::kInvalidArgument, "hypothesis class is empty");
  }
  std::set<Hypothesis> seen;
  for (const Hypothesis& h : spec.hypotheses) {
    if (h.size() != static_cast<std::size_t>(d)) {
      throw LeakageError(ErrorCode::kInvalidArgument,
                         "hypothesis length differs from domain size");
    }
    if (std::any_of(h.begin(), h.end(), [](std::uint8_t b) { return b > 1; })) {
      throw LeakageError(ErrorCode::kInvalidArgument,
                         "hypothesis labels must be 0 or 1");
    }
    if (!seen.insert(h).second) {
      throw LeakageError(ErrorCode::kInvalidArgument,
                         "duplicate hypothesis " + HypothesisLabel(h));
    }
  }
  if (spec.kind == LearnerKind::kExponentialMechanism &&
      !(spec.epsilon > 0.0 && std::isfinite(spec.epsilon))) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "exponential mechanism needs finite epsilon > 0");
  }
}

int Errors(const Hypothesis& h, std::span<const std::size_t> sample) {
  int errors = 0;
  for (std::size_t z : sample) errors += h[z / 2] != (z % 2) ? 1 : 0;
  return errors;
}

std::vector<double> LearnerOutput(const LearnerSpec& spec,
                                  std::span<const std::size_t> sample) {
  const std::size_t k = spec.hypotheses.size();
  std::vector<double> out(k, 0.0);
  switch (spec.kind) {
    case LearnerKind::kConstant:
      out[0] = 1.0;
      return out;
    case LearnerKind::kErm: {
      std::size_t best = 0;
      int best_errors = Errors(spec.hypotheses[0], sample);
      for (std::size_t i = 1; i < k; ++i) {
        const int e = Errors(spec.hypotheses[i], sample);
        if (e < best_errors) {
          best = i;
          best_errors = e;
        }
      }
      out[best] = 1.0;
      return out;
    }
    case LearnerKind::kExponentialMechanism: {
      // Scores shifted by the minimum error count so the largest weight is 1.
      std::vector<int> errors(k);
      for (std::size_t i = 0; i < k; ++i) errors[i] = Errors(spec.hypotheses[i], sample);
      const int min_errors = *std::min_element(errors.begin(), errors.end());
      double total = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        out[i] = std::exp(-spec.epsilon * (errors[i] - min_errors) / 2.0);
        total += out[i];
      }
      for (double& w : out) w /= total;
      return out;
    }
  }
  return out;
}

double TrueRisk(const Hypothesis& h, const DiscreteDistribution& data) {
  double risk = 0.0;
  for (std::size_t z = 0; z < data.size(); ++z) {
    if (h[z / 2] != z % 2) risk += data[z];
  }
  return risk;
}

Channel LearnerChannel(const LearnerSpec& spec, int d, int n,
                       const DiscreteDistribution& data, std::size_t cap) {
  ValidateLearner(spec, d);
  if (data.size() != 2 * static_cast<std::size_t>(d)) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "data distribution must range over 2d samples");
  }
  const ProductAlphabet datasets(data.alphabet(), n, cap);
  const std::size_t k = spec.hypotheses.size();
  std::vector<double> rows;
  rows.reserve(datasets.size() * k);
  std::vector<std::size_t> sample(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < datasets.size(); ++s) {
    datasets.Decode(s, sample);
    const std::vector<double> out = LearnerOutput(spec, sample);
    rows.insert(rows.end(), out.begin(), out.end());
  }
  std::vector<std::string> labels;
  for (const Hypothesis& h : spec.hypotheses) labels.push_back(HypothesisLabel(h));
  return Channel(datasets.Flatten(), Alphabet(std::move(labels)), std::move(rows));
}

Channel LearnerChannel(const LearnerSpec& spec, int d, int n,
                       const DiscreteDistribution& data) {
  return LearnerChannel(spec, d, n, data, EnumerationCap());
}

EventMask GeneralizationEvent(const LearnerSpec& spec, int d, int n,
                              const DiscreteDistribution& data, double eta,
                              std::size_t cap) {
  ValidateLearner(spec, d);
  const ProductAlphabet datasets(data.alphabet(), n, cap);
  const std::size_t k = spec.hypotheses.size();
  std::vector<double> risks;
  std::vector<std::string> labels;
  for (const Hypothesis& h : spec.hypotheses) {
    risks.push_back(TrueRisk(h, data));
    labels.push_back(HypothesisLabel(h));
  }
  std::vector<bool> mask;
  mask.reserve(datasets.size() * k);
  std::vector<std::size_t> sample(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < datasets.size(); ++s) {
    datasets.Decode(s, sample);
    for (std::size_t i = 0; i < k; ++i) {
      const double empirical =
          static_cast<double>(Errors(spec.hypotheses[i], sample)) / n;
      mask.push_back(std::abs(risks[i] - empirical) > eta);
    }
  }
  return EventMask(datasets.Flatten(), Alphabet(std::move(labels)),
                   std::move(mask));
}

double ClopperPearsonLower(std::int64_t events, std::int64_t trials,
                           double confidence) {
  if (events <= 0) return 0.0;
  const double a = static_cast<double>(events);
  const double b = static_cast<double>(trials - events + 1);
  return boost::math::ibeta_inv(a, b, 1.0 - confidence);
}

void FinalizeReport(ExperimentReport& report) {
  report.empirical_tail =
      static_cast<double>(report.events) / static_cast<double>(report.trials);
  report.mc_half_width =
      report.empirical_tail -
      ClopperPearsonLower(report.events, report.trials, kConfidence);
  report.pass =
      report.empirical_tail - report.mc_half_width <= report.theoretical_bound;
}

ExperimentReport RunGenErrorExperiment(const GenErrConfig& cfg,
                                       const RunOptions& options,
                                       std::vector<GenErrTrial>* trace) {
  ValidateConfig(cfg);
  const std::size_t cap = options.cap > 0 ? options.cap : EnumerationCap();
  const LearnerSpec& learner = cfg.learner;

  ExperimentReport report;
  report.trials = cfg.trials;
  report.ledger_bound_nats = Compose(LearnerLedger(learner, cfg.n));
  if (cfg.exact_channel) {
    const Channel channel = LearnerChannel(learner, cfg.d, cfg.n, cfg.data, cap);
    const ProductAlphabet& datasets = *channel.input().product();
    std::vector<std::size_t> support;
    std::vector<std::size_t> sample(static_cast<std::size_t>(cfg.n));
    for (std::size_t s = 0; s < datasets.size(); ++s) {
      datasets.Decode(s, sample);
      const bool positive = std::all_of(sample.begin(), sample.end(),
                                        [&](std::size_t z) { return cfg.data[z] > 0.0; });
      if (positive) support.push_back(s);
    }
    report.exact_leakage_nats = MaximalLeakage(channel, support).nats;
  }
  const double leakage =
      report.exact_leakage_nats.value_or(report.ledger_bound_nats);
  report.theoretical_bound = GenErrorBound(cfg.n, cfg.eta, leakage).value;

  std::vector<double> risks;
  for (const Hypothesis& h : learner.hypotheses) risks.push_back(TrueRisk(h, cfg.data));
  const std::vector<double> data_cdf = Cumulative(cfg.data.probs());

  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<GenErrTrial> records(trials);
  ParallelFor(trials, options.workers, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> sample(static_cast<std::size_t>(cfg.n));
    for (std::size_t t = begin; t < end; ++t) {
      std::mt19937_64 rng(DeriveTrialSeed(cfg.seed, t));
      for (auto& z : sample) z = SampleIndex(data_cdf, UnitDouble(rng));
      const std::vector<double> out = LearnerOutput(learner, sample);
      const std::size_t h =
          learner.kind == LearnerKind::kExponentialMechanism
              ? SampleIndex(Cumulative(out), UnitDouble(rng))
              : static_cast<std::size_t>(
                    std::max_element(out.begin(), out.end()) - out.begin());
      GenErrTrial& r = records[t];
      r.trial = static_cast<std::int64_t>(t);
      r.hypothesis = h;
      r.empirical_risk =
          static_cast<double>(Errors(learner.hypotheses[h], sample)) / cfg.n;
      r.true_risk = risks[h];
      r.event = std::abs(r.true_risk - r.empirical_risk) > cfg.eta;
    }
  });
  for (const GenErrTrial& r : records) report.events += r.event ? 1 : 0;
  FinalizeReport(report);
  if (trace != nullptr) *trace = std::move(records);
  return report;
}

std::vector<StatWindow> StatisticWindows(int n, int num_stats) {
  if (n < 1 || num_stats < 1) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "n and the number of statistics must be >= 1");
  }
  const int length = std::max(1, n / 2);
  std::vector<StatWindow> windows;
  for (int t = 0; t < num_stats; ++t) {
    const int offset =
        num_stats == 1
            ? 0
            : static_cast<int>(std::lround(static_cast<double>(t) * (n - length) /
                                           (num_stats - 1)));
    windows.push_back({offset, length});
  }
  return windows;
}

std::vector<double> BinomialUpperTails(int m) {
  const boost::math::binomial_distribution<double> null(m, 0.5);
  std::vector<double> tails(static_cast<std::size_t>(m) + 1);
  tails[0] = 1.0;
  for (int k = 1; k <= m; ++k) {
    tails[static_cast<std::size_t>(k)] =
        boost::math::cdf(boost::math::complement(null, k - 1));
  }
  return tails;
}

HypTestReport RunHypTestExperiment(const HypTestConfig& cfg,
                                   const RunOptions& options,
                                   std::vector<HypTestTrial>* trace) {
  if (!(cfg.sigma > 0.0 && cfg.sigma <= 1.0) ||
      !(cfg.delta > 0.0 && cfg.delta <= 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "sigma and delta must lie in (0, 1]");
  }
  if (cfg.trials < 1) {
    throw LeakageError(ErrorCode::kInvalidArgument, "trials must be >= 1");
  }
  const std::vector<StatWindow> windows = StatisticWindows(cfg.n, cfg.num_stats);
  const std::vector<double> tails = BinomialUpperTails(windows.front().length);
  const std::size_t cap = options.cap > 0 ? options.cap : EnumerationCap();

  HypTestReport report;
  report.leakage_bound_nats =
      CardinalityBound(static_cast<std::size_t>(cfg.num_stats));
  report.adjusted_sigma = AdjustedSignificanceForCount(
      cfg.delta, static_cast<std::size_t>(cfg.num_stats));

  // Index of the smallest p-value (lowest index on ties) and that p-value.
  const auto select = [&](const std::vector<int>& prefix) {
    std::size_t best = 0;
    double best_p = 2.0;
    for (std::size_t t = 0; t < windows.size(); ++t) {
      const int k = prefix[static_cast<std::size_t>(windows[t].offset + windows[t].length)] -
                    prefix[static_cast<std::size_t>(windows[t].offset)];
      const double p = tails[static_cast<std::size_t>(k)];
      if (p < best_p) {
        best = t;
        best_p = p;
      }
    }
    return std::pair{best, best_p};
  };

  std::optional<double> exact;
  if (cfg.n < 63 && (std::size_t{1} << cfg.n) <= cap) {
    std::set<std::size_t> reachable;
    std::vector<int> prefix(static_cast<std::size_t>(cfg.n) + 1, 0);
    for (std::size_t bits = 0; bits < (std::size_t{1} << cfg.n); ++bits) {
      for (int i = 0; i < cfg.n; ++i) {
        prefix[static_cast<std::size_t>(i) + 1] =
            prefix[static_cast<std::size_t>(i)] + static_cast<int>((bits >> i) & 1U);
      }
      reachable.insert(select(prefix).first);
    }
    exact = std::log(static_cast<double>(reachable.size()));
  }

  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<HypTestTrial> records(trials);
  ParallelFor(trials, options.workers, [&](std::size_t begin, std::size_t end) {
    std::vector<int> prefix(static_cast<std::size_t>(cfg.n) + 1, 0);
    for (std::size_t t = begin; t < end; ++t) {
      std::mt19937_64 rng(DeriveTrialSeed(cfg.seed, t));
      std::uint64_t word = 0;
      for (int i = 0; i < cfg.n; ++i) {
        if (i % 64 == 0) word = rng();
        prefix[static_cast<std::size_t>(i) + 1] =
            prefix[static_cast<std::size_t>(i)] + static_cast<int>(word & 1U);
        word >>= 1;
      }
      const auto [selected, p] = select(prefix);
      HypTestTrial& r = records[t];
      r.trial = static_cast<std::int64_t>(t);
      r.selected = selected;
      r.min_p_value = p;
      r.discovery_adjusted = p <= report.adjusted_sigma;
      r.discovery_raw = p <= cfg.sigma;
    }
  });

  for (ExperimentReport* sub : {&report.at_adjusted, &report.at_raw}) {
    sub->trials = cfg.trials;
    sub->ledger_bound_nats = report.leakage_bound_nats;
    sub->exact_leakage_nats = exact;
  }
  for (const HypTestTrial& r : records) {
    report.at_adjusted.events += r.discovery_adjusted ? 1 : 0;
    report.at_raw.events += r.discovery_raw ? 1 : 0;
  }
  const auto count = static_cast<std::size_t>(cfg.num_stats);
  report.at_adjusted.theoretical_bound =
      FdrBoundForCount(report.adjusted_sigma, count).value;
  report.at_raw.theoretical_bound = FdrBoundForCount(cfg.sigma, count).value;
  FinalizeReport(report.at_adjusted);
  FinalizeReport(report.at_raw);
  report.pass = report.at_adjusted.pass && report.at_raw.pass;
  if (trace != nullptr) *trace = std::move(records);
  return report;
}

}  // namespace leakage
