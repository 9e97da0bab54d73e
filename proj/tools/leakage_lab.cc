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

// leakage_lab: command-line front end for the leakage toolkit.
//
//   leakage_lab measure ml --channel bec.json
//   leakage_lab compose --ledger run.json --dp 0.01,100
//   leakage_lab bound --theorem generr --n 100 --eta 0.1 --leakage 1.2
//   leakage_lab verify soundness --instances 1000 --seed 7
//   leakage_lab simulate generr --config erm.json --seed 1 --trace trials.csv

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leakage/bounds.h"
#include "leakage/calculus.h"
#include "leakage/distribution.h"
#include "leakage/error.h"
#include "leakage/measures.h"
#include "leakage/serialization.h"
#include "leakage/simulator.h"
#include "leakage/simulator_io.h"
#include "leakage/verify.h"

namespace {

using leakage::ErrorCode;
using leakage::LeakageError;
using leakage::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCap = 4;

struct Globals {
  std::optional<std::uint64_t> seed;
  bool bits = false;
  std::string output;
  int workers = 0;
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBetaOutOfRange:
    case ErrorCode::kNoFeasibleSet:
    case ErrorCode::kDenominatorNonPositive:
      return kExitInfeasible;
    case ErrorCode::kCapExceeded:
      return kExitCap;
    default:
      return kExitInvalid;
  }
}

void Emit(const Globals& g, const Json& doc) {
  const std::string text = leakage::io::Dump(doc);
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "cannot write '" + g.output + "'");
  }
  out << text;
}

void ShowBits(const Globals& g, const std::string& what, double nats) {
  if (g.bits) std::cerr << what << ": " << nats / std::numbers::ln2 << " bits\n";
}

std::uint64_t RequireSeed(const Globals& g) {
  if (!g.seed) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "this command needs an explicit --seed");
  }
  return *g.seed;
}

// ---- measure ----

struct MeasureArgs {
  std::string kind;
  std::string channel;
  std::string prior;
  std::string joint;
  std::size_t z_size = 0;
  double beta = 0.0;
};

leakage::JointDistribution LoadJoint(const MeasureArgs& a, Json& inputs) {
  if (!a.joint.empty()) {
    inputs["joint"] = a.joint;
    return leakage::io::JointFromJson(leakage::io::ReadJsonFile(a.joint));
  }
  if (a.channel.empty() || a.prior.empty()) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "needs --joint, or --prior with --channel");
  }
  inputs["prior"] = a.prior;
  inputs["channel"] = a.channel;
  return leakage::JointFrom(
      leakage::io::DistributionFromJson(leakage::io::ReadJsonFile(a.prior)),
      leakage::io::ChannelFromJson(leakage::io::ReadJsonFile(a.channel)));
}

int RunMeasure(const Globals& g, const MeasureArgs& a) {
  Json inputs = Json::object();
  double nats = 0.0;
  if (a.kind == "ml" || a.kind == "cml" || a.kind == "dp") {
    if (a.kind == "ml" && !a.joint.empty()) {
      nats = leakage::MaximalLeakage(LoadJoint(a, inputs)).nats;
    } else {
      if (a.channel.empty()) {
        throw LeakageError(ErrorCode::kInvalidArgument, "needs --channel");
      }
      inputs["channel"] = a.channel;
      const leakage::Channel ch =
          leakage::io::ChannelFromJson(leakage::io::ReadJsonFile(a.channel));
      std::vector<std::size_t> support;
      if (!a.prior.empty()) {
        inputs["prior"] = a.prior;
        const auto prior =
            leakage::io::DistributionFromJson(leakage::io::ReadJsonFile(a.prior));
        if (!(prior.alphabet() == ch.input())) {
          throw LeakageError(ErrorCode::kAlphabetMismatch,
                             "prior alphabet differs from channel input");
        }
        support = prior.Support();
      } else {
        for (std::size_t x = 0; x < ch.input_size(); ++x) support.push_back(x);
      }
      if (a.kind == "ml") {
        nats = leakage::MaximalLeakage(ch, support).nats;
      } else if (a.kind == "dp") {
        nats = leakage::EmpiricalDp(ch);
      } else {
        if (a.z_size == 0) {
          throw LeakageError(ErrorCode::kInvalidArgument, "cml needs --z-size");
        }
        inputs["z_size"] = a.z_size;
        std::vector<leakage::SectionIndex> sections;
        for (std::size_t i : support) sections.push_back({i / a.z_size, i % a.z_size});
        nats = leakage::ConditionalMaximalLeakage(ch, a.z_size, sections).nats;
      }
    }
  } else {
    const leakage::JointDistribution joint = LoadJoint(a, inputs);
    if (a.kind == "mi") {
      nats = leakage::MutualInformation(joint);
    } else if (a.kind == "maxinfo") {
      nats = leakage::MaxInformation(joint);
    } else {
      inputs["beta"] = a.beta;
      nats = leakage::ApproxMaxInformation(joint, a.beta);
    }
  }
  ShowBits(g, a.kind, nats);
  Emit(g, leakage::io::MeasureReport(a.kind, nats, std::move(inputs)));
  return kExitOk;
}

// ---- compose ----

struct ComposeArgs {
  std::string ledger;
  std::string label;
  std::vector<std::string> dp;
  std::vector<std::size_t> cardinality;
  std::vector<double> maxinfo;
  std::vector<double> declared;
  std::vector<double> computed;
};

std::pair<double, int> ParseDp(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw LeakageError(ErrorCode::kInvalidArgument, "--dp expects EPS,N");
  }
  try {
    std::size_t used = 0;
    const std::string eps_text = text.substr(0, comma);
    const std::string n_text = text.substr(comma + 1);
    const double eps = std::stod(eps_text, &used);
    if (used != eps_text.size()) throw std::invalid_argument(eps_text);
    const int n = std::stoi(n_text, &used);
    if (used != n_text.size()) throw std::invalid_argument(n_text);
    return {eps, n};
  } catch (const std::logic_error&) {
    throw LeakageError(ErrorCode::kInvalidArgument, "--dp expects EPS,N, got " + text);
  }
}

int RunCompose(const Globals& g, const ComposeArgs& a) {
  leakage::LeakageLedger ledger;
  if (!a.ledger.empty()) {
    ledger = leakage::io::LedgerFromJson(leakage::io::ReadJsonFile(a.ledger));
  }
  const auto name = [&](const std::string& kind) {
    std::string base = a.label.empty() ? kind : a.label;
    return base + "#" + std::to_string(ledger.size() + 1);
  };
  for (double v : a.computed) {
    ledger = ledger.Push(leakage::LedgerEntry::FromChannel(name("computed"), v));
  }
  for (const std::string& spec : a.dp) {
    const auto [eps, n] = ParseDp(spec);
    ledger = ledger.Push(leakage::LedgerEntry::FromDp(name("dp"), eps, n));
  }
  for (std::size_t size : a.cardinality) {
    ledger = ledger.Push(leakage::LedgerEntry::FromCardinality(name("cardinality"), size));
  }
  for (double k : a.maxinfo) {
    ledger = ledger.Push(leakage::LedgerEntry::FromMaxInfo(name("max-info"), k));
  }
  for (double v : a.declared) {
    ledger = ledger.Push(leakage::LedgerEntry::FromDeclared(name("declared"), v));
  }
  Json doc = leakage::io::ToJson(ledger);
  const double total = leakage::Compose(ledger);
  doc["total_nats"] = leakage::io::RealToJson(total);
  ShowBits(g, "total", total);
  Emit(g, doc);
  return kExitOk;
}

// ---- bound ----

struct BoundArgs {
  std::string theorem;
  std::string mode = "leakage";
  double leakage = 0.0;
  std::optional<std::size_t> num_stats;
  double fiber_prob = 1.0;
  int n = 1;
  double eta = 0.1;
  double c = 1.0;
  double sigma = 0.05;
  std::optional<double> delta;
  double beta = 0.01;
  double epsilon = 0.0;
  std::optional<double> mi;
};

int RunBound(const Globals& g, const BoundArgs& a) {
  double leakage_nats = a.leakage;
  if (a.num_stats) leakage_nats = leakage::CardinalityBound(*a.num_stats);
  Json doc;
  if (a.theorem == "adapt") {
    doc = leakage::io::ToJson(leakage::AdaptiveEventBound(a.fiber_prob, leakage_nats));
  } else if (a.theorem == "generr") {
    doc = leakage::io::ToJson(leakage::GenErrorBound(a.n, a.eta, leakage_nats));
    if (a.mi) {
      doc["comparison"] = leakage::io::ToJson(
          leakage::CompareWithMutualInfo(a.n, a.eta, leakage_nats, *a.mi));
    }
  } else if (a.theorem == "generr-c") {
    doc = leakage::io::ToJson(
        leakage::GenErrorBoundSensitivity(a.n, a.eta, a.c, leakage_nats));
    doc["comparison"] = leakage::io::ToJson(
        leakage::CompareWithSensitivityDp(a.n, a.eta, a.c, leakage_nats));
  } else if (a.theorem == "hyptest") {
    doc = leakage::io::ToJson(a.num_stats
                                  ? leakage::FdrBoundForCount(a.sigma, *a.num_stats)
                                  : leakage::FdrBound(a.sigma, leakage_nats));
    if (a.delta) {
      doc["adjusted_sigma"] = leakage::io::RealToJson(
          a.num_stats ? leakage::AdjustedSignificanceForCount(*a.delta, *a.num_stats)
                      : leakage::AdjustedSignificance(*a.delta, leakage_nats));
    }
  } else if (a.theorem == "dwork") {
    doc = leakage::io::ToJson(leakage::DworkDpBound(a.beta, a.epsilon, a.n));
    doc["comparison"] =
        leakage::io::ToJson(leakage::CompareWithDworkDp(a.beta, a.epsilon, a.n));
  } else if (a.theorem == "mi") {
    if (!a.mi) throw LeakageError(ErrorCode::kInvalidArgument, "mi needs --mi");
    doc = leakage::io::ToJson(leakage::MiGenBound(*a.mi, a.n, a.eta));
  } else {
    if (!a.delta) {
      throw LeakageError(ErrorCode::kInvalidArgument,
                         "sample-complexity needs --delta");
    }
    const bool mi_mode = a.mode == "mi";
    const double measure = mi_mode ? a.mi.value_or(leakage_nats) : leakage_nats;
    leakage::BoundReport report;
    report.name = "sample-complexity";
    report.value = leakage::SampleComplexity(
        measure, a.eta, *a.delta,
        mi_mode ? leakage::ComplexityMode::kMutualInfo
                : leakage::ComplexityMode::kLeakage);
    report.inputs = {{mi_mode ? "I_nats" : "L_nats", measure},
                     {"eta", a.eta},
                     {"delta", *a.delta}};
    doc = leakage::io::ToJson(report);
    doc.erase("trivial");
    doc["mode"] = a.mode;
  }
  Emit(g, doc);
  return kExitOk;
}

// ---- verify / simulate ----

struct VerifyArgs {
  std::string suite;
  std::int64_t instances = 1000;
};

int RunVerifyCommand(const Globals& g, const VerifyArgs& a) {
  const leakage::VerifyReport report =
      leakage::RunVerify(a.suite, a.instances, RequireSeed(g), g.workers);
  Emit(g, leakage::ToJson(report));
  for (const leakage::CheckResult& c : report.checks) {
    if (c.violations > 0) {
      std::cerr << "violated: " << c.name << " in " << c.violations << " of "
                << c.instances << " instances\n";
    }
  }
  return report.pass ? kExitOk : kExitFailed;
}

struct SimulateArgs {
  std::string kind;
  std::string config;
  std::string trace;
};

void WriteTrace(const std::string& path, const std::string& csv) {
  std::ofstream out(path);
  if (!out) throw LeakageError(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << csv;
}

int RunSimulate(const Globals& g, const SimulateArgs& a) {
  const Json doc = leakage::io::ReadJsonFile(a.config);
  if (!g.seed && !(doc.is_object() && doc.contains("seed"))) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "simulate needs --seed or a seed in the config");
  }
  leakage::RunOptions options;
  options.workers = g.workers;
  if (a.kind == "generr") {
    leakage::GenErrConfig cfg = leakage::io::GenErrConfigFromJson(doc);
    if (g.seed) cfg.seed = *g.seed;
    std::vector<leakage::GenErrTrial> trace;
    const leakage::ExperimentReport report =
        leakage::RunGenErrorExperiment(cfg, options, a.trace.empty() ? nullptr : &trace);
    Json out = leakage::io::ToJson(report);
    out["kind"] = "generr";
    out["seed"] = cfg.seed;
    if (!a.trace.empty()) WriteTrace(a.trace, leakage::io::TraceCsv(trace));
    if (report.exact_leakage_nats) ShowBits(g, "exact leakage", *report.exact_leakage_nats);
    Emit(g, out);
    return report.pass ? kExitOk : kExitFailed;
  }
  leakage::HypTestConfig cfg = leakage::io::HypTestConfigFromJson(doc);
  if (g.seed) cfg.seed = *g.seed;
  std::vector<leakage::HypTestTrial> trace;
  const leakage::HypTestReport report =
      leakage::RunHypTestExperiment(cfg, options, a.trace.empty() ? nullptr : &trace);
  Json out = leakage::io::ToJson(report);
  out["seed"] = cfg.seed;
  if (!a.trace.empty()) WriteTrace(a.trace, leakage::io::TraceCsv(trace));
  ShowBits(g, "leakage bound", report.leakage_bound_nats);
  Emit(g, out);
  return report.pass ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal leakage and adaptive data analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed for randomized commands");
  app.add_flag("--bits", g.bits, "Also print values in bits on stderr");
  app.add_option("--output", g.output, "Write the JSON report to this path");
  app.add_option("--workers", g.workers, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  std::function<int()> action;

  MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "Compute an information measure");
  m->add_option("kind", measure.kind, "Measure")
      ->required()
      ->check(CLI::IsMember({"ml", "cml", "mi", "maxinfo", "approx-maxinfo", "dp"}));
  m->add_option("--channel", measure.channel, "Channel JSON");
  m->add_option("--prior", measure.prior, "Prior JSON (its support is used)");
  m->add_option("--joint", measure.joint, "Joint distribution JSON");
  m->add_option("--z-size", measure.z_size, "Size of the conditioning alphabet");
  m->add_option("--beta", measure.beta, "Probability budget for approx-maxinfo");
  m->callback([&] { action = [&] { return RunMeasure(g, measure); }; });

  ComposeArgs compose;
  auto* c = app.add_subcommand("compose", "Add entries to a leakage ledger");
  c->add_option("--ledger", compose.ledger, "Ledger JSON to extend");
  c->add_option("--label", compose.label, "Label prefix for new entries");
  c->add_option("--dp", compose.dp, "eps-DP step on n records, as EPS,N");
  c->add_option("--cardinality", compose.cardinality, "Step with this many outputs");
  c->add_option("--maxinfo", compose.maxinfo, "Step with max-information bound k");
  c->add_option("--declared", compose.declared, "Declared bound in nats");
  c->add_option("--computed", compose.computed, "Leakage computed from a channel");
  c->callback([&] { action = [&] { return RunCompose(g, compose); }; });

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "Evaluate a probability bound");
  b->add_option("--theorem", bound.theorem, "Bound to evaluate")
      ->required()
      ->check(CLI::IsMember(
          {"adapt", "generr", "generr-c", "hyptest", "dwork", "mi", "sample-complexity"}));
  b->add_option("--leakage", bound.leakage, "Leakage L in nats");
  b->add_option("--num-stats", bound.num_stats, "Use L = log of this count");
  b->add_option("--fiber-prob", bound.fiber_prob, "max_y P_X(E_y)");
  b->add_option("--n", bound.n, "Number of samples");
  b->add_option("--eta", bound.eta, "Accuracy");
  b->add_option("--c", bound.c, "Sensitivity");
  b->add_option("--sigma", bound.sigma, "Significance level");
  b->add_option("--delta", bound.delta, "Target false discovery or failure probability");
  b->add_option("--beta", bound.beta, "Failure probability of the DP bound");
  b->add_option("--epsilon", bound.epsilon, "Privacy parameter");
  b->add_option("--mi", bound.mi, "Mutual information in nats");
  b->add_option("--mode", bound.mode, "Sample complexity measure")
      ->check(CLI::IsMember({"leakage", "mi"}));
  b->callback([&] { action = [&] { return RunBound(g, bound); }; });

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run randomized property suites");
  v->add_option("suite", verify.suite, "Suite")
      ->required()
      ->check(CLI::IsMember(leakage::VerifySuites()));
  v->add_option("--instances", verify.instances, "Random instances per suite")
      ->check(CLI::PositiveNumber);
  v->callback([&] { action = [&] { return RunVerifyCommand(g, verify); }; });

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
  s->add_option("kind", simulate.kind, "Experiment")
      ->required()
      ->check(CLI::IsMember({"generr", "hyptest"}));
  s->add_option("--config", simulate.config, "Experiment config JSON")->required();
  s->add_option("--trace", simulate.trace, "Write per-trial CSV here");
  s->callback([&] { action = [&] { return RunSimulate(g, simulate); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  if (*seed_opt) g.seed = seed;

  try {
    return action();
  } catch (const LeakageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
