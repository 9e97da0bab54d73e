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

#include "leakage/simulator_io.h"

#include <initializer_list>
#include <sstream>
#include <string>

#include "leakage/error.h"

namespace leakage::io {
namespace {

[[noreturn]] void ConfigFail(const std::string& what) {
  throw LeakageError(ErrorCode::kParse, what);
}

void RejectUnknown(const Json& doc, std::initializer_list<const char*> known) {
  if (!doc.is_object()) ConfigFail("config must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) ConfigFail("unknown field '" + it.key() + "'");
  }
}

const Json& Required(const Json& doc, const char* key) {
  if (!doc.contains(key)) ConfigFail(std::string("missing field '") + key + "'");
  return doc.at(key);
}

long long Integer(const Json& doc, const char* key) {
  const Json& v = Required(doc, key);
  if (!v.is_number_integer()) {
    ConfigFail(std::string("field '") + key + "' must be an integer");
  }
  return v.get<long long>();
}

int SmallInteger(const Json& doc, const char* key) {
  const long long v = Integer(doc, key);
  if (v < 1 || v > 1'000'000'000) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       std::string("field '") + key + "' must be a positive integer");
  }
  return static_cast<int>(v);
}

double Real(const Json& doc, const char* key) {
  const Json& v = Required(doc, key);
  if (!v.is_number()) ConfigFail(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

// Accepts a JSON unsigned integer or a decimal string for the full 64-bit
// range.
std::uint64_t Seed(const Json& doc) {
  if (!doc.contains("seed")) return 0;
  const Json& v = doc.at("seed");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    std::size_t used = 0;
    try {
      const unsigned long long parsed = std::stoull(s, &used, 10);
      if (used == s.size() && !s.empty() && s[0] != '-') return parsed;
    } catch (const std::exception&) {
    }
  }
  ConfigFail("seed must be a nonnegative 64-bit integer");
}

LearnerKind KindFromName(const std::string& name) {
  if (name == "erm") return LearnerKind::kErm;
  if (name == "exponential-mechanism") return LearnerKind::kExponentialMechanism;
  if (name == "constant") return LearnerKind::kConstant;
  throw LeakageError(ErrorCode::kInvalidArgument, "unknown learner kind " + name);
}

LearnerSpec LearnerFromJson(const Json& doc, int d) {
  RejectUnknown(doc, {"kind", "epsilon", "hypothesisClass", "tieBreak"});
  LearnerSpec spec;
  const Json& kind = Required(doc, "kind");
  if (!kind.is_string()) ConfigFail("learner kind must be a string");
  spec.kind = KindFromName(kind.get<std::string>());
  if (doc.contains("epsilon")) spec.epsilon = Real(doc, "epsilon");
  if (doc.contains("tieBreak") && doc.at("tieBreak") != "lowest-index") {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "only the lowest-index tie break is supported");
  }
  const Json& hclass = doc.contains("hypothesisClass") ? doc.at("hypothesisClass")
                                                       : Json("all");
  if (hclass.is_string()) {
    if (hclass != "all") ConfigFail("hypothesisClass must be \"all\" or a list");
    spec.hypotheses = AllLabelings(d);
  } else if (hclass.is_array()) {
    for (const Json& h : hclass) {
      if (!h.is_array()) ConfigFail("each hypothesis must be an array of labels");
      Hypothesis labels;
      for (const Json& b : h) {
        if (!b.is_number_integer()) ConfigFail("hypothesis labels must be 0 or 1");
        const int bit = b.get<int>();
        if (bit != 0 && bit != 1) ConfigFail("hypothesis labels must be 0 or 1");
        labels.push_back(static_cast<std::uint8_t>(bit));
      }
      spec.hypotheses.push_back(std::move(labels));
    }
  } else {
    ConfigFail("hypothesisClass must be \"all\" or a list");
  }
  ValidateLearner(spec, d);
  return spec;
}

Json OptionalReal(const std::optional<double>& v) {
  return v ? RealToJson(*v) : Json(nullptr);
}

}  // namespace

std::string LearnerKindName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kErm:
      return "erm";
    case LearnerKind::kExponentialMechanism:
      return "exponential-mechanism";
    case LearnerKind::kConstant:
      return "constant";
  }
  return "unknown";
}

GenErrConfig GenErrConfigFromJson(const Json& doc) {
  RejectUnknown(doc, {"kind", "d", "n", "dataDistribution", "learner", "eta",
                      "trials", "seed", "exactChannel"});
  if (doc.contains("kind") && doc.at("kind") != "generr") {
    ConfigFail("config kind is not generr");
  }
  GenErrConfig cfg;
  cfg.d = SmallInteger(doc, "d");
  cfg.n = SmallInteger(doc, "n");
  const Json& data = Required(doc, "dataDistribution");
  if (data == "uniform") {
    cfg.data = DiscreteDistribution::Uniform(SampleAlphabet(cfg.d));
  } else {
    cfg.data = DistributionFromJson(data);
  }
  cfg.learner = LearnerFromJson(Required(doc, "learner"), cfg.d);
  cfg.eta = Real(doc, "eta");
  cfg.trials = SmallInteger(doc, "trials");
  cfg.seed = Seed(doc);
  if (doc.contains("exactChannel")) {
    if (!doc.at("exactChannel").is_boolean()) ConfigFail("exactChannel must be a boolean");
    cfg.exact_channel = doc.at("exactChannel").get<bool>();
  }
  if (cfg.data.size() != 2 * static_cast<std::size_t>(cfg.d)) {
    throw LeakageError(ErrorCode::kAlphabetMismatch,
                       "dataDistribution must have 2d entries");
  }
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument, "eta must lie in (0, 1)");
  }
  return cfg;
}

HypTestConfig HypTestConfigFromJson(const Json& doc) {
  RejectUnknown(doc, {"kind", "n", "numStats", "sigma", "delta", "trials", "seed"});
  if (doc.contains("kind") && doc.at("kind") != "hyptest") {
    ConfigFail("config kind is not hyptest");
  }
  HypTestConfig cfg;
  cfg.n = SmallInteger(doc, "n");
  cfg.num_stats = SmallInteger(doc, "numStats");
  cfg.sigma = Real(doc, "sigma");
  cfg.delta = Real(doc, "delta");
  cfg.trials = SmallInteger(doc, "trials");
  cfg.seed = Seed(doc);
  if (!(cfg.sigma > 0.0 && cfg.sigma <= 1.0) ||
      !(cfg.delta > 0.0 && cfg.delta <= 1.0)) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "sigma and delta must lie in (0, 1]");
  }
  return cfg;
}

Json ToJson(const GenErrConfig& cfg) {
  Json hypotheses = Json::array();
  for (const Hypothesis& h : cfg.learner.hypotheses) {
    Json labels = Json::array();
    for (std::uint8_t b : h) labels.push_back(static_cast<int>(b));
    hypotheses.push_back(std::move(labels));
  }
  return Json{{"kind", "generr"},
              {"d", cfg.d},
              {"n", cfg.n},
              {"dataDistribution", ToJson(cfg.data)},
              {"learner",
               {{"kind", LearnerKindName(cfg.learner.kind)},
                {"epsilon", cfg.learner.epsilon},
                {"hypothesisClass", std::move(hypotheses)},
                {"tieBreak", "lowest-index"}}},
              {"eta", cfg.eta},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"exactChannel", cfg.exact_channel}};
}

Json ToJson(const HypTestConfig& cfg) {
  return Json{{"kind", "hyptest"},   {"n", cfg.n},
              {"numStats", cfg.num_stats}, {"sigma", cfg.sigma},
              {"delta", cfg.delta},  {"trials", cfg.trials},
              {"seed", cfg.seed}};
}

Json ToJson(const ExperimentReport& report) {
  return Json{{"trials", report.trials},
              {"events", report.events},
              {"empiricalTail", RealToJson(report.empirical_tail)},
              {"mcHalfWidth", RealToJson(report.mc_half_width)},
              {"theoreticalBound", RealToJson(report.theoretical_bound)},
              {"exactLeakage_nats", OptionalReal(report.exact_leakage_nats)},
              {"ledgerBound_nats", RealToJson(report.ledger_bound_nats)},
              {"pass", report.pass}};
}

Json ToJson(const HypTestReport& report) {
  return Json{{"kind", "hyptest"},
              {"adjustedSigma", RealToJson(report.adjusted_sigma)},
              {"leakageBound_nats", RealToJson(report.leakage_bound_nats)},
              {"atAdjustedSigma", ToJson(report.at_adjusted)},
              {"atRawSigma", ToJson(report.at_raw)},
              {"pass", report.pass}};
}

std::string TraceCsv(std::span<const GenErrTrial> trials) {
  std::ostringstream out;
  out << "trial,hypothesis,empirical_risk,true_risk,event\n";
  for (const GenErrTrial& t : trials) {
    out << t.trial << ',' << t.hypothesis << ',' << FormatReal(t.empirical_risk)
        << ',' << FormatReal(t.true_risk) << ',' << (t.event ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string TraceCsv(std::span<const HypTestTrial> trials) {
  std::ostringstream out;
  out << "trial,selected_statistic,min_p_value,discovery_adjusted,discovery_raw\n";
  for (const HypTestTrial& t : trials) {
    out << t.trial << ',' << t.selected << ',' << FormatReal(t.min_p_value) << ','
        << (t.discovery_adjusted ? 1 : 0) << ',' << (t.discovery_raw ? 1 : 0)
        << '\n';
  }
  return out.str();
}

}  // namespace leakage::io
