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

// Python bindings. Structured inputs and reports cross the boundary as JSON
// text in the formats the CLI uses; the package __init__ converts them to
// and from Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "leakage/bounds.h"
#include "leakage/calculus.h"
#include "leakage/distribution.h"
#include "leakage/error.h"
#include "leakage/measures.h"
#include "leakage/serialization.h"
#include "leakage/simulator.h"
#include "leakage/simulator_io.h"
#include "leakage/verify.h"

namespace py = pybind11;

namespace {

using leakage::io::Json;

leakage::Channel ChannelArg(const std::string& text) {
  return leakage::io::ChannelFromJson(leakage::io::ParseJson(text));
}

leakage::JointDistribution JointArg(const std::string& text) {
  return leakage::io::JointFromJson(leakage::io::ParseJson(text));
}

std::string Out(const Json& doc) { return leakage::io::Dump(doc); }

double MaximalLeakageJson(const std::string& channel, const std::string& prior) {
  const leakage::Channel ch = ChannelArg(channel);
  if (prior.empty()) return leakage::MaximalLeakage(ch).nats;
  return leakage::MaximalLeakage(
             leakage::io::DistributionFromJson(leakage::io::ParseJson(prior)), ch)
      .nats;
}

std::string ComposeJson(const std::string& ledger_text, std::vector<double> declared) {
  leakage::LeakageLedger ledger;
  if (!ledger_text.empty()) {
    ledger = leakage::io::LedgerFromJson(leakage::io::ParseJson(ledger_text));
  }
  for (double v : declared) {
    ledger = ledger.Push(leakage::LedgerEntry::FromDeclared(
        "declared#" + std::to_string(ledger.size() + 1), v));
  }
  Json doc = leakage::io::ToJson(ledger);
  doc["total_nats"] = leakage::io::RealToJson(leakage::Compose(ledger));
  return Out(doc);
}

std::string SimulateGenErr(const std::string& config, int workers) {
  const leakage::GenErrConfig cfg =
      leakage::io::GenErrConfigFromJson(leakage::io::ParseJson(config));
  leakage::RunOptions options;
  options.workers = workers;
  py::gil_scoped_release release;
  return Out(leakage::io::ToJson(leakage::RunGenErrorExperiment(cfg, options)));
}

std::string SimulateHypTest(const std::string& config, int workers) {
  const leakage::HypTestConfig cfg =
      leakage::io::HypTestConfigFromJson(leakage::io::ParseJson(config));
  leakage::RunOptions options;
  options.workers = workers;
  py::gil_scoped_release release;
  return Out(leakage::io::ToJson(leakage::RunHypTestExperiment(cfg, options)));
}

std::string VerifyJson(const std::string& suite, std::int64_t instances,
                       std::uint64_t seed, int workers) {
  leakage::VerifyReport report;
  {
    py::gil_scoped_release release;
    report = leakage::RunVerify(suite, instances, seed, workers);
  }
  return Out(leakage::ToJson(report));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maximal leakage measures, bounds and experiments";

  static py::exception<leakage::LeakageError> error(m, "LeakageError",
                                                    PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const leakage::LeakageError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = leakage::ErrorCodeName(e.code());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("maximal_leakage", &MaximalLeakageJson, py::arg("channel"),
        py::arg("prior") = std::string(),
        "ML(X -> Y) in nats for a channel JSON, optionally restricted to the "
        "support of a prior JSON.");
  m.def("mutual_information",
        [](const std::string& joint) { return leakage::MutualInformation(JointArg(joint)); },
        py::arg("joint"));
  m.def("max_information",
        [](const std::string& joint) { return leakage::MaxInformation(JointArg(joint)); },
        py::arg("joint"));
  m.def("approx_max_information",
        [](const std::string& joint, double beta) {
          return leakage::ApproxMaxInformation(JointArg(joint), beta);
        },
        py::arg("joint"), py::arg("beta"));
  m.def("empirical_dp",
        [](const std::string& channel) { return leakage::EmpiricalDp(ChannelArg(channel)); },
        py::arg("channel"));
  m.def("renyi_inf_divergence",
        [](std::vector<double> p, std::vector<double> q) {
          return leakage::RenyiInfDivergence(p, q);
        },
        py::arg("p"), py::arg("q"));
  m.def("approx_max_divergence",
        [](std::vector<double> p, std::vector<double> q, double delta) {
          return leakage::ApproxMaxDivergence(p, q, delta);
        },
        py::arg("p"), py::arg("q"), py::arg("delta"));
  m.def("binary_erasure_channel",
        [](double alpha) { return Out(leakage::io::ToJson(leakage::BinaryErasureChannel(alpha))); },
        py::arg("alpha"));

  m.def("dp_to_leakage", &leakage::DpToLeakage, py::arg("epsilon"), py::arg("n"));
  m.def("cardinality_bound", &leakage::CardinalityBound, py::arg("output_size"));
  m.def("compose", &ComposeJson, py::arg("ledger") = std::string(),
        py::arg("declared") = std::vector<double>());

  m.def("adaptive_event_bound",
        [](double fiber, double l) { return Out(leakage::io::ToJson(leakage::AdaptiveEventBound(fiber, l))); },
        py::arg("max_fiber_prob"), py::arg("leakage_nats"));
  m.def("gen_error_bound",
        [](int n, double eta, double l) { return Out(leakage::io::ToJson(leakage::GenErrorBound(n, eta, l))); },
        py::arg("n"), py::arg("eta"), py::arg("leakage_nats"));
  m.def("adjusted_significance", &leakage::AdjustedSignificance, py::arg("delta"),
        py::arg("leakage_nats"));
  m.def("adjusted_significance_for_count", &leakage::AdjustedSignificanceForCount,
        py::arg("delta"), py::arg("count"));
  m.def("dwork_dp_bound",
        [](double beta, double eps, int n) { return Out(leakage::io::ToJson(leakage::DworkDpBound(beta, eps, n))); },
        py::arg("beta"), py::arg("epsilon"), py::arg("n"));
  m.def("sample_complexity",
        [](double measure, double eta, double delta, const std::string& mode) {
          if (mode != "leakage" && mode != "mi") {
            throw leakage::LeakageError(leakage::ErrorCode::kInvalidArgument,
                                        "mode must be 'leakage' or 'mi'");
          }
          return leakage::SampleComplexity(measure, eta, delta,
                                           mode == "mi"
                                               ? leakage::ComplexityMode::kMutualInfo
                                               : leakage::ComplexityMode::kLeakage);
        },
        py::arg("measure_nats"), py::arg("eta"), py::arg("delta"),
        py::arg("mode") = "leakage");

  m.def("simulate_generr", &SimulateGenErr, py::arg("config"), py::arg("workers") = 0);
  m.def("simulate_hyptest", &SimulateHypTest, py::arg("config"), py::arg("workers") = 0);
  m.def("verify", &VerifyJson, py::arg("suite"), py::arg("instances"), py::arg("seed"),
        py::arg("workers") = 0);
  m.def("derive_trial_seed", &leakage::DeriveTrialSeed, py::arg("master"),
        py::arg("trial_index"));
}
