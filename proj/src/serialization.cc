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

#include "leakage/serialization.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "leakage/error.h"

namespace leakage::io {
namespace {

std::string RealText(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, end);
}

void AppendReal(double v, std::string& out) {
  if (std::isfinite(v)) {
    out += RealText(v);
  } else {
    out += '"' + RealText(v) + '"';
  }
}

bool IsScalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void Write(const Json& j, int indent, int level, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * level), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      AppendReal(j.get<double>(), out);
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool inline_array =
          std::all_of(j.begin(), j.end(), [](const Json& e) { return IsScalar(e); });
      out += '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += inline_array ? ", " : ",";
        if (!inline_array) out += "\n" + pad;
        Write(e, indent, level + 1, out);
        first = false;
      }
      if (!inline_array) out += "\n" + close_pad;
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        out += "\n" + pad;
        out += Json(it.key()).dump();
        out += ": ";
        Write(it.value(), indent, level + 1, out);
        first = false;
      }
      out += "\n" + close_pad + "}";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

[[noreturn]] void ParseFail(const std::string& what) {
  throw LeakageError(ErrorCode::kParse, what);
}

const Json& Field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    ParseFail(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

Alphabet LabelsFromJson(const Json& labels) {
  if (!labels.is_array()) ParseFail("labels must be an array");
  std::vector<std::string> out;
  for (const Json& l : labels) {
    if (!l.is_string()) ParseFail("labels must be strings");
    out.push_back(l.get<std::string>());
  }
  return Alphabet(std::move(out));
}

std::vector<double> RealsFromJson(const Json& values) {
  if (!values.is_array()) ParseFail("expected an array of reals");
  std::vector<double> out;
  out.reserve(values.size());
  for (const Json& v : values) out.push_back(RealFromJson(v));
  return out;
}

std::vector<double> MatrixFromJson(const Json& rows, std::size_t cols) {
  if (!rows.is_array()) ParseFail("expected an array of rows");
  std::vector<double> flat;
  for (const Json& r : rows) {
    std::vector<double> row = RealsFromJson(r);
    if (row.size() != cols) ParseFail("row length differs from output labels");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

Json MatrixToJson(std::span<const double> flat, std::size_t cols) {
  Json rows = Json::array();
  for (std::size_t start = 0; start < flat.size(); start += cols) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(flat[start + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json ProductToJson(const ProductAlphabet& product) {
  return Json{{"base_labels", product.base().labels()}, {"n", product.length()}};
}

// Rebuilds the product structure if `product_key` is present; the flat
// labels must then match the enumerated tuples.
Alphabet InputAlphabetFromJson(const Json& doc, const char* labels_key,
                               const char* product_key) {
  Alphabet flat = LabelsFromJson(Field(doc, labels_key));
  if (!doc.contains(product_key)) return flat;
  const Json& spec = doc.at(product_key);
  const Json& n = Field(spec, "n");
  if (!n.is_number_integer()) ParseFail("product length must be an integer");
  ProductAlphabet product(LabelsFromJson(Field(spec, "base_labels")),
                          n.get<int>());
  Alphabet structured = product.Flatten();
  if (structured.labels() != flat.labels()) {
    ParseFail("input labels do not enumerate the declared product alphabet");
  }
  return structured;
}

void AddLabels(Json& doc, const char* labels_key, const char* product_key,
               const Alphabet& alphabet) {
  doc[labels_key] = alphabet.labels();
  if (alphabet.product() != nullptr) {
    doc[product_key] = ProductToJson(*alphabet.product());
  }
}

template <typename F>
auto Guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    ParseFail(e.what());
  }
}

}  // namespace

std::string FormatReal(double value) { return RealText(value); }

std::string Dump(const Json& doc, int indent) {
  std::string out;
  Write(doc, indent, 0, out);
  out += '\n';
  return out;
}

Json RealToJson(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double RealFromJson(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  ParseFail("expected a real number, got " + value.dump());
}

Json ParseJson(const std::string& text) {
  return Guarded([&] { return Json::parse(text); });
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) ParseFail("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseJson(buffer.str());
}

Json ToJson(const DiscreteDistribution& d) {
  Json doc;
  AddLabels(doc, "labels", "product", d.alphabet());
  doc["probs"] = std::vector<double>(d.probs().begin(), d.probs().end());
  return doc;
}

DiscreteDistribution DistributionFromJson(const Json& doc) {
  return Guarded([&] {
    return DiscreteDistribution(InputAlphabetFromJson(doc, "labels", "product"),
                                RealsFromJson(Field(doc, "probs")));
  });
}

Json ToJson(const Channel& ch) {
  Json doc;
  AddLabels(doc, "input_labels", "input_product", ch.input());
  doc["output_labels"] = ch.output().labels();
  doc["rows"] = MatrixToJson(ch.row_major(), ch.output_size());
  return doc;
}

Channel ChannelFromJson(const Json& doc) {
  return Guarded([&] {
    Alphabet input = InputAlphabetFromJson(doc, "input_labels", "input_product");
    Alphabet output = LabelsFromJson(Field(doc, "output_labels"));
    std::vector<double> rows = MatrixFromJson(Field(doc, "rows"), output.size());
    return Channel(std::move(input), std::move(output), std::move(rows));
  });
}

Json ToJson(const JointDistribution& joint) {
  Json doc;
  AddLabels(doc, "input_labels", "input_product", joint.input());
  doc["output_labels"] = joint.output().labels();
  doc["mass"] = MatrixToJson(joint.row_major(), joint.output_size());
  return doc;
}

JointDistribution JointFromJson(const Json& doc) {
  return Guarded([&] {
    Alphabet input = InputAlphabetFromJson(doc, "input_labels", "input_product");
    Alphabet output = LabelsFromJson(Field(doc, "output_labels"));
    std::vector<double> mass = MatrixFromJson(Field(doc, "mass"), output.size());
    return JointDistribution(std::move(input), std::move(output),
                             std::move(mass));
  });
}

Json ToJson(const EventMask& event) {
  Json doc;
  AddLabels(doc, "input_labels", "input_product", event.input());
  doc["output_labels"] = event.output().labels();
  Json rows = Json::array();
  for (std::size_t x = 0; x < event.input_size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < event.output_size(); ++y) {
      row.push_back(event.contains(x, y));
    }
    rows.push_back(std::move(row));
  }
  doc["mask"] = std::move(rows);
  return doc;
}

EventMask EventFromJson(const Json& doc) {
  return Guarded([&] {
    Alphabet input = InputAlphabetFromJson(doc, "input_labels", "input_product");
    Alphabet output = LabelsFromJson(Field(doc, "output_labels"));
    const Json& rows = Field(doc, "mask");
    if (!rows.is_array()) ParseFail("mask must be an array of rows");
    std::vector<bool> mask;
    for (const Json& r : rows) {
      if (!r.is_array() || r.size() != output.size()) {
        ParseFail("mask row length differs from output labels");
      }
      for (const Json& b : r) {
        if (!b.is_boolean()) ParseFail("mask entries must be booleans");
        mask.push_back(b.get<bool>());
      }
    }
    return EventMask(std::move(input), std::move(output), std::move(mask));
  });
}

Json ToJson(const LeakageLedger& ledger) {
  Json entries = Json::array();
  for (const LedgerEntry& e : ledger.entries()) {
    Json provenance{{"kind", ProvenanceKind(e.provenance())}};
    if (const auto* dp = std::get_if<DpDerived>(&e.provenance())) {
      provenance["epsilon"] = dp->epsilon;
      provenance["n"] = dp->n;
    } else if (const auto* card = std::get_if<Cardinality>(&e.provenance())) {
      provenance["output_size"] = card->output_size;
    } else if (const auto* mi = std::get_if<MaxInfoDerived>(&e.provenance())) {
      provenance["k"] = mi->k;
    }
    entries.push_back(Json{{"label", e.label()},
                           {"bound_nats", e.bound_nats()},
                           {"provenance", std::move(provenance)}});
  }
  return Json{{"entries", std::move(entries)}};
}

LeakageLedger LedgerFromJson(const Json& doc) {
  return Guarded([&] {
    const Json& entries = Field(doc, "entries");
    if (!entries.is_array()) ParseFail("entries must be an array");
    std::vector<LedgerEntry> out;
    for (const Json& e : entries) {
      const std::string label = Field(e, "label").get<std::string>();
      const double bound = RealFromJson(Field(e, "bound_nats"));
      const Json& prov = Field(e, "provenance");
      const std::string kind = Field(prov, "kind").get<std::string>();
      LedgerEntry entry = [&] {
        if (kind == "computed-channel") return LedgerEntry::FromChannel(label, bound);
        if (kind == "declared") return LedgerEntry::FromDeclared(label, bound);
        if (kind == "dp-derived") {
          return LedgerEntry::FromDp(label,
                                     RealFromJson(Field(prov, "epsilon")),
                                     Field(prov, "n").get<int>());
        }
        if (kind == "cardinality") {
          return LedgerEntry::FromCardinality(
              label, Field(prov, "output_size").get<std::size_t>());
        }
        if (kind == "max-info-derived") {
          return LedgerEntry::FromMaxInfo(label, RealFromJson(Field(prov, "k")));
        }
        ParseFail("unknown provenance kind '" + kind + "'");
      }();
      if (std::abs(entry.bound_nats() - bound) > kIdentityTolerance) {
        ParseFail("entry '" + label + "' bound_nats disagrees with provenance");
      }
      out.push_back(std::move(entry));
    }
    return LeakageLedger(std::move(out));
  });
}

Json ToJson(const BoundReport& report) {
  Json inputs = Json::object();
  for (const auto& [k, v] : report.inputs) inputs[k] = RealToJson(v);
  Json doc{{"name", report.name},
           {"value", RealToJson(report.value)},
           {"inputs", std::move(inputs)},
           {"trivial", report.trivial}};
  if (!report.flags.empty()) {
    Json flags = Json::object();
    for (const auto& [k, v] : report.flags) flags[k] = v;
    doc["flags"] = std::move(flags);
  }
  if (!report.notes.empty()) doc["notes"] = report.notes;
  return doc;
}

Json ToJson(const Comparison& cmp) {
  Json inputs = Json::object();
  for (const auto& [k, v] : cmp.inputs) inputs[k] = RealToJson(v);
  Json derived = Json::object();
  for (const auto& [k, v] : cmp.derived) derived[k] = RealToJson(v);
  return Json{{"name", cmp.name},
              {"leakage_bound", RealToJson(cmp.leakage_bound)},
              {"reference_bound", RealToJson(cmp.reference_bound)},
              {"condition", cmp.condition},
              {"condition_holds", cmp.condition_holds},
              {"inputs", std::move(inputs)},
              {"derived", std::move(derived)}};
}

Json MeasureReport(const std::string& measure, double nats, Json inputs) {
  return Json{{"measure", measure},
              {"nats", RealToJson(nats)},
              {"inputs", std::move(inputs)}};
}

}  // namespace leakage::io
