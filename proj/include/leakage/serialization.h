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

#ifndef LEAKAGE_SERIALIZATION_H_
#define LEAKAGE_SERIALIZATION_H_

#include <string>

#include "json.hpp"
#include "leakage/bounds.h"
#include "leakage/calculus.h"
#include "leakage/distribution.h"

namespace leakage::io {

using Json = nlohmann::ordered_json;

// Serializes with reals at 17 significant digits, so every double
// round-trips bit-exactly. Arrays of scalars are written on one line.
std::string Dump(const Json& doc, int indent = 2);

// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string FormatReal(double value);

// A real, or the strings "inf" / "-inf" for infinities.
Json RealToJson(double value);
double RealFromJson(const Json& value);

Json ParseJson(const std::string& text);
Json ReadJsonFile(const std::string& path);

// {"labels": [...], "probs": [...]}
Json ToJson(const DiscreteDistribution& d);
DiscreteDistribution DistributionFromJson(const Json& doc);

// {"input_labels": [...], "output_labels": [...], "rows": [[...], ...]}
// Channels over dataset alphabets also carry
// "input_product": {"base_labels": [...], "n": k}.
Json ToJson(const Channel& ch);
Channel ChannelFromJson(const Json& doc);

// {"input_labels": [...], "output_labels": [...], "mass": [[...], ...]}
Json ToJson(const JointDistribution& joint);
JointDistribution JointFromJson(const Json& doc);

// {"input_labels": [...], "output_labels": [...], "mask": [[bool, ...], ...]}
Json ToJson(const EventMask& event);
EventMask EventFromJson(const Json& doc);

// {"entries": [{"label": ..., "bound_nats": ..., "provenance": {...}}]}
Json ToJson(const LeakageLedger& ledger);
LeakageLedger LedgerFromJson(const Json& doc);

Json ToJson(const BoundReport& report);
Json ToJson(const Comparison& cmp);

// {"measure": name, "nats": value, "inputs": {...}}
Json MeasureReport(const std::string& measure, double nats, Json inputs);

}  // namespace leakage::io

#endif  // LEAKAGE_SERIALIZATION_H_
