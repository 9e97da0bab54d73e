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

#include "leakage/error.h"

namespace leakage {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kParse:
      return "Parse";
    case ErrorCode::kNegativeMass:
      return "NegativeMass";
    case ErrorCode::kNotNormalized:
      return "NotNormalized";
    case ErrorCode::kEmptySupport:
      return "EmptySupport";
    case ErrorCode::kAlphabetMismatch:
      return "AlphabetMismatch";
    case ErrorCode::kCapExceeded:
      return "CapExceeded";
    case ErrorCode::kNoFeasibleSet:
      return "NoFeasibleSet";
    case ErrorCode::kInputNotProduct:
      return "InputNotProduct";
    case ErrorCode::kNegativeEpsilon:
      return "NegativeEpsilon";
    case ErrorCode::kBetaOutOfRange:
      return "BetaOutOfRange";
    case ErrorCode::kNonPositiveSensitivity:
      return "NonPositiveSensitivity";
    case ErrorCode::kDenominatorNonPositive:
      return "DenominatorNonPositive";
  }
  return "Unknown";
}

LeakageError::LeakageError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

NormalizationError::NormalizationError(double residual, const std::string& what)
    : LeakageError(ErrorCode::kNotNormalized, what), residual_(residual) {}

}  // namespace leakage
