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

#ifndef LEAKAGE_ERROR_H_
#define LEAKAGE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace leakage {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kNegativeMass,
  kNotNormalized,
  kEmptySupport,
  kAlphabetMismatch,
  kCapExceeded,
  kNoFeasibleSet,
  kInputNotProduct,
  kNegativeEpsilon,
  kBetaOutOfRange,
  kNonPositiveSensitivity,
  kDenominatorNonPositive,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. `code()` is
// stable and is what the CLI maps onto exit statuses.
class LeakageError : public std::runtime_error {
 public:
  LeakageError(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Validation errors carrying the offending residual (NotNormalized).
class NormalizationError : public LeakageError {
 public:
  NormalizationError(double residual, const std::string& what);

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace leakage

#endif  // LEAKAGE_ERROR_H_
