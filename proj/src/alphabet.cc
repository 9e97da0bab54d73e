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

#include "leakage/alphabet.h"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "leakage/error.h"

namespace leakage {

std::size_t EnumerationCap() {
  const char* env = std::getenv("LEAKAGE_LAB_CAP");
  if (env == nullptr || *env == '\0') return kDefaultEnumerationCap;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) return kDefaultEnumerationCap;
  return static_cast<std::size_t>(value);
}

namespace {

std::vector<std::size_t> SortedOrder(const std::vector<std::string>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return labels[a] < labels[b];
  });
  return order;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> labels) {
  if (labels.empty()) {
    throw LeakageError(ErrorCode::kInvalidArgument, "alphabet must be nonempty");
  }
  auto impl = std::make_shared<Impl>();
  impl->sorted_order = SortedOrder(labels);
  for (std::size_t i = 1; i < impl->sorted_order.size(); ++i) {
    const auto& prev = labels[impl->sorted_order[i - 1]];
    if (prev == labels[impl->sorted_order[i]]) {
      throw LeakageError(ErrorCode::kInvalidArgument,
                         "duplicate alphabet label '" + prev + "'");
    }
  }
  impl->labels = std::move(labels);
  impl_ = std::move(impl);
}

Alphabet Alphabet::Indexed(std::size_t size) {
  std::vector<std::string> labels;
  labels.reserve(size);
  for (std::size_t i = 0; i < size; ++i) labels.push_back(std::to_string(i));
  return Alphabet(std::move(labels));
}

const std::string& Alphabet::label(std::size_t index) const {
  if (index >= size()) {
    throw LeakageError(ErrorCode::kInvalidArgument, "label index out of range");
  }
  return impl_->labels[index];
}

std::optional<std::size_t> Alphabet::IndexOf(std::string_view label) const {
  const auto& order = impl_->sorted_order;
  const auto& labels = impl_->labels;
  auto it = std::lower_bound(
      order.begin(), order.end(), label,
      [&](std::size_t i, std::string_view key) { return labels[i] < key; });
  if (it == order.end() || labels[*it] != label) return std::nullopt;
  return *it;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.impl_->labels != b.impl_->labels) return false;
  const ProductAlphabet* pa = a.product();
  const ProductAlphabet* pb = b.product();
  if ((pa == nullptr) != (pb == nullptr)) return false;
  return pa == nullptr || *pa == *pb;
}

ProductAlphabet::ProductAlphabet(Alphabet base, int length, std::size_t cap)
    : base_(std::move(base)), length_(length), size_(1) {
  if (length < 1) {
    throw LeakageError(ErrorCode::kInvalidArgument,
                       "product length must be at least 1");
  }
  for (int i = 0; i < length; ++i) {
    if (size_ > cap / base_.size()) {
      throw LeakageError(ErrorCode::kCapExceeded,
                         std::to_string(base_.size()) + "^" +
                             std::to_string(length) +
                             " states exceed the enumeration cap " +
                             std::to_string(cap));
    }
    size_ *= base_.size();
  }
}

void ProductAlphabet::Decode(std::size_t index,
                             std::span<std::size_t> digits) const {
  const std::size_t k = base_.size();
  for (int i = length_ - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = index % k;
    index /= k;
  }
}

std::vector<std::size_t> ProductAlphabet::Decode(std::size_t index) const {
  std::vector<std::size_t> digits(static_cast<std::size_t>(length_));
  Decode(index, digits);
  return digits;
}

std::size_t ProductAlphabet::Encode(std::span<const std::size_t> digits) const {
  std::size_t index = 0;
  for (std::size_t d : digits) index = index * base_.size() + d;
  return index;
}

std::vector<std::size_t> ProductAlphabet::Neighbors(std::size_t index) const {
  const std::size_t k = base_.size();
  std::vector<std::size_t> digits = Decode(index);
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(length_) * (k - 1));
  std::size_t place = size_;
  for (int i = 0; i < length_; ++i) {
    place /= k;
    const std::size_t current = digits[static_cast<std::size_t>(i)];
    const std::size_t stripped = index - current * place;
    for (std::size_t v = 0; v < k; ++v) {
      if (v != current) out.push_back(stripped + v * place);
    }
  }
  return out;
}

Alphabet ProductAlphabet::Flatten() const {
  auto impl = std::make_shared<Alphabet::Impl>();
  impl->labels.reserve(size_);
  std::vector<std::size_t> digits(static_cast<std::size_t>(length_));
  for (std::size_t index = 0; index < size_; ++index) {
    Decode(index, digits);
    std::string label;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i > 0) label += ',';
      label += base_.label(digits[i]);
    }
    impl->labels.push_back(std::move(label));
  }
  impl->sorted_order = SortedOrder(impl->labels);
  impl->product = std::make_shared<const ProductAlphabet>(*this);
  return Alphabet(std::shared_ptr<const Alphabet::Impl>(std::move(impl)));
}

Alphabet PairAlphabet(const Alphabet& first, const Alphabet& second) {
  std::vector<std::string> labels;
  labels.reserve(first.size() * second.size());
  for (const auto& a : first.labels()) {
    for (const auto& b : second.labels()) labels.push_back(a + "," + b);
  }
  return Alphabet(std::move(labels));
}

}  // namespace leakage
