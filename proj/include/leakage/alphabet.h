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

#ifndef LEAKAGE_ALPHABET_H_
#define LEAKAGE_ALPHABET_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace leakage {

class ProductAlphabet;

// Default bound on the number of enumerated states (datasets, tuples).
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// The enumeration cap in effect: LEAKAGE_LAB_CAP if set to a positive
// integer, kDefaultEnumerationCap otherwise.
std::size_t EnumerationCap();

// An ordered finite set of distinct symbol names. Cheap to copy; the label
// storage is shared and immutable.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  // Labels "0", "1", ..., "size-1".
  static Alphabet Indexed(std::size_t size);

  std::size_t size() const;
  const std::string& label(std::size_t index) const;
  const std::vector<std::string>& labels() const;
  std::optional<std::size_t> IndexOf(std::string_view label) const;

  // Non-null iff this alphabet enumerates the tuples of a product alphabet.
  const ProductAlphabet* product() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  friend class ProductAlphabet;
  struct Impl;
  explicit Alphabet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

// Tuples of length `length` over `base`, in lexicographic order with the
// first coordinate most significant.
class ProductAlphabet {
 public:
  ProductAlphabet(Alphabet base, int length, std::size_t cap);
  ProductAlphabet(Alphabet base, int length)
      : ProductAlphabet(std::move(base), length, EnumerationCap()) {}

  const Alphabet& base() const { return base_; }
  int length() const { return length_; }
  std::size_t size() const { return size_; }

  void Decode(std::size_t index, std::span<std::size_t> digits) const;
  std::vector<std::size_t> Decode(std::size_t index) const;
  std::size_t Encode(std::span<const std::size_t> digits) const;

  // Tuples differing from `index` in exactly one coordinate; ordered by
  // coordinate, then by replacement symbol. Always length*(|base|-1) items.
  std::vector<std::size_t> Neighbors(std::size_t index) const;

  // The flat alphabet of tuples. Labels join the base labels with ','.
  Alphabet Flatten() const;

  friend bool operator==(const ProductAlphabet& a, const ProductAlphabet& b) {
    return a.length_ == b.length_ && a.base_ == b.base_;
  }

 private:
  Alphabet base_;
  int length_;
  std::size_t size_;
};

// Labels "a,b" for every pair, first alphabet most significant.
Alphabet PairAlphabet(const Alphabet& first, const Alphabet& second);

struct Alphabet::Impl {
  std::vector<std::string> labels;
  std::vector<std::size_t> sorted_order;  // indices sorted by label
  std::shared_ptr<const ProductAlphabet> product;
};

inline std::size_t Alphabet::size() const { return impl_->labels.size(); }
inline const std::vector<std::string>& Alphabet::labels() const {
  return impl_->labels;
}
inline const ProductAlphabet* Alphabet::product() const {
  return impl_->product.get();
}

}  // namespace leakage

#endif  // LEAKAGE_ALPHABET_H_
