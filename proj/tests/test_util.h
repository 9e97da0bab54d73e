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

// Oracles and fixtures shared by the tests. Nothing here calls the code
// under test for the quantity it checks.

#ifndef LEAKAGE_TESTS_TEST_UTIL_H_
#define LEAKAGE_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "leakage/distribution.h"

namespace leakage::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Row-major matrix of doubles.
using Matrix = std::vector<std::vector<double>>;

class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  std::vector<double> Simplex(std::size_t size, double zero_prob = 0.0) {
    std::vector<double> w(size);
    std::exponential_distribution<double> exp(1.0);
    for (double& v : w) v = exp(engine_);
    const auto keep = static_cast<std::size_t>(Int(0, static_cast<int>(size) - 1));
    for (std::size_t i = 0; i < size; ++i) {
      if (i != keep && Uniform() < zero_prob) w[i] = 0.0;
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= total;
    return w;
  }

  Matrix Stochastic(std::size_t rows, std::size_t cols, double zero_prob = 0.0) {
    Matrix m;
    for (std::size_t i = 0; i < rows; ++i) m.push_back(Simplex(cols, zero_prob));
    return m;
  }

  Channel RandomChannel(std::size_t rows, std::size_t cols, double zero_prob = 0.0) {
    return Channel(Alphabet::Indexed(rows), Alphabet::Indexed(cols),
                   Stochastic(rows, cols, zero_prob));
  }

  DiscreteDistribution RandomDistribution(std::size_t size, double zero_prob = 0.0) {
    return DiscreteDistribution(Alphabet::Indexed(size), Simplex(size, zero_prob));
  }

 private:
  std::mt19937_64 engine_;
};

// log sum_y max_{x in support} W(y|x), written column-first.
inline double LeakageOracle(const Matrix& w, const std::vector<std::size_t>& support) {
  double total = 0.0;
  for (std::size_t y = 0; y < w[0].size(); ++y) {
    double best = 0.0;
    for (std::size_t x : support) best = w[x][y] > best ? w[x][y] : best;
    total += best;
  }
  return std::log(total);
}

// Expectation form: sum_y P(y) max_x P(x|y) / P(x) over a
// full-support prior.
inline double ExpectationOracle(const std::vector<double>& prior, const Matrix& w) {
  double total = 0.0;
  for (std::size_t y = 0; y < w[0].size(); ++y) {
    double py = 0.0;
    for (std::size_t x = 0; x < prior.size(); ++x) py += prior[x] * w[x][y];
    if (py == 0.0) continue;
    double best = 0.0;
    for (std::size_t x = 0; x < prior.size(); ++x) {
      const double posterior = prior[x] * w[x][y] / py;
      best = std::max(best, posterior / prior[x]);
    }
    total += py * best;
  }
  return total;
}

// max over subsets O with p(O) > delta of (p(O) - delta) / q(O), by
// recursion over include/exclude decisions. nullopt when no subset is
// feasible.
inline std::optional<double> SubsetRatioOracle(const std::vector<double>& p,
                                               const std::vector<double>& q,
                                               double delta) {
  std::optional<double> best;
  std::vector<bool> chosen(p.size(), false);
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == p.size()) {
      double ps = 0.0;
      double qs = 0.0;
      bool any = false;
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (chosen[j]) {
          any = true;
          ps += p[j];
          qs += q[j];
        }
      }
      if (!any || !(ps > delta)) return;
      const double ratio = qs == 0.0 ? kInf : (ps - delta) / qs;
      if (!best || ratio > *best) best = ratio;
      return;
    }
    chosen[i] = false;
    self(self, i + 1);
    chosen[i] = true;
    self(self, i + 1);
  };
  recurse(recurse, 0);
  return best;
}

inline Matrix MatMul(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<double>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

inline Matrix Rows(const Channel& ch) {
  Matrix m(ch.input_size());
  for (std::size_t x = 0; x < ch.input_size(); ++x) {
    m[x].assign(ch.row(x).begin(), ch.row(x).end());
  }
  return m;
}

inline std::vector<std::size_t> FullSupport(std::size_t n) {
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

}  // namespace leakage::testing

#endif  // LEAKAGE_TESTS_TEST_UTIL_H_
