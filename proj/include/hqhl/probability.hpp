// Copyright 2026 The HQHL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqhl {

/// A distribution over basis indices 0..N-1: nonnegative, summing to 1
/// within 1e-9. Construction is the membership test for the simplex.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-9;

  ProbabilityVector() = default;

  explicit ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw std::invalid_argument("ProbabilityVector: empty");
    double sum = 0.0;
    for (double v : p_) {
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("ProbabilityVector: negative or non-finite entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
      throw std::invalid_argument("ProbabilityVector: entries sum to " + std::to_string(sum));
  }

  /// True when `p` would construct without throwing.
  static bool is_member(std::span<const double> p) {
    if (p.empty()) return false;
    double sum = 0.0;
    for (double v : p) {
      if (!std::isfinite(v) || v < 0.0) return false;
      sum += v;
    }
    return std::abs(sum - 1.0) <= kSumTolerance;
  }

  static ProbabilityVector uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("ProbabilityVector::uniform: empty");
    return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const noexcept { return p_; }
  auto begin() const noexcept { return p_.begin(); }
  auto end() const noexcept { return p_.end(); }

  /// sum p log p with 0 log 0 = 0.
  double neg_entropy() const noexcept {
    double acc = 0.0;
    for (double v : p_)
      if (v > 0.0) acc += v * std::log(v);
    return acc;
  }

 private:
  std::vector<double> p_;
};

/// softmax(-beta * energies), computed with a max shift.
inline ProbabilityVector boltzmann_weights(std::span<const double> energies, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("boltzmann_weights: beta must be > 0");
  if (energies.empty()) throw std::invalid_argument("boltzmann_weights: empty spectrum");
  const double lo = *std::min_element(energies.begin(), energies.end());
  std::vector<double> w(energies.size());
  double z = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = std::exp(-beta * (energies[j] - lo));
    z += w[j];
  }
  for (double& v : w) v /= z;
  return ProbabilityVector(std::move(w));
}

/// log sum_j exp(-beta * e_j), overflow-safe.
inline double log_sum_exp_neg(std::span<const double> energies, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("log_sum_exp_neg: beta must be > 0");
  if (energies.empty()) throw std::invalid_argument("log_sum_exp_neg: empty spectrum");
  const double lo = *std::min_element(energies.begin(), energies.end());
  double acc = 0.0;
  for (double e : energies) acc += std::exp(-beta * (e - lo));
  return -beta * lo + std::log(acc);
}

}  // namespace hqhl
