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
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace hqhl {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent seed from a master seed and a key path, e.g.
/// (seed, {outer_iteration, term_index}). The result depends only on the
/// inputs, never on the order in which substreams are requested.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng substream(std::uint64_t master,
                     std::initializer_list<std::uint64_t> keys) {
  return Rng(derive_seed(master, keys));
}

/// Uniform double in [0, 1) built from the top 53 bits. Avoids
/// std::uniform_real_distribution, whose output is library-specific.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

/// Inverse-CDF sampler over a finite distribution. Weights need not be
/// normalized but must be nonnegative with positive total.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights) {
    cdf_.reserve(weights.size());
    double acc = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("DiscreteSampler: negative or non-finite weight");
      acc += w;
      cdf_.push_back(acc);
    }
    if (!(acc > 0.0)) throw std::invalid_argument("DiscreteSampler: zero total weight");
    for (double& c : cdf_) c /= acc;
    cdf_.back() = 1.0;
  }

  std::size_t operator()(Rng& rng) const {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf_.begin());
    // upper_bound skips zero-mass entries; the clamp only guards u == 1.
    return std::min(idx, cdf_.size() - 1);
  }

  std::vector<std::size_t> draw(Rng& rng, std::size_t count) const {
    std::vector<std::size_t> out(count);
    for (auto& v : out) v = (*this)(rng);
    return out;
  }

  std::size_t size() const noexcept { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

/// Median of values; the mean of the two middle elements for even counts.
inline double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  double lo = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lo + hi);
}

/// Median over `groups` consecutive blocks of equal size. `samples.size()`
/// must be a positive multiple of `groups`.
inline double median_of_means(std::span<const double> samples, std::size_t groups) {
  if (groups == 0 || samples.empty() || samples.size() % groups != 0)
    throw std::invalid_argument("median_of_means: samples must split evenly into groups");
  const std::size_t per_group = samples.size() / groups;
  std::vector<double> means(groups);
  for (std::size_t s = 0; s < groups; ++s) {
    double acc = 0.0;
    for (std::size_t t = 0; t < per_group; ++t) acc += samples[s * per_group + t];
    means[s] = acc / static_cast<double>(per_group);
  }
  return median(std::move(means));
}

/// Sample-size pair for median-of-means estimators: `per_group` samples
/// averaged, median over `groups`.
struct SampleSize {
  std::size_t per_group = 1;
  std::size_t groups = 1;

  std::size_t total() const noexcept { return per_group * groups; }
  void validate() const {
    if (per_group < 1 || groups < 1)
      throw std::invalid_argument("sample size: per-group count and group count must be >= 1");
  }
};

}  // namespace hqhl
