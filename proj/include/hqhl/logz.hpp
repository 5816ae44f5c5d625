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

/**
 * @file logz.hpp
 * @brief Log-partition function estimation through the free energy.
 *
 * With lambda_hat the diagonal values of a trained circuit,
 *
 *   C(p) = sum_j p_j lambda_hat_j + (1/beta) sum_j p_j log p_j
 *
 * is minimized over the simplex by p* = softmax(-beta lambda_hat) with
 * C(p*) = -(1/beta) log sum_j exp(-beta lambda_hat_j). The estimate is
 * log Z_hat = -beta C(p*). If lambda_hat is within delta of the spectrum in
 * the infinity norm (under the best pairing) then |log Z_hat - log Z| is at
 * most beta delta.
 *
 * The closed form is the default solver. Entropic mirror descent is the
 * query-only alternative: it touches lambda_hat only through per-index
 * lookups.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqhl/pauli.hpp"
#include "hqhl/probability.hpp"
#include "hqhl/random.hpp"
#include "hqhl/statevector.hpp"
#include "hqhl/svqe.hpp"

namespace hqhl {

enum class LogZSolver { closed_form, mirror_descent };

inline const char* to_string(LogZSolver s) {
  return s == LogZSolver::closed_form ? "closed_form" : "mirror_descent";
}

inline LogZSolver logz_solver_from_string(const std::string& s) {
  if (s == "closed_form") return LogZSolver::closed_form;
  if (s == "mirror_descent") return LogZSolver::mirror_descent;
  throw std::invalid_argument("unknown log Z solver '" + s + "'");
}

/// Anything that answers lambda_hat_j for an index j.
template <class F>
concept SpectrumAccess = std::invocable<const F&, std::size_t> &&
                         std::convertible_to<std::invoke_result_t<const F&, std::size_t>, double>;

/// C(p) with both terms summed exactly.
inline double free_energy(const ProbabilityVector& p, std::span<const double> lambda_hat, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("free_energy: beta must be > 0");
  if (p.size() != lambda_hat.size()) throw std::invalid_argument("free_energy: length mismatch");
  double energy = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] > 0.0) energy += p[j] * lambda_hat[j];
  return energy + p.neg_entropy() / beta;
}

/// C(p) with the energy term estimated from T*D indices drawn from p
/// (median of D means of T). The entropy term is exact since p is stored
/// classically.
template <SpectrumAccess F>
double evaluate_C(const ProbabilityVector& p, const F& lambda_at, double beta,
                  const SampleSize& samples, std::uint64_t seed) {
  if (!(beta > 0.0)) throw std::invalid_argument("evaluate_C: beta must be > 0");
  samples.validate();
  const DiscreteSampler sampler(p.values());
  Rng rng = substream(seed, {0x4576616cULL});
  const auto idx = sampler.draw(rng, samples.total());
  std::vector<double> values(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) values[k] = static_cast<double>(lambda_at(idx[k]));
  return median_of_means(values, samples.groups) + p.neg_entropy() / beta;
}

struct LogZResult {
  double log_z = 0.0;
  ProbabilityVector p_star;
  double c_value = 0.0;
  LogZSolver solver = LogZSolver::closed_form;
};

inline LogZResult minimize_closed_form(std::span<const double> lambda_hat, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("minimize_closed_form: beta must be > 0");
  for (double v : lambda_hat)
    if (!std::isfinite(v)) throw std::invalid_argument("minimize_closed_form: non-finite eigenvalue");
  LogZResult r;
  r.log_z = log_sum_exp_neg(lambda_hat, beta);
  r.c_value = -r.log_z / beta;
  r.p_star = boltzmann_weights(lambda_hat, beta);
  r.solver = LogZSolver::closed_form;
  return r;
}

struct MirrorDescentOptions {
  std::size_t iterations = 500;
  /// Step eta_t = step_scale * beta, divided by sqrt(t) when diminishing.
  double step_scale = 0.5;
  bool diminishing = false;
  /// When set, c_value is the sampled estimate at the returned iterate.
  std::optional<SampleSize> samples;

  void validate() const {
    if (iterations < 1) throw std::invalid_argument("mirror descent: iterations must be >= 1");
    if (!(step_scale > 0.0)) throw std::invalid_argument("mirror descent: step scale must be > 0");
    if (samples) samples->validate();
  }
};

/// Entropic mirror descent on C from the uniform distribution. Each of the N
/// values is queried once. The best iterate by exact C is returned.
template <SpectrumAccess F>
LogZResult minimize_mirror_descent(const F& lambda_at, std::size_t n, double beta,
                                   const MirrorDescentOptions& opts, std::uint64_t seed) {
  if (!(beta > 0.0)) throw std::invalid_argument("minimize_mirror_descent: beta must be > 0");
  if (n < 1) throw std::invalid_argument("minimize_mirror_descent: N must be >= 1");
  opts.validate();
  constexpr double kFloor = 1e-300;
  std::vector<double> lambda(n);
  for (std::size_t j = 0; j < n; ++j) lambda[j] = static_cast<double>(lambda_at(j));

  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  auto c_of = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] > 0.0) acc += v[j] * (lambda[j] + std::log(v[j]) / beta);
    return acc;
  };
  std::vector<double> best = p;
  double best_c = c_of(p);
  std::vector<double> logits(n);
  for (std::size_t t = 1; t <= opts.iterations; ++t) {
    double eta = opts.step_scale * beta;
    if (opts.diminishing) eta /= std::sqrt(static_cast<double>(t));
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double lp = std::log(std::max(p[j], kFloor));
      logits[j] = lp - eta * (lambda[j] + (1.0 + lp) / beta);
      hi = std::max(hi, logits[j]);
    }
    double z = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      p[j] = std::exp(logits[j] - hi);
      z += p[j];
    }
    for (double& v : p) v = std::max(v / z, kFloor);
    const double c = c_of(p);
    if (c < best_c) {
      best_c = c;
      best = p;
    }
  }
  double total = 0.0;
  for (double v : best) total += v;
  for (double& v : best) v /= total;

  LogZResult r;
  r.p_star = ProbabilityVector(std::move(best));
  r.solver = LogZSolver::mirror_descent;
  if (opts.samples) {
    r.c_value = evaluate_C(r.p_star, [&](std::size_t j) { return lambda[j]; }, beta, *opts.samples, seed);
  } else {
    r.c_value = free_energy(r.p_star, lambda, beta);
  }
  r.log_z = -beta * r.c_value;
  return r;
}

struct LogZOptions {
  LogZSolver solver = LogZSolver::closed_form;
  MirrorDescentOptions mirror{};
};

/// Runs the chosen solver on already-extracted diagonal values.
inline LogZResult solve_log_partition(std::span<const double> lambda_hat, double beta,
                                      const LogZOptions& opts = {}, std::uint64_t seed = 0) {
  if (opts.solver == LogZSolver::closed_form) return minimize_closed_form(lambda_hat, beta);
  return minimize_mirror_descent([&](std::size_t j) { return lambda_hat[j]; }, lambda_hat.size(), beta,
                                 opts.mirror, seed);
}

/// Extracts lambda_hat from `prep` and solves for log Z.
template <StatePreparer P>
LogZResult estimate_log_partition(const PauliHamiltonian& h, const P& prep, double beta,
                                  const LogZOptions& opts = {}, std::uint64_t seed = 0) {
  const auto lambda_hat = extract_spectrum(prep, h);
  return solve_log_partition(lambda_hat, beta, opts, seed);
}

/// min over pairings of max_j |a_j - b_j|: the sorted infinity distance.
inline double sorted_inf_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sorted_inf_distance: length mismatch");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

/// beta * ||lambda_hat - lambda||_inf under the best pairing, plus the
/// solver's own gap to the closed-form optimum on lambda_hat.
inline double log_partition_error_bound(const LogZResult& r, std::span<const double> lambda_hat,
                                        std::span<const double> exact_spectrum, double beta) {
  const double spectral = beta * sorted_inf_distance({lambda_hat.begin(), lambda_hat.end()},
                                                     {exact_spectrum.begin(), exact_spectrum.end()});
  const double solver_gap = std::abs(r.log_z - log_sum_exp_neg(lambda_hat, beta));
  return spectral + solver_gap;
}

}  // namespace hqhl
