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
 * @file svqe.hpp
 * @brief Stochastic variational eigensolver.
 *
 * A circuit U(theta) is trained so that the basis states |j> are mapped onto
 * eigenvectors of H. The objective is the weighted energy
 *
 *   M(theta) = sum_j q_j <j| U^dagger H U |j>,   q_1 < q_2 < ... < q_N,
 *
 * which is bounded below by sum_j q_j lambda_j^desc (eigenvalues majorize
 * diagonals) with equality exactly when U diagonalizes H. Because q is
 * increasing, training pushes |N-1> toward the ground state, so lambda_hat
 * comes out roughly descending in j. Callers treat (j, lambda_hat_j) as an
 * opaque pairing.
 *
 * M is either summed over all N indices or estimated by drawing T*D indices
 * from q and taking the median of D means of T samples. Gradients use the
 * parameter-shift rule with both shifted evaluations sharing one index draw.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "hqhl/pauli.hpp"
#include "hqhl/random.hpp"
#include "hqhl/statevector.hpp"

namespace hqhl {

/// Strictly increasing positive weights summing to 1 (within 1e-12).
class WeightDistribution {
 public:
  explicit WeightDistribution(std::vector<double> q) : q_(std::move(q)) {
    if (q_.empty()) throw std::invalid_argument("WeightDistribution: empty");
    double sum = 0.0;
    for (std::size_t j = 0; j < q_.size(); ++j) {
      if (!(q_[j] > 0.0) || !std::isfinite(q_[j]))
        throw std::invalid_argument("WeightDistribution: weights must be positive");
      if (j > 0 && !(q_[j] > q_[j - 1]))
        throw std::invalid_argument("WeightDistribution: weights must be strictly increasing");
      sum += q_[j];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("WeightDistribution: weights must sum to 1");
  }

  std::size_t size() const noexcept { return q_.size(); }
  std::span<const double> values() const noexcept { return q_; }
  double operator[](std::size_t j) const { return q_[j]; }

 private:
  std::vector<double> q_;
};

/// Linear ramp q_j = 2j / (N(N+1)), j = 1..N.
inline WeightDistribution default_weights(std::size_t n) {
  if (n < 1) throw std::invalid_argument("default_weights: N must be >= 1");
  const double denom = static_cast<double>(n) * static_cast<double>(n + 1);
  std::vector<double> q(n);
  for (std::size_t j = 0; j < n; ++j) q[j] = 2.0 * static_cast<double>(j + 1) / denom;
  return WeightDistribution(std::move(q));
}

struct SvqeConfig {
  std::size_t iterations = 500;
  SampleSize samples{16, 5};
  double learning_rate = 0.5;
  ExpectationBackend backend{};
  std::uint64_t seed = 0;
  /// Sum M over all indices when N is at most this and the backend is exact.
  std::size_t full_sum_threshold = 4096;
  /// Record the exact M every `log_every` iterations (0 disables).
  std::size_t log_every = 0;

  void validate() const {
    if (iterations < 1) throw std::invalid_argument("SvqeConfig: iterations must be >= 1");
    samples.validate();
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
      throw std::invalid_argument("SvqeConfig: learning rate must be > 0");
    if (!backend.is_exact()) backend.shots.validate();
  }

  bool uses_full_sum(std::uint64_t dimension) const noexcept {
    return backend.is_exact() && dimension <= full_sum_threshold;
  }
};

namespace detail {

inline constexpr std::uint64_t kIndexStream = 0x696e6478ULL;
inline constexpr std::uint64_t kShotStream = 0x73686f74ULL;

template <StatePreparer P>
double diagonal_energy(const P& prep, const PauliHamiltonian& h, std::uint64_t j,
                       const ExpectationBackend& backend, std::uint64_t seed) {
  return energy(prep.prepare(j), h, backend, seed);
}

}  // namespace detail

/// Exact diagonal values lambda_hat_j = <j|U^dagger H U|j> for every j.
template <StatePreparer P>
std::vector<double> extract_spectrum(const P& prep, const PauliHamiltonian& h) {
  if (prep.num_qubits() != h.num_qubits())
    throw std::invalid_argument("extract_spectrum: circuit and Hamiltonian widths differ");
  const std::uint64_t dim = h.dimension();
  std::vector<double> out(dim);
  if (h.is_zero()) return out;
  for (std::uint64_t j = 0; j < dim; ++j) out[j] = hamiltonian_expectation(prep.prepare(j), h);
  return out;
}

/// M(theta) for arbitrary nonnegative weights `q` (length N). Full sum when
/// the config allows it, median-of-means importance sampling otherwise. The
/// sampled path is a pure function of `seed`.
template <StatePreparer P>
double objective_M(const P& prep, const PauliHamiltonian& h, std::span<const double> q,
                   const SvqeConfig& config, std::uint64_t seed) {
  if (prep.num_qubits() != h.num_qubits())
    throw std::invalid_argument("objective_M: circuit and Hamiltonian widths differ");
  const std::uint64_t dim = h.dimension();
  if (q.size() != dim) throw std::invalid_argument("objective_M: weight count must equal 2^n");
  if (h.is_zero()) return 0.0;
  if (config.uses_full_sum(dim)) {
    double acc = 0.0;
    for (std::uint64_t j = 0; j < dim; ++j)
      if (q[j] != 0.0) acc += q[j] * hamiltonian_expectation(prep.prepare(j), h);
    return acc;
  }
  const DiscreteSampler sampler(q);
  Rng rng = substream(seed, {detail::kIndexStream});
  const auto indices = sampler.draw(rng, config.samples.total());
  std::map<std::uint64_t, double> exact_cache;
  std::vector<double> values(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const std::uint64_t j = indices[k];
    if (config.backend.is_exact()) {
      auto it = exact_cache.find(j);
      if (it == exact_cache.end())
        it = exact_cache.emplace(j, hamiltonian_expectation(prep.prepare(j), h)).first;
      values[k] = it->second;
    } else {
      values[k] = detail::diagonal_energy(prep, h, j, config.backend,
                                          derive_seed(seed, {detail::kShotStream, k}));
    }
  }
  return median_of_means(values, config.samples.groups);
}

/// dM/dtheta_i = (M(theta + pi/2 e_i) - M(theta - pi/2 e_i)) / 2 for every
/// angle. Both evaluations of every angle reuse the same seed, hence the
/// same sampled indices and shot streams.
inline std::vector<double> parameter_shift_gradient(const AnsatzCircuit& circuit,
                                                    const PauliHamiltonian& h,
                                                    std::span<const double> q,
                                                    const SvqeConfig& config,
                                                    std::uint64_t seed) {
  std::vector<double> grad(circuit.num_parameters(), 0.0);
  if (h.is_zero()) return grad;
  constexpr double kShift = std::numbers::pi / 2.0;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double plus = objective_M(circuit.shifted(i, kShift), h, q, config, seed);
    const double minus = objective_M(circuit.shifted(i, -kShift), h, q, config, seed);
    grad[i] = 0.5 * (plus - minus);
  }
  return grad;
}

namespace detail {

/// out = H a.
inline void apply_hamiltonian(std::span<const cplx> a, std::span<cplx> out, const PauliHamiltonian& h) {
  std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
  for (const auto& t : h.terms()) {
    if (t.coeff == 0.0) continue;
    const std::uint64_t x = t.string.x_mask();
    for (std::uint64_t i = 0; i < a.size(); ++i) out[i ^ x] += t.coeff * t.string.factor(i) * a[i];
  }
}

/// Im <sigma phi|chi> with sigma = Z (rz) or Y (ry) on `qubit`.
inline double generator_overlap_imag(std::span<const cplx> phi, std::span<const cplx> chi, int n,
                                     int qubit, bool is_y) {
  const std::uint64_t bit = qubit_bit(qubit, n);
  cplx acc{0.0, 0.0};
  if (!is_y) {
    for (std::uint64_t i = 0; i < phi.size(); ++i)
      acc += (i & bit) ? -std::conj(phi[i]) * chi[i] : std::conj(phi[i]) * chi[i];
  } else {
    // (Y phi)_{i0} = -i phi_{i1}, (Y phi)_{i1} = i phi_{i0}
    constexpr cplx kI{0.0, 1.0};
    for (std::uint64_t i = 0; i < phi.size(); ++i) {
      if (i & bit) continue;
      const std::uint64_t k = i | bit;
      acc += std::conj(-kI * phi[k]) * chi[i] + std::conj(kI * phi[i]) * chi[k];
    }
  }
  return acc.imag();
}

}  // namespace detail

/// Full-sum M(theta) together with its parameter-shift gradient, evaluated in
/// closed form. For a rotation R(t) = exp(-i t sigma / 2) the shift
/// difference (M_+ - M_-)/2 equals -Im <sigma phi|chi> summed over the basis
/// states, where phi is the state right after the gate and chi is H
/// propagated back to the same point. One forward and one backward sweep per
/// basis state replace the 2P shifted evaluations of the literal rule and
/// give the same numbers to rounding.
inline std::pair<double, std::vector<double>> full_sum_objective_and_gradient(
    const AnsatzCircuit& circuit, const PauliHamiltonian& h, std::span<const double> q) {
  const int n = circuit.num_qubits();
  if (n != h.num_qubits()) throw std::invalid_argument("objective: circuit and Hamiltonian widths differ");
  const std::uint64_t dim = h.dimension();
  if (q.size() != dim) throw std::invalid_argument("objective: weight count must equal 2^n");
  std::vector<double> grad(circuit.num_parameters(), 0.0);
  if (h.is_zero()) return {0.0, grad};
  const auto gates = circuit.gates();
  double value = 0.0;
  std::vector<cplx> chi(dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    if (q[j] == 0.0) continue;
    StateVector psi = circuit.prepare(j);
    auto phi = psi.mutable_amplitudes();
    detail::apply_hamiltonian(phi, chi, h);
    cplx e{0.0, 0.0};
    for (std::uint64_t i = 0; i < dim; ++i) e += std::conj(phi[i]) * chi[i];
    value += q[j] * e.real();
    std::size_t param = grad.size();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
      if (const auto* rz = std::get_if<Rz>(&*it)) {
        grad[--param] -= q[j] * detail::generator_overlap_imag(phi, chi, n, rz->qubit, false);
        detail::rz_in_place(phi, n, rz->qubit, -rz->angle);
        detail::rz_in_place(chi, n, rz->qubit, -rz->angle);
      } else if (const auto* ry = std::get_if<Ry>(&*it)) {
        grad[--param] -= q[j] * detail::generator_overlap_imag(phi, chi, n, ry->qubit, true);
        detail::ry_in_place(phi, n, ry->qubit, -ry->angle);
        detail::ry_in_place(chi, n, ry->qubit, -ry->angle);
      } else {
        const auto& cx = std::get<Cnot>(*it);
        detail::cnot_in_place(phi, n, cx.control, cx.target);
        detail::cnot_in_place(chi, n, cx.control, cx.target);
      }
    }
  }
  return {value, grad};
}

/// The gradient used by training: the closed-form shift difference when M is
/// a full sum, the literal two-evaluation rule otherwise.
inline std::vector<double> svqe_gradient(const AnsatzCircuit& circuit, const PauliHamiltonian& h,
                                         std::span<const double> q, const SvqeConfig& config,
                                         std::uint64_t seed) {
  if (config.uses_full_sum(h.dimension())) return full_sum_objective_and_gradient(circuit, h, q).second;
  return parameter_shift_gradient(circuit, h, q, config, seed);
}

/// Exact M with everything summed, regardless of the configured estimator.
template <StatePreparer P>
double exact_objective(const P& prep, const PauliHamiltonian& h, std::span<const double> q) {
  SvqeConfig exact;
  exact.full_sum_threshold = std::numeric_limits<std::size_t>::max();
  return objective_M(prep, h, q, exact, 0);
}

/// sum_j q_j lambda_j with lambda sorted descending against ascending q: the
/// smallest value M can take.
inline double majorization_lower_bound(std::vector<double> eigenvalues, std::span<const double> q) {
  if (eigenvalues.size() != q.size())
    throw std::invalid_argument("majorization_lower_bound: length mismatch");
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  double acc = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) acc += q[j] * eigenvalues[j];
  return acc;
}

struct SvqeLogEntry {
  std::size_t iteration = 0;
  double objective = 0.0;
};

struct SpectrumEstimate {
  std::vector<double> lambda_hat;
  AnsatzCircuit circuit;
  /// Exact M at the trained angles.
  double objective = 0.0;
  std::vector<SvqeLogEntry> history;
};

/// Plain gradient descent theta <- theta - r * grad for config.iterations
/// steps from `initial`. Iteration t draws from substream (seed, t), so the
/// run is reproducible. The returned spectrum is always extracted exactly.
inline SpectrumEstimate train_svqe(const PauliHamiltonian& h, const AnsatzCircuit& initial,
                                   const WeightDistribution& q, const SvqeConfig& config) {
  config.validate();
  if (initial.num_qubits() != h.num_qubits())
    throw std::invalid_argument("train_svqe: circuit and Hamiltonian widths differ");
  if (q.size() != h.dimension()) throw std::invalid_argument("train_svqe: weight count must equal 2^n");
  SpectrumEstimate out;
  out.circuit = initial;
  auto log = [&](std::size_t it) {
    if (config.log_every > 0 && (it % config.log_every == 0 || it == config.iterations))
      out.history.push_back({it, exact_objective(out.circuit, h, q.values())});
  };
  log(0);
  std::vector<double> theta(initial.theta().begin(), initial.theta().end());
  if (!h.is_zero()) {
    for (std::size_t it = 1; it <= config.iterations; ++it) {
      const auto grad = svqe_gradient(out.circuit, h, q.values(), config, derive_seed(config.seed, {it}));
      for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= config.learning_rate * grad[i];
      out.circuit = out.circuit.with_theta(theta);
      log(it);
    }
  } else {
    for (std::size_t it = 1; it <= config.iterations; ++it) log(it);
  }
  out.lambda_hat = extract_spectrum(out.circuit, h);
  double m = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) m += q[j] * out.lambda_hat[j];
  out.objective = m;
  return out;
}

/// Trains from angles drawn uniformly on [0, 2 pi) with default weights.
inline SpectrumEstimate train_svqe(const PauliHamiltonian& h, int depth, const SvqeConfig& config) {
  const auto init = AnsatzCircuit::random(h.num_qubits(), depth, derive_seed(config.seed, {0x696e6974ULL}));
  return train_svqe(h, init, default_weights(h.dimension()), config);
}

/// Depth used when none is given: 10, 20, 40 for 3, 4, 5 qubits, doubling
/// per extra qubit beyond that and 10 below.
inline int default_depth(int n) {
  if (n <= 3) return 10;
  int d = 20;
  for (int k = 4; k < n; ++k) d *= 2;
  return d;
}

}  // namespace hqhl
