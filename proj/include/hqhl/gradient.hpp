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

// Gradient of the dual loss L(nu) = log Z(nu) + beta sum_l nu_l e_l:
//
//   dL/dnu_l = -beta tr(rho_beta(nu) E_l) + beta e_l.
//
// The sampled estimator replaces rho_beta by sum_j p*_j U|j><j|U^dagger and
// averages <j|U^dagger E_l U|j> over indices drawn from p*. One index draw
// is shared by all m components.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hqhl/exact.hpp"
#include "hqhl/pauli.hpp"
#include "hqhl/probability.hpp"
#include "hqhl/random.hpp"
#include "hqhl/statevector.hpp"

namespace hqhl {

using DualGradient = std::vector<double>;

namespace detail {

inline void check_record(const PauliHamiltonian& h, const MeasurementRecord& record, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("dual gradient: beta must be >= 0");
  if (beta > 0.0) record.check_aligned(h, beta);
  else if (record.size() != h.size())
    throw std::invalid_argument("dual gradient: record does not match the Hamiltonian");
}

}  // namespace detail

/// Exact gradient through the dense Gibbs state of h = H(nu).
inline DualGradient exact_dual_gradient(const PauliHamiltonian& h, double beta,
                                        const MeasurementRecord& record) {
  detail::check_record(h, record, beta);
  DualGradient s(h.size(), 0.0);
  if (beta == 0.0) return s;
  const auto model = exact_gibbs_expectations(h, beta);
  for (std::size_t l = 0; l < h.size(); ++l)
    s[l] = -beta * model.observations[l].value + beta * record.observations[l].value;
  return s;
}

/// Sampled gradient: K*D indices drawn once from p_star, median of D means
/// of K per component. Deterministic given `seed`.
template <StatePreparer P>
DualGradient sampled_dual_gradient(const P& prep, const ProbabilityVector& p_star,
                                   const PauliHamiltonian& h, const MeasurementRecord& record,
                                   double beta, const SampleSize& samples,
                                   const ExpectationBackend& backend, std::uint64_t seed) {
  detail::check_record(h, record, beta);
  samples.validate();
  if (prep.num_qubits() != h.num_qubits())
    throw std::invalid_argument("sampled_dual_gradient: circuit and Hamiltonian widths differ");
  if (p_star.size() != h.dimension())
    throw std::invalid_argument("sampled_dual_gradient: p* length must equal 2^n");
  const std::size_t m = h.size();
  DualGradient s(m, 0.0);
  if (beta == 0.0) return s;

  const DiscreteSampler sampler(p_star.values());
  Rng rng = substream(seed, {0x67726164ULL});
  const auto idx = sampler.draw(rng, samples.total());

  // samples_by_term[l][k] = <j_k|U^dagger E_l U|j_k>
  std::vector<std::vector<double>> samples_by_term(m, std::vector<double>(idx.size()));
  std::map<std::size_t, std::vector<double>> cache;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (backend.is_exact()) {
      auto it = cache.find(idx[k]);
      if (it == cache.end()) {
        const auto state = prep.prepare(idx[k]);
        std::vector<double> v(m);
        for (std::size_t l = 0; l < m; ++l) v[l] = pauli_expectation(state, h.term(l).string);
        it = cache.emplace(idx[k], std::move(v)).first;
      }
      for (std::size_t l = 0; l < m; ++l) samples_by_term[l][k] = it->second[l];
    } else {
      const auto state = prep.prepare(idx[k]);
      for (std::size_t l = 0; l < m; ++l)
        samples_by_term[l][k] = observable(state, h.term(l).string, backend, derive_seed(seed, {k, l}));
    }
  }
  for (std::size_t l = 0; l < m; ++l)
    s[l] = -beta * median_of_means(samples_by_term[l], samples.groups) +
           beta * record.observations[l].value;
  return s;
}

/// rho* = sum_j p*_j U|j><j|U^dagger.
template <StatePreparer P>
DensityMatrix reconstruct_gibbs_approx(const P& prep, const ProbabilityVector& p_star) {
  const std::uint64_t dim = std::uint64_t{1} << prep.num_qubits();
  if (p_star.size() != dim)
    throw std::invalid_argument("reconstruct_gibbs_approx: p* length must equal 2^n");
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint64_t j = 0; j < dim; ++j) {
    const double w = p_star[j];
    if (w == 0.0) continue;
    const auto state = prep.prepare(j);
    const auto amps = state.amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> v(amps.data(), d);
    rho.noalias() += w * (v * v.adjoint());
  }
  return DensityMatrix(std::move(rho));
}

/// The right-hand side sqrt(2 beta ||lambda_hat - lambda||_inf) of the
/// trace-distance bound for rho* built from softmax(-beta lambda_hat).
inline double gibbs_approx_bound(double beta, double eigenvalue_error) {
  return std::sqrt(2.0 * beta * eigenvalue_error);
}

}  // namespace hqhl
