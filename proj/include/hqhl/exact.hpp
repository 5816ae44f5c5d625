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
 * @file exact.hpp
 * @brief Brute-force ground truth by dense diagonalization.
 *
 * Everything here scales as 4^n memory and 8^n time and is capped at
 * n <= 12. It generates synthetic measurement data and serves as the
 * reference that the variational and sampled estimators are checked against.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqhl/pauli.hpp"
#include "hqhl/probability.hpp"
#include "hqhl/statevector.hpp"

namespace hqhl {

inline constexpr int kDenseQubitCap = 12;

namespace detail {

inline void check_dense_cap(int n, int cap) {
  if (n > cap)
    throw std::invalid_argument("dense operation on " + std::to_string(n) +
                                " qubits exceeds the cap of " + std::to_string(cap));
}

}  // namespace detail

/// sum_l nu_l E_l as an N x N matrix, filled column by column from the
/// mask action of each string.
inline Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h, int cap = kDenseQubitCap) {
  detail::check_dense_cap(h.num_qubits(), cap);
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    if (t.coeff == 0.0) continue;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i) {
      const auto row = static_cast<Eigen::Index>(i ^ t.string.x_mask());
      m(row, static_cast<Eigen::Index>(i)) += t.coeff * t.string.factor(i);
    }
  }
  return m;
}

inline Eigen::MatrixXcd dense_matrix(const PauliString& p, int cap = kDenseQubitCap) {
  return dense_matrix(PauliHamiltonian({{1.0, p}}), cap);
}

/// Ascending eigenvalues with aligned orthonormal eigenvectors (columns).
/// Each eigenvector's first component of magnitude > 1e-10 is real positive.
struct Spectrum {
  std::vector<double> eigenvalues;
  Eigen::MatrixXcd eigenvectors;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

inline Spectrum eigensystem(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensystem: solver failed");
  Spectrum s;
  s.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + solver.eigenvalues().size());
  s.eigenvectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < s.eigenvectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < s.eigenvectors.rows(); ++r) {
      const cplx v = s.eigenvectors(r, c);
      if (std::abs(v) > 1e-10) {
        s.eigenvectors.col(c) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  return s;
}

inline Spectrum exact_eigensystem(const PauliHamiltonian& h, int cap = kDenseQubitCap) {
  return eigensystem(dense_matrix(h, cap));
}

inline std::vector<double> exact_eigenvalues(const PauliHamiltonian& h, int cap = kDenseQubitCap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h, cap),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: solver failed");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

/// log tr exp(-beta H).
inline double exact_log_partition(const PauliHamiltonian& h, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("exact_log_partition: beta must be > 0");
  const auto eig = exact_eigenvalues(h);
  return log_sum_exp_neg(eig, beta);
}

/// Closed-form minimizer of sum_j p_j lambda_j + beta^{-1} sum_j p_j log p_j
/// over the simplex: softmax(-beta lambda).
inline ProbabilityVector gibbs_probabilities(std::span<const double> eigenvalues, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("gibbs_probabilities: beta must be > 0");
  return boltzmann_weights(eigenvalues, beta);
}

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  /// Validates trace 1 (1e-9), hermiticity (1e-9) and PSD (-1e-9).
  explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
      throw std::invalid_argument("DensityMatrix: must be square and non-empty");
    if (std::abs(m_.trace() - cplx{1.0, 0.0}) > 1e-9)
      throw std::invalid_argument("DensityMatrix: trace is not 1");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-9)
      throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }

  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  Eigen::Index dimension() const noexcept { return m_.rows(); }

  /// Sum_j w_j v_j v_j^dagger for orthonormal columns v_j.
  static DensityMatrix from_ensemble(const Eigen::MatrixXcd& vectors, std::span<const double> w) {
    if (static_cast<std::size_t>(vectors.cols()) != w.size())
      throw std::invalid_argument("DensityMatrix::from_ensemble: weight count mismatch");
    Eigen::VectorXd wv(static_cast<Eigen::Index>(w.size()));
    for (std::size_t j = 0; j < w.size(); ++j) wv(static_cast<Eigen::Index>(j)) = w[j];
    Eigen::MatrixXcd m = vectors * wv.asDiagonal() * vectors.adjoint();
    return DensityMatrix(std::move(m));
  }

 private:
  Eigen::MatrixXcd m_;
};

/// exp(-beta H) / tr exp(-beta H).
inline DensityMatrix exact_gibbs_state(const PauliHamiltonian& h, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("exact_gibbs_state: beta must be > 0");
  const auto spec = exact_eigensystem(h);
  const auto p = gibbs_probabilities(spec.eigenvalues, beta);
  return DensityMatrix::from_ensemble(spec.eigenvectors, p.values());
}

inline double expectation(const DensityMatrix& rho, const PauliString& p) {
  const auto& m = rho.matrix();
  if (m.rows() != static_cast<Eigen::Index>(std::uint64_t{1} << p.num_qubits()))
    throw std::invalid_argument("expectation: dimension mismatch");
  // tr(rho P) = sum_i factor(i) <i|rho|i ^ x>
  cplx acc{0.0, 0.0};
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(m.rows()); ++i)
    acc += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ p.x_mask())) *
           p.factor(i);
  return acc.real();
}

struct Observation {
  PauliString string;
  double value = 0.0;
};

/// Gibbs-state measurement data e_l = tr(rho_beta E_l) for distinct E_l.
struct MeasurementRecord {
  double beta = 1.0;
  std::vector<Observation> observations;

  std::size_t size() const noexcept { return observations.size(); }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(observations.size());
    for (const auto& o : observations) out.push_back(o.value);
    return out;
  }

  std::vector<PauliString> strings() const {
    std::vector<PauliString> out;
    out.reserve(observations.size());
    for (const auto& o : observations) out.push_back(o.string);
    return out;
  }

  void validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::invalid_argument("MeasurementRecord: beta must be > 0");
    for (std::size_t a = 0; a < observations.size(); ++a) {
      const double v = observations[a].value;
      if (!(v >= -1.0 && v <= 1.0))
        throw std::invalid_argument("MeasurementRecord: observation value outside [-1, 1]");
      for (std::size_t b = 0; b < a; ++b)
        if (observations[a].string == observations[b].string)
          throw std::invalid_argument("MeasurementRecord: duplicate Pauli string " +
                                      observations[a].string.label());
    }
  }

  /// Throws unless the record strings match `h` term by term and beta agrees.
  void check_aligned(const PauliHamiltonian& h, double expected_beta) const {
    if (beta != expected_beta)
      throw std::invalid_argument("MeasurementRecord: beta does not match");
    if (observations.size() != h.size())
      throw std::invalid_argument("MeasurementRecord: observation count does not match term count");
    for (std::size_t l = 0; l < h.size(); ++l)
      if (!(observations[l].string == h.term(l).string))
        throw std::invalid_argument("MeasurementRecord: string " + std::to_string(l) +
                                    " does not match the Hamiltonian term");
  }
};

/// Expectations of `strings` in the Gibbs state of h at inverse temperature
/// beta, clamped to [-1, 1].
inline MeasurementRecord exact_gibbs_expectations(const PauliHamiltonian& h, double beta,
                                                  std::span<const PauliString> strings) {
  if (!(beta > 0.0)) throw std::invalid_argument("exact_gibbs_expectations: beta must be > 0");
  const auto spec = exact_eigensystem(h);
  const auto p = gibbs_probabilities(spec.eigenvalues, beta);
  MeasurementRecord rec;
  rec.beta = beta;
  for (const auto& s : strings) {
    if (s.num_qubits() != h.num_qubits())
      throw std::invalid_argument("exact_gibbs_expectations: string width mismatch");
    double acc = 0.0;
    for (Eigen::Index j = 0; j < spec.eigenvectors.cols(); ++j) {
      const double pj = p[static_cast<std::size_t>(j)];
      if (pj == 0.0) continue;
      const auto col = spec.eigenvectors.col(j);
      acc += pj * detail::pauli_expectation_raw(
                      std::span<const cplx>(col.data(), static_cast<std::size_t>(col.size())), s);
    }
    rec.observations.push_back({s, std::clamp(acc, -1.0, 1.0)});
  }
  rec.validate();
  return rec;
}

inline MeasurementRecord exact_gibbs_expectations(const PauliHamiltonian& h, double beta) {
  const auto strings = h.strings();
  return exact_gibbs_expectations(h, beta, strings);
}

/// Half the trace norm of rho1 - rho2.
inline double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dimension() != rho2.dimension())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::MatrixXcd diff = rho1.matrix() - rho2.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
  return std::clamp(0.5 * solver.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

/// Quantum relative entropy S(rho || sigma) in nats; +inf when the support
/// of rho is not contained in that of sigma.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dimension() != sigma.dimension())
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> er(rho.matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma.matrix());
  const Eigen::MatrixXd overlap = (er.eigenvectors().adjoint() * es.eigenvectors()).cwiseAbs2();
  constexpr double kZero = 1e-14;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < er.eigenvalues().size(); ++i) {
    const double a = er.eigenvalues()(i);
    if (a <= kZero) continue;
    acc += a * std::log(a);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double w = overlap(i, k);
      if (w <= kZero) continue;
      const double b = es.eigenvalues()(k);
      if (b <= kZero) return std::numeric_limits<double>::infinity();
      acc -= a * w * std::log(b);
    }
  }
  return std::max(acc, 0.0);
}

/// Prepares U|j> from the columns of an explicit unitary, e.g. the exact
/// eigenvector matrix. Models a perfectly trained circuit.
class MatrixPreparer {
 public:
  explicit MatrixPreparer(Eigen::MatrixXcd u) : u_(std::move(u)) {
    const auto dim = static_cast<std::uint64_t>(u_.rows());
    if (u_.rows() != u_.cols() || dim < 2 || (dim & (dim - 1)) != 0)
      throw std::invalid_argument("MatrixPreparer: need a square 2^n matrix");
    n_ = std::countr_zero(dim);
    const Eigen::MatrixXcd gram = u_.adjoint() * u_;
    if ((gram - Eigen::MatrixXcd::Identity(u_.rows(), u_.cols())).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("MatrixPreparer: matrix is not unitary");
  }

  int num_qubits() const noexcept { return n_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return u_; }

  StateVector prepare(std::uint64_t j) const {
    if (j >= static_cast<std::uint64_t>(u_.cols())) throw std::out_of_range("MatrixPreparer: index");
    const auto col = u_.col(static_cast<Eigen::Index>(j));
    return StateVector::from_amplitudes(std::vector<cplx>(col.data(), col.data() + col.size()));
  }

 private:
  Eigen::MatrixXcd u_;
  int n_ = 0;
};

/// A perfect diagonalizer of h.
inline MatrixPreparer oracle_preparer(const PauliHamiltonian& h) {
  return MatrixPreparer(exact_eigensystem(h).eigenvectors);
}

}  // namespace hqhl
