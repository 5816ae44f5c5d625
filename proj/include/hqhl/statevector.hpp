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
 * @file statevector.hpp
 * @brief Dense statevector simulation: gates, the layered ansatz, and
 * Pauli / Hamiltonian expectation values (exact or shot-sampled).
 *
 * Conventions:
 *   Rz(phi) = diag(e^{-i phi/2}, e^{i phi/2})
 *   Ry(phi) = [[cos phi/2, -sin phi/2], [sin phi/2, cos phi/2]]
 *   qubit 0 is the most significant bit of the basis index.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hqhl/pauli.hpp"
#include "hqhl/random.hpp"

namespace hqhl {

using cplx = std::complex<double>;

/// Largest register the dense simulator accepts.
inline constexpr int kMaxSimQubits = 24;

class StateVector {
 public:
  StateVector() = default;

  /// Takes ownership of amplitudes; the length must be 2^n and the norm 1
  /// within 1e-9.
  static StateVector from_amplitudes(std::vector<cplx> amps) {
    const std::size_t dim = amps.size();
    if (dim == 0 || (dim & (dim - 1)) != 0)
      throw std::invalid_argument("StateVector: length must be a power of two");
    StateVector s;
    s.n_ = std::countr_zero(dim);
    s.amps_ = std::move(amps);
    if (std::abs(s.norm_squared() - 1.0) > 1e-9)
      throw std::invalid_argument("StateVector: amplitudes are not normalized");
    return s;
  }

  int num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> mutable_amplitudes() noexcept { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
  }

 private:
  friend StateVector basis_state(int n, std::uint64_t j);
  int n_ = 0;
  std::vector<cplx> amps_;
};

/// |j> on n qubits.
inline StateVector basis_state(int n, std::uint64_t j) {
  if (n < 1 || n > kMaxSimQubits)
    throw std::invalid_argument("basis_state: qubit count out of range");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (j >= dim)
    throw std::out_of_range("basis_state: index " + std::to_string(j) + " out of range for " +
                            std::to_string(n) + " qubits");
  StateVector s;
  s.n_ = n;
  s.amps_.assign(dim, cplx{0.0, 0.0});
  s.amps_[j] = 1.0;
  return s;
}

struct Rz {
  int qubit;
  double angle;
};
struct Ry {
  int qubit;
  double angle;
};
struct Cnot {
  int control;
  int target;
};
using Gate = std::variant<Rz, Ry, Cnot>;

namespace detail {

inline void check_qubit(int q, int n) {
  if (q < 0 || q >= n)
    throw std::invalid_argument("gate: qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(n) + " qubits");
}

inline std::uint64_t qubit_bit(int q, int n) { return std::uint64_t{1} << (n - 1 - q); }

inline void rz_in_place(std::span<cplx> a, int n, int q, double phi) {
  const std::uint64_t bit = qubit_bit(q, n);
  const cplx p0 = std::polar(1.0, -0.5 * phi);
  const cplx p1 = std::polar(1.0, 0.5 * phi);
  for (std::uint64_t i = 0; i < a.size(); ++i) a[i] *= (i & bit) ? p1 : p0;
}

inline void ry_in_place(std::span<cplx> a, int n, int q, double phi) {
  const std::uint64_t bit = qubit_bit(q, n);
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    if (i & bit) continue;
    const cplx a0 = a[i];
    const cplx a1 = a[i | bit];
    a[i] = c * a0 - s * a1;
    a[i | bit] = s * a0 + c * a1;
  }
}

inline void cnot_in_place(std::span<cplx> a, int n, int control, int target) {
  const std::uint64_t cb = qubit_bit(control, n);
  const std::uint64_t tb = qubit_bit(target, n);
  for (std::uint64_t i = 0; i < a.size(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(a[i], a[i | tb]);
}

inline void apply_in_place(std::span<cplx> a, int n, const Gate& g) {
  std::visit(
      [&](const auto& gate) {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, Rz>) {
          check_qubit(gate.qubit, n);
          rz_in_place(a, n, gate.qubit, gate.angle);
        } else if constexpr (std::is_same_v<T, Ry>) {
          check_qubit(gate.qubit, n);
          ry_in_place(a, n, gate.qubit, gate.angle);
        } else {
          check_qubit(gate.control, n);
          check_qubit(gate.target, n);
          if (gate.control == gate.target)
            throw std::invalid_argument("cnot: control and target coincide");
          cnot_in_place(a, n, gate.control, gate.target);
        }
      },
      g);
}

}  // namespace detail

[[nodiscard]] inline StateVector apply_gate(StateVector state, const Gate& gate) {
  detail::apply_in_place(state.mutable_amplitudes(), state.num_qubits(), gate);
  return state;
}

/// Anything that maps a basis index j to the state U|j>. The trained ansatz
/// and oracle-built unitaries both model this.
template <class T>
concept StatePreparer = requires(const T& t, std::uint64_t j) {
  { t.num_qubits() } -> std::convertible_to<int>;
  { t.prepare(j) } -> std::same_as<StateVector>;
};

/// Layered hardware-efficient circuit: a leading Rz-Ry-Rz layer on every
/// qubit, then `depth` blocks of (CNOT ring 0->1, ..., n-1->0; Rz-Ry-Rz
/// layer). Angles are indexed (layer, qubit, slot) with 3n(depth+1) total.
/// The ring is empty for n = 1.
class AnsatzCircuit {
 public:
  AnsatzCircuit() = default;

  AnsatzCircuit(int n, int depth, std::vector<double> theta)
      : n_(n), depth_(depth), theta_(std::move(theta)) {
    if (n < 1 || n > kMaxSimQubits) throw std::invalid_argument("AnsatzCircuit: bad qubit count");
    if (depth < 0) throw std::invalid_argument("AnsatzCircuit: depth must be >= 0");
    if (theta_.size() != parameter_count(n, depth))
      throw std::invalid_argument("AnsatzCircuit: expected " +
                                  std::to_string(parameter_count(n, depth)) + " angles, got " +
                                  std::to_string(theta_.size()));
    for (double t : theta_)
      if (!std::isfinite(t)) throw std::invalid_argument("AnsatzCircuit: non-finite angle");
  }

  /// All angles zero.
  static AnsatzCircuit zeros(int n, int depth) {
    return AnsatzCircuit(n, depth, std::vector<double>(parameter_count(n, depth), 0.0));
  }

  /// Angles uniform on [0, 2 pi).
  static AnsatzCircuit random(int n, int depth, std::uint64_t seed) {
    Rng rng = substream(seed, {0x616e7361ULL});
    std::vector<double> theta(parameter_count(n, depth));
    for (double& t : theta) t = uniform_in(rng, 0.0, 2.0 * std::numbers::pi);
    return AnsatzCircuit(n, depth, std::move(theta));
  }

  static std::size_t parameter_count(int n, int depth) {
    return 3 * static_cast<std::size_t>(n) * static_cast<std::size_t>(depth + 1);
  }

  int num_qubits() const noexcept { return n_; }
  int depth() const noexcept { return depth_; }
  std::size_t num_parameters() const noexcept { return theta_.size(); }
  std::span<const double> theta() const noexcept { return theta_; }

  static std::size_t index(int n, int layer, int qubit, int slot) {
    return (static_cast<std::size_t>(layer) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(qubit)) * 3 + static_cast<std::size_t>(slot);
  }

  AnsatzCircuit with_theta(std::vector<double> theta) const {
    return AnsatzCircuit(n_, depth_, std::move(theta));
  }

  /// Angle i shifted by delta.
  AnsatzCircuit shifted(std::size_t i, double delta) const {
    AnsatzCircuit out = *this;
    out.theta_.at(i) += delta;
    return out;
  }

  /// Gate sequence in application order.
  std::vector<Gate> gates() const {
    std::vector<Gate> out;
    out.reserve(theta_.size() + static_cast<std::size_t>(depth_ * n_));
    auto rotations = [&](int layer) {
      for (int q = 0; q < n_; ++q) {
        out.push_back(Rz{q, theta_[index(n_, layer, q, 0)]});
        out.push_back(Ry{q, theta_[index(n_, layer, q, 1)]});
        out.push_back(Rz{q, theta_[index(n_, layer, q, 2)]});
      }
    };
    rotations(0);
    for (int d = 1; d <= depth_; ++d) {
      if (n_ > 1)
        for (int q = 0; q < n_; ++q) out.push_back(Cnot{q, (q + 1) % n_});
      rotations(d);
    }
    return out;
  }

  [[nodiscard]] StateVector apply(StateVector state) const {
    if (state.num_qubits() != n_)
      throw std::invalid_argument("AnsatzCircuit::apply: state has " +
                                  std::to_string(state.num_qubits()) + " qubits, circuit has " +
                                  std::to_string(n_));
    auto a = state.mutable_amplitudes();
    auto rotations = [&](int layer) {
      for (int q = 0; q < n_; ++q) {
        detail::rz_in_place(a, n_, q, theta_[index(n_, layer, q, 0)]);
        detail::ry_in_place(a, n_, q, theta_[index(n_, layer, q, 1)]);
        detail::rz_in_place(a, n_, q, theta_[index(n_, layer, q, 2)]);
      }
    };
    rotations(0);
    for (int d = 1; d <= depth_; ++d) {
      if (n_ > 1)
        for (int q = 0; q < n_; ++q) detail::cnot_in_place(a, n_, q, (q + 1) % n_);
      rotations(d);
    }
    return state;
  }

  StateVector prepare(std::uint64_t j) const { return apply(basis_state(n_, j)); }

 private:
  int n_ = 0;
  int depth_ = 0;
  std::vector<double> theta_;
};

[[nodiscard]] inline StateVector apply_ansatz(const AnsatzCircuit& circuit, StateVector state) {
  return circuit.apply(std::move(state));
}

namespace detail {

/// <a|P|a> for an arbitrary amplitude vector of matching length, unclamped.
inline double pauli_expectation_raw(std::span<const cplx> a, const PauliString& p) {
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  if (x == 0) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < a.size(); ++i) {
      const double w = std::norm(a[i]);
      acc += (std::popcount(i & z) % 2 == 1) ? -w : w;
    }
    return acc;
  }
  cplx sum{0.0, 0.0};
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    const cplx term = std::conj(a[i ^ x]) * a[i];
    sum += (std::popcount(i & z) % 2 == 1) ? -term : term;
  }
  return (p.y_phase() * sum).real();
}

}  // namespace detail

/// <psi|P|psi>, clamped to [-1, 1].
inline double pauli_expectation(const StateVector& state, const PauliString& p) {
  if (state.num_qubits() != p.num_qubits())
    throw std::invalid_argument("pauli_expectation: state and string widths differ");
  return std::clamp(detail::pauli_expectation_raw(state.amplitudes(), p), -1.0, 1.0);
}

/// sum_l nu_l <psi|E_l|psi>, exact.
inline double hamiltonian_expectation(const StateVector& state, const PauliHamiltonian& h) {
  if (state.num_qubits() != h.num_qubits())
    throw std::invalid_argument("hamiltonian_expectation: state and Hamiltonian widths differ");
  double acc = 0.0;
  for (const auto& t : h.terms())
    if (t.coeff != 0.0) acc += t.coeff * pauli_expectation(state, t.string);
  return acc;
}

/// Mean of `shots` simulated +-1 measurement outcomes of P, with
/// Pr[+1] = (1 + <P>) / 2.
inline double shot_pauli_estimate(const StateVector& state, const PauliString& p,
                                  std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("shot_pauli_estimate: shots must be >= 1");
  const double p_plus = 0.5 * (1.0 + pauli_expectation(state, p));
  std::uint64_t plus = 0;
  for (std::uint64_t s = 0; s < shots; ++s)
    if (uniform01(rng) < p_plus) ++plus;
  return (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
         static_cast<double>(shots);
}

/// Target precision and failure probability for shot-based Hamiltonian
/// estimates.
struct ShotBudget {
  double epsilon = 0.05;
  double eta = 0.05;

  void validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
      throw std::invalid_argument("shot budget: epsilon must be > 0");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("shot budget: eta must be in (0, 1)");
  }
};

/// Hoeffding sizing: each of the m terms is estimated to eps / ||nu||_1 with
/// failure probability eta / m, which needs ceil(2 ln(2m/eta) ||nu||_1^2 / eps^2)
/// shots per term.
inline std::uint64_t shots_per_term(const PauliHamiltonian& h, const ShotBudget& budget) {
  budget.validate();
  const double l1 = coefficient_norms(h).l1;
  if (l1 == 0.0) return 0;
  const double m = static_cast<double>(h.size());
  return static_cast<std::uint64_t>(
      std::ceil(2.0 * std::log(2.0 * m / budget.eta) * l1 * l1 / (budget.epsilon * budget.epsilon)));
}

struct HamiltonianEstimate {
  double value = 0.0;
  std::uint64_t shots = 0;
};

/// Shot-based estimate of <psi|H|psi>: error <= epsilon with probability
/// >= 1 - eta. Term l draws from substream (seed, l), so the result does not
/// depend on evaluation order. Zero-coefficient and identity terms use no
/// shots.
inline HamiltonianEstimate shot_hamiltonian_estimate(const StateVector& state,
                                                     const PauliHamiltonian& h,
                                                     const ShotBudget& budget,
                                                     std::uint64_t seed) {
  if (state.num_qubits() != h.num_qubits())
    throw std::invalid_argument("shot_hamiltonian_estimate: state and Hamiltonian widths differ");
  const std::uint64_t shots = shots_per_term(h, budget);
  HamiltonianEstimate out;
  for (std::size_t l = 0; l < h.size(); ++l) {
    const auto& t = h.term(l);
    if (t.coeff == 0.0) continue;
    if (t.string.is_identity()) {
      out.value += t.coeff;
      continue;
    }
    Rng rng = substream(seed, {l});
    out.value += t.coeff * shot_pauli_estimate(state, t.string, shots, rng);
    out.shots += shots;
  }
  return out;
}

/// How expectation values are obtained: exactly, or by simulated shots
/// sized from `shots`.
struct ExpectationBackend {
  enum class Kind { exact, shots };
  Kind kind = Kind::exact;
  ShotBudget shots{};

  static ExpectationBackend exact() { return {}; }
  static ExpectationBackend sampled(ShotBudget b) { return {Kind::shots, b}; }
  bool is_exact() const noexcept { return kind == Kind::exact; }
};

inline const char* to_string(ExpectationBackend::Kind k) {
  return k == ExpectationBackend::Kind::exact ? "exact" : "shots";
}

/// <psi|H|psi> under the chosen backend.
inline double energy(const StateVector& state, const PauliHamiltonian& h,
                     const ExpectationBackend& backend, std::uint64_t seed) {
  if (backend.is_exact()) return hamiltonian_expectation(state, h);
  return shot_hamiltonian_estimate(state, h, backend.shots, seed).value;
}

/// <psi|P|psi> under the chosen backend; shot mode sizes the single term
/// with the same Hoeffding rule at m = 1.
inline double observable(const StateVector& state, const PauliString& p,
                         const ExpectationBackend& backend, std::uint64_t seed) {
  if (backend.is_exact() || p.is_identity()) return pauli_expectation(state, p);
  const auto single = PauliHamiltonian({{1.0, p}});
  return shot_hamiltonian_estimate(state, single, backend.shots, seed).value;
}

}  // namespace hqhl
