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
 * @file pauli.hpp
 * @brief Pauli strings and Hamiltonians written as real combinations of them.
 *
 * A Pauli string on n qubits is stored as its per-qubit codes
 * (0, 1, 2, 3 for I, X, Y, Z). Qubit 0 is the leftmost tensor factor and the
 * most significant bit of a computational-basis index, so the string acts on
 * basis states through two bit masks:
 *
 *   P |i> = i^{#Y} (-1)^{popcount(i & z_mask)} |i ^ x_mask>
 *
 * with x_mask marking X/Y factors and z_mask marking Z/Y factors.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "hqhl/random.hpp"

namespace hqhl {

/// Upper limit on qubits for anything indexed by a 64-bit basis mask.
inline constexpr int kMaxMaskQubits = 62;

class PauliString {
 public:
  PauliString() = default;

  /// Validating constructor; rejects an empty sequence or a code outside 0..3.
  explicit PauliString(std::vector<std::uint8_t> codes) : codes_(std::move(codes)) {
    if (codes_.empty()) throw std::invalid_argument("PauliString: empty code sequence");
    if (codes_.size() > static_cast<std::size_t>(kMaxMaskQubits))
      throw std::invalid_argument("PauliString: too many qubits");
    const int n = num_qubits();
    for (int q = 0; q < n; ++q) {
      const auto c = codes_[static_cast<std::size_t>(q)];
      if (c > 3) throw std::invalid_argument("PauliString: code out of range 0..3");
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      if (c == 1 || c == 2) x_mask_ |= bit;
      if (c == 2 || c == 3) z_mask_ |= bit;
      if (c == 2) ++y_count_;
    }
  }

  int num_qubits() const noexcept { return static_cast<int>(codes_.size()); }
  std::span<const std::uint8_t> codes() const noexcept { return codes_; }
  std::uint8_t code(int qubit) const { return codes_.at(static_cast<std::size_t>(qubit)); }

  std::uint64_t x_mask() const noexcept { return x_mask_; }
  std::uint64_t z_mask() const noexcept { return z_mask_; }
  int y_count() const noexcept { return y_count_; }

  bool is_identity() const noexcept { return x_mask_ == 0 && z_mask_ == 0; }
  bool is_diagonal() const noexcept { return x_mask_ == 0; }

  /// Number of qubits acted on non-trivially.
  int weight() const noexcept { return std::popcount(x_mask_ | z_mask_); }

  /// Global phase i^{#Y} of the mask form.
  std::complex<double> y_phase() const noexcept {
    static constexpr std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPowers[y_count_ % 4];
  }

  /// Amplitude factor in P|i> = factor(i) |i ^ x_mask>.
  std::complex<double> factor(std::uint64_t basis_index) const noexcept {
    const bool odd = std::popcount(basis_index & z_mask_) % 2 == 1;
    const auto ph = y_phase();
    return odd ? -ph : ph;
  }

  /// "IYX"-style label.
  std::string label() const {
    static constexpr char kChars[4] = {'I', 'X', 'Y', 'Z'};
    std::string s;
    s.reserve(codes_.size());
    for (auto c : codes_) s.push_back(kChars[c]);
    return s;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.codes_ == b.codes_;
  }
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.codes_ <=> b.codes_;
  }

 private:
  std::vector<std::uint8_t> codes_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
};

/// Builds a PauliString from integer codes (0..3 for I, X, Y, Z).
template <class Int>
PauliString parse_pauli_string(std::span<const Int> codes) {
  std::vector<std::uint8_t> out;
  out.reserve(codes.size());
  for (auto c : codes) {
    if (c < 0 || c > 3) throw std::invalid_argument("parse_pauli_string: code out of range 0..3");
    out.push_back(static_cast<std::uint8_t>(c));
  }
  return PauliString(std::move(out));
}

inline PauliString parse_pauli_string(std::initializer_list<int> codes) {
  return parse_pauli_string(std::span<const int>(codes.begin(), codes.size()));
}

inline PauliString parse_pauli_string(const std::vector<int>& codes) {
  return parse_pauli_string(std::span<const int>(codes));
}

/// Inverse of parse_pauli_string.
inline std::vector<int> emit_codes(const PauliString& p) {
  return {p.codes().begin(), p.codes().end()};
}

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// H = sum_l coeff_l E_l over distinct Pauli strings of a common width.
///
/// Duplicate strings are merged on construction by summing coefficients; the
/// surviving term keeps the position of its first occurrence, and term order
/// is otherwise the construction order. Coefficient vectors elsewhere in the
/// library align with this order by index.
class PauliHamiltonian {
 public:
  PauliHamiltonian() = default;

  explicit PauliHamiltonian(std::vector<PauliTerm> terms) {
    if (terms.empty()) throw std::invalid_argument("PauliHamiltonian: needs at least one term");
    n_ = terms.front().string.num_qubits();
    for (auto& t : terms) {
      if (t.string.num_qubits() != n_)
        throw std::invalid_argument("PauliHamiltonian: terms act on different qubit counts");
      if (!std::isfinite(t.coeff))
        throw std::invalid_argument("PauliHamiltonian: non-finite coefficient");
      auto it = std::find_if(terms_.begin(), terms_.end(),
                             [&](const PauliTerm& u) { return u.string == t.string; });
      if (it != terms_.end()) {
        it->coeff += t.coeff;
      } else {
        terms_.push_back(std::move(t));
      }
    }
  }

  int num_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::uint64_t dimension() const noexcept { return std::uint64_t{1} << n_; }
  std::span<const PauliTerm> terms() const noexcept { return terms_; }
  const PauliTerm& term(std::size_t l) const { return terms_.at(l); }

  std::vector<double> coefficients() const {
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.coeff);
    return out;
  }

  std::vector<PauliString> strings() const {
    std::vector<PauliString> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.string);
    return out;
  }

  /// Same strings, new coefficients: the parameterized H(nu).
  PauliHamiltonian with_coefficients(std::span<const double> nu) const {
    if (nu.size() != terms_.size())
      throw std::invalid_argument("with_coefficients: coefficient count does not match term count");
    PauliHamiltonian out = *this;
    for (std::size_t l = 0; l < nu.size(); ++l) {
      if (!std::isfinite(nu[l]))
        throw std::invalid_argument("with_coefficients: non-finite coefficient");
      out.terms_[l].coeff = nu[l];
    }
    return out;
  }

  bool is_zero() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const PauliTerm& t) { return t.coeff == 0.0; });
  }

  friend bool operator==(const PauliHamiltonian&, const PauliHamiltonian&) = default;

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Builds a Hamiltonian from strings and aligned coefficients.
inline PauliHamiltonian make_hamiltonian(std::span<const PauliString> strings,
                                         std::span<const double> coeffs) {
  if (strings.size() != coeffs.size())
    throw std::invalid_argument("make_hamiltonian: strings and coefficients differ in length");
  std::vector<PauliTerm> terms;
  terms.reserve(strings.size());
  for (std::size_t l = 0; l < strings.size(); ++l) terms.push_back({coeffs[l], strings[l]});
  return PauliHamiltonian(std::move(terms));
}

enum class SpinModel { ising, xy, heisenberg };

inline const char* to_string(SpinModel m) {
  switch (m) {
    case SpinModel::ising: return "ising";
    case SpinModel::xy: return "xy";
    case SpinModel::heisenberg: return "heisenberg";
  }
  return "?";
}

inline SpinModel spin_model_from_string(const std::string& s) {
  if (s == "ising") return SpinModel::ising;
  if (s == "xy") return SpinModel::xy;
  if (s == "heisenberg") return SpinModel::heisenberg;
  throw std::invalid_argument("unknown spin model '" + s + "'");
}

/// Number of couplings the model builder expects: (J, h) for ising and
/// heisenberg, (J) for xy.
inline std::size_t spin_model_parameter_count(SpinModel m) {
  return m == SpinModel::xy ? 1 : 2;
}

namespace detail {

inline PauliString two_site(int n, int a, int b, std::uint8_t code) {
  std::vector<std::uint8_t> c(static_cast<std::size_t>(n), 0);
  c[static_cast<std::size_t>(a)] = code;
  c[static_cast<std::size_t>(b)] = code;
  return PauliString(std::move(c));
}

inline PauliString one_site(int n, int a, std::uint8_t code) {
  std::vector<std::uint8_t> c(static_cast<std::size_t>(n), 0);
  c[static_cast<std::size_t>(a)] = code;
  return PauliString(std::move(c));
}

}  // namespace detail

/// Periodic nearest-neighbour chains. Term order:
///   ising:      J Z_l Z_{l+1} (l = 0..n-1), then h X_l
///   xy:         J X_l X_{l+1}, then J Y_l Y_{l+1}
///   heisenberg: J X_l X_{l+1}, J Y_l Y_{l+1}, J Z_l Z_{l+1}, then h Z_l
/// with site n identified with site 0.
inline PauliHamiltonian build_many_body(SpinModel model, int n, std::span<const double> params) {
  if (n < 3) throw std::invalid_argument("build_many_body: periodic chains need n >= 3");
  if (n > kMaxMaskQubits) throw std::invalid_argument("build_many_body: too many qubits");
  if (params.size() != spin_model_parameter_count(model))
    throw std::invalid_argument(std::string("build_many_body: wrong parameter count for ") +
                                to_string(model));
  const double J = params[0];
  std::vector<PauliTerm> terms;
  auto bonds = [&](std::uint8_t code) {
    for (int l = 0; l < n; ++l) terms.push_back({J, detail::two_site(n, l, (l + 1) % n, code)});
  };
  auto field = [&](double h, std::uint8_t code) {
    for (int l = 0; l < n; ++l) terms.push_back({h, detail::one_site(n, l, code)});
  };
  switch (model) {
    case SpinModel::ising:
      bonds(3);
      field(params[1], 1);
      break;
    case SpinModel::xy:
      bonds(1);
      bonds(2);
      break;
    case SpinModel::heisenberg:
      bonds(1);
      bonds(2);
      bonds(3);
      field(params[1], 3);
      break;
  }
  return PauliHamiltonian(std::move(terms));
}

inline PauliHamiltonian build_many_body(SpinModel model, int n, std::initializer_list<double> params) {
  return build_many_body(model, n, std::span<const double>(params.begin(), params.size()));
}

struct CoefficientNorms {
  double l1 = 0.0;
  double l2 = 0.0;
};

inline CoefficientNorms coefficient_norms(std::span<const double> nu) {
  CoefficientNorms out;
  double sq = 0.0;
  for (double v : nu) {
    out.l1 += std::abs(v);
    sq += v * v;
  }
  out.l2 = std::sqrt(sq);
  return out;
}

inline CoefficientNorms coefficient_norms(const PauliHamiltonian& h) {
  const auto nu = h.coefficients();
  return coefficient_norms(nu);
}

/// sqrt(m) * ||nu||_2, an upper bound on the operator norm of H(nu)
/// (Cauchy-Schwarz over the term expectations, each bounded by 1).
inline double spectral_norm_bound(const PauliHamiltonian& h) {
  return std::sqrt(static_cast<double>(h.size())) * coefficient_norms(h).l2;
}

/// m distinct non-identity strings drawn uniformly, coefficients uniform on
/// [-1, 1]. Deterministic in `seed`.
inline PauliHamiltonian random_instance(int n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || n > 30) throw std::invalid_argument("random_instance: n must be in 1..30");
  if (m < 1) throw std::invalid_argument("random_instance: m must be >= 1");
  const std::uint64_t non_identity = (std::uint64_t{1} << (2 * n)) - 1;
  if (m > non_identity)
    throw std::invalid_argument("random_instance: only " + std::to_string(non_identity) +
                                " non-identity strings exist on " + std::to_string(n) +
                                " qubits");
  Rng rng = substream(seed, {0x7061756cULL});
  std::unordered_set<std::uint64_t> seen;
  std::vector<PauliTerm> terms;
  terms.reserve(m);
  while (terms.size() < m) {
    const std::uint64_t packed = 1 + uniform_index(rng, non_identity);
    if (!seen.insert(packed).second) continue;
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
      codes[static_cast<std::size_t>(q)] =
          static_cast<std::uint8_t>((packed >> (2 * (n - 1 - q))) & 3U);
    terms.push_back({0.0, PauliString(std::move(codes))});
  }
  for (auto& t : terms) t.coeff = uniform_in(rng, -1.0, 1.0);
  return PauliHamiltonian(std::move(terms));
}

}  // namespace hqhl
