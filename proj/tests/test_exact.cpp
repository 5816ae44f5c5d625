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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hqhl/exact.hpp"
#include "hqhl/logz.hpp"
#include "oracles.hpp"

namespace {

using namespace hqhl;

const double kLog2Cosh1 = std::log(std::exp(-1.0) + std::exp(1.0));

PauliHamiltonian table1_row1() {
  return make_hamiltonian(std::vector<PauliString>{parse_pauli_string({0, 2, 1}), parse_pauli_string({2, 1, 3}),
                                                   parse_pauli_string({0, 3, 3})},
                          std::vector<double>{0.3408, -0.6384, -0.4988});
}

PauliHamiltonian single_z(double c = 1.0) { return PauliHamiltonian({{c, parse_pauli_string({3})}}); }

oracle::Mat reference_matrix(const PauliHamiltonian& h) {
  std::vector<std::vector<int>> codes;
  for (const auto& t : h.terms()) codes.push_back(emit_codes(t.string));
  return oracle::hamiltonian(codes, h.coefficients());
}

TEST(DenseMatrix, Examples) {
  const auto z = dense_matrix(single_z());
  EXPECT_EQ(z(0, 0), cplx(1, 0));
  EXPECT_EQ(z(1, 1), cplx(-1, 0));
  EXPECT_EQ(z(0, 1), cplx(0, 0));
  EXPECT_EQ(dense_matrix(table1_row1().with_coefficients(std::vector<double>{0, 0, 0})).cwiseAbs().maxCoeff(), 0.0);
  const auto h = dense_matrix(table1_row1());
  EXPECT_EQ(h.rows(), 8);
  EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((h - reference_matrix(table1_row1())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DenseMatrix, CapEnforced) {
  const PauliHamiltonian big({{1.0, PauliString(std::vector<std::uint8_t>(13, 3))}});
  EXPECT_THROW(dense_matrix(big), std::invalid_argument);
  EXPECT_THROW(dense_matrix(table1_row1(), 2), std::invalid_argument);
}

TEST(ExactEigensystem, Examples) {
  const auto z = exact_eigensystem(single_z());
  EXPECT_NEAR(z.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(z.eigenvalues[1], 1.0, 1e-15);
  const auto x = exact_eigenvalues(PauliHamiltonian({{0.5, parse_pauli_string({1})}}));
  EXPECT_NEAR(x[0], -0.5, 1e-15);
  EXPECT_NEAR(x[1], 0.5, 1e-15);
  const auto ising = build_many_body(SpinModel::ising, 3, {0.1981, 0.7544});
  EXPECT_GE(exact_eigenvalues(ising).front(), -std::sqrt(6.0) * coefficient_norms(ising).l2);
}

TEST(ExactEigensystem, ResidualOrderAndPhaseConvention) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto h = random_instance(3, 4, s);
    const auto m = dense_matrix(h);
    const auto spec = exact_eigensystem(h);
    const double scale = std::max(1.0, spectral_norm_bound(h));
    for (std::size_t j = 0; j < spec.size(); ++j) {
      const auto v = spec.eigenvectors.col(static_cast<Eigen::Index>(j));
      EXPECT_LE((m * v - spec.eigenvalues[j] * v).norm(), 1e-8 * scale);
      if (j > 0) {
        EXPECT_LE(spec.eigenvalues[j - 1], spec.eigenvalues[j]);
      }
      Eigen::Index first = 0;
      while (std::abs(v(first)) <= 1e-10) ++first;
      EXPECT_NEAR(v(first).imag(), 0.0, 1e-12);
      EXPECT_GT(v(first).real(), 0.0);
    }
    const auto gram = spec.eigenvectors.adjoint() * spec.eigenvectors;
    EXPECT_LT((gram - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ExactLogPartition, Examples) {
  for (int n = 1; n <= 4; ++n) {
    const PauliHamiltonian zero({{0.0, PauliString(std::vector<std::uint8_t>(n, 3))}});
    EXPECT_NEAR(exact_log_partition(zero, 0.7), n * std::log(2.0), 1e-12);
  }
  EXPECT_NEAR(exact_log_partition(single_z(), 1.0), kLog2Cosh1, 1e-14);
  EXPECT_THROW(exact_log_partition(single_z(), 0.0), std::invalid_argument);
}

TEST(ExactLogPartition, MatchesMatrixExponentialAndFreeEnergy) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int n = 1 + static_cast<int>(s % 4);
    const double beta = std::vector<double>{0.3, 1.0, 3.0}[s % 3];
    const auto h = random_instance(n, 1 + s % 3, 1000 + s);
    const double lz = exact_log_partition(h, beta);
    EXPECT_NEAR(lz, oracle::log_z(reference_matrix(h), beta), 1e-9);
    const auto eig = exact_eigenvalues(h);
    const auto p = gibbs_probabilities(eig, beta);
    EXPECT_NEAR(lz, -beta * free_energy(p, eig, beta), 1e-9);
  }
}

TEST(ExactGibbsState, Examples) {
  const auto hot = exact_gibbs_state(single_z(), 1e-6);
  EXPECT_LT((hot.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-6);
  const auto rho = exact_gibbs_state(single_z(), 1.0);
  const double z = 2 * std::cosh(1.0);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), std::exp(-1.0) / z, 1e-14);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), std::exp(1.0) / z, 1e-14);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto h = random_instance(3, 5, s);
    const auto g = exact_gibbs_state(h, 1.3);
    EXPECT_NEAR(g.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_LT((g.matrix() - oracle::gibbs(reference_matrix(h), 1.3)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(DensityMatrix, Validation) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);
  Eigen::MatrixXcd nh = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  nh(0, 1) = cplx(0.1, 0);
  EXPECT_THROW(DensityMatrix{nh}, std::invalid_argument);
}

TEST(ExactGibbsExpectations, Examples) {
  const auto rec = exact_gibbs_expectations(single_z(), 1.0);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_NEAR(rec.observations[0].value, -std::tanh(1.0), 1e-14);
  const std::vector<PauliString> id{parse_pauli_string({0, 0, 0})};
  EXPECT_NEAR(exact_gibbs_expectations(table1_row1(), 1.0, id).observations[0].value, 1.0, 1e-12);
  const auto hot = exact_gibbs_expectations(table1_row1(), 1e-6);
  for (const auto& o : hot.observations) EXPECT_LT(std::abs(o.value), 1e-5);
}

TEST(ExactGibbsExpectations, MatchTraceWithReferenceGibbsState) {
  const auto h = table1_row1();
  const auto rho = oracle::gibbs(reference_matrix(h), 1.0);
  const auto rec = exact_gibbs_expectations(h, 1.0);
  for (const auto& o : rec.observations) {
    const double ref = (rho * oracle::pauli(emit_codes(o.string))).trace().real();
    EXPECT_NEAR(o.value, ref, 1e-12);
    EXPECT_NEAR(expectation(exact_gibbs_state(h, 1.0), o.string), ref, 1e-12);
  }
}

TEST(ExactGibbsExpectations, AreGradientsOfLogZ) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto h = random_instance(3, 4, 50 + s);
    const double beta = 0.8;
    const auto rec = exact_gibbs_expectations(h, beta);
    auto nu = h.coefficients();
    const double step = 1e-5;
    for (std::size_t l = 0; l < nu.size(); ++l) {
      auto up = nu, down = nu;
      up[l] += step;
      down[l] -= step;
      const double fd = (exact_log_partition(h.with_coefficients(up), beta) -
                         exact_log_partition(h.with_coefficients(down), beta)) / (2 * step);
      EXPECT_NEAR(fd, -beta * rec.observations[l].value, 1e-5);
    }
  }
}

TEST(GibbsProbabilities, Examples) {
  const auto flat = gibbs_probabilities(std::vector<double>{0.0, 0.0}, 2.0);
  EXPECT_DOUBLE_EQ(flat[0], 0.5);
  EXPECT_DOUBLE_EQ(flat[1], 0.5);
  const auto two = gibbs_probabilities(std::vector<double>{-1.0, 1.0}, 1.0);
  const double e = std::exp(1.0), ei = std::exp(-1.0);
  EXPECT_NEAR(two[0], e / (e + ei), 1e-15);
  EXPECT_NEAR(two[1], ei / (e + ei), 1e-15);
  EXPECT_NEAR(two[0], 0.8808, 1e-4);
  EXPECT_THROW(gibbs_probabilities(std::vector<double>{0.0}, 0.0), std::invalid_argument);
}

TEST(GibbsProbabilities, PositiveAndOrderedOppositeToEnergy) {
  const auto eig = exact_eigenvalues(table1_row1());
  const auto p = gibbs_probabilities(eig, 1.0);
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    EXPECT_GT(p[j], 0.0);
    if (j > 0 && eig[j] > eig[j - 1] + 1e-9) {
      EXPECT_LT(p[j], p[j - 1]);
    }
    sum += p[j];
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(GibbsProbabilities, RandomSimplexPointsNeverBeatTheOptimum) {
  const auto eig = exact_eigenvalues(table1_row1());
  const double beta = 1.0;
  const double best = free_energy(gibbs_probabilities(eig, beta), eig, beta);
  Rng rng = substream(5, {0});
  std::exponential_distribution<double> expo(1.0);
  for (int trial = 0; trial < 200000; ++trial) {
    std::vector<double> p(eig.size());
    double z = 0.0;
    for (double& v : p) z += (v = expo(rng));
    double c = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      p[j] /= z;
      c += p[j] * (eig[j] + std::log(p[j]) / beta);
    }
    ASSERT_GE(c, best - 1e-12);
  }
}

TEST(TraceDistance, Examples) {
  const auto rho = exact_gibbs_state(table1_row1(), 1.0);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-15);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2), b = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 1;
  b(1, 1) = 1;
  EXPECT_NEAR(trace_distance(DensityMatrix(a), DensityMatrix(b)), 1.0, 1e-15);
}

TEST(TraceDistance, PinskerAgainstRelativeEntropy) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto h1 = random_instance(2, 3, s);
    const auto h2 = random_instance(2, 3, 500 + s);
    const auto r1 = exact_gibbs_state(h1, 1.0);
    const auto r2 = exact_gibbs_state(h2, 1.0);
    EXPECT_LE(trace_distance(r1, r2), std::sqrt(relative_entropy(r1, r2) / 2.0) + 1e-12);
  }
}

TEST(MatrixPreparer, ReproducesEigenvectors) {
  const auto h = table1_row1();
  const auto prep = oracle_preparer(h);
  EXPECT_EQ(prep.num_qubits(), 3);
  const auto spec = exact_eigensystem(h);
  for (std::uint64_t j = 0; j < 8; ++j)
    EXPECT_NEAR(hamiltonian_expectation(prep.prepare(j), h), spec.eigenvalues[j], 1e-12);
  EXPECT_THROW(MatrixPreparer(Eigen::MatrixXcd::Ones(2, 2)), std::invalid_argument);
}

TEST(MeasurementRecord, Validation) {
  MeasurementRecord r;
  r.beta = 1.0;
  r.observations = {{parse_pauli_string({3}), 0.5}, {parse_pauli_string({3}), 0.1}};
  EXPECT_THROW(r.validate(), std::invalid_argument);
  r.observations = {{parse_pauli_string({3}), 1.5}};
  EXPECT_THROW(r.validate(), std::invalid_argument);
  r.observations = {{parse_pauli_string({3}), 0.5}};
  EXPECT_NO_THROW(r.validate());
  EXPECT_THROW(r.check_aligned(single_z(), 2.0), std::invalid_argument);
  EXPECT_THROW(r.check_aligned(PauliHamiltonian({{1.0, parse_pauli_string({1})}}), 1.0), std::invalid_argument);
}

}  // namespace
