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
#include <filesystem>
#include <string>
#include <vector>

#include "hqhl/driver.hpp"

namespace {

using namespace hqhl;

ExperimentConfig oracle_row1(std::size_t iterations) {
  auto c = table1_config(table1_rows()[0], 1);
  c.oracle = Ablation::full();
  c.outer_iterations = iterations;
  return c;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST(Instance, RandomTargetIsDeterministic) {
  ExperimentConfig c;
  c.seed = 12;
  const auto a = generate_instance(c);
  const auto b = generate_instance(c);
  EXPECT_EQ(a.target, b.target);
  EXPECT_EQ(a.target.size(), 3u);
  EXPECT_EQ(a.target.num_qubits(), 3);
  for (double v : a.mu()) EXPECT_LE(std::abs(v), 1.0);
  const auto expected = exact_gibbs_expectations(a.target, c.beta);
  for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(a.record.observations[l].value, expected.observations[l].value);
  c.seed = 13;
  EXPECT_NE(generate_instance(c).target, a.target);
}

TEST(Instance, ModelsAndExplicitTargets) {
  ExperimentConfig c;
  c.model = SpinModel::ising;
  c.model_params = {0.1981, 0.7544};
  const auto ising = generate_instance(c);
  EXPECT_EQ(ising.target.size(), 6u);
  EXPECT_EQ(ising.target, build_many_body(SpinModel::ising, 3, {0.1981, 0.7544}));
  const auto t1 = generate_instance(table1_config(table1_rows()[6], 0));
  EXPECT_EQ(t1.target.num_qubits(), 4);
  EXPECT_EQ(t1.mu(), table1_rows()[6].mu);
}

TEST(Instance, ShotNoiseStaysNearExactValues) {
  auto c = table1_config(table1_rows()[0], 3);
  c.record_shots = 10000;
  const auto noisy = generate_instance(c);
  const auto clean = exact_gibbs_expectations(noisy.target, 1.0);
  for (std::size_t l = 0; l < 3; ++l) {
    EXPECT_NEAR(noisy.record.observations[l].value, clean.observations[l].value, 0.05);
    EXPECT_LE(std::abs(noisy.record.observations[l].value), 1.0);
  }
  EXPECT_EQ(generate_instance(c).record.observations[0].value, noisy.record.observations[0].value);
}

TEST(Loss, Examples) {
  MeasurementRecord rec;
  rec.beta = 2.0;
  rec.observations = {{parse_pauli_string({3}), 0.5}};
  EXPECT_DOUBLE_EQ(loss_L(std::vector<double>{1.0}, 2.0, rec, 3.0), 4.0);
  EXPECT_DOUBLE_EQ(loss_L(std::vector<double>{0.0}, 2.0, rec, 1.25), 1.25);
  EXPECT_THROW(loss_L(std::vector<double>{1.0, 2.0}, 2.0, rec, 0.0), std::invalid_argument);
}

TEST(Loss, MinimizedAtTheTarget) {
  const auto inst = generate_instance(table1_config(table1_rows()[0], 0));
  auto loss_at = [&](const std::vector<double>& nu) {
    return loss_L(nu, 1.0, inst.record, exact_log_partition(inst.target.with_coefficients(nu), 1.0));
  };
  const double best = loss_at(inst.mu());
  Rng rng = substream(2, {0});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> nu(3);
    for (double& v : nu) v = uniform_in(rng, -1.0, 1.0);
    EXPECT_GE(loss_at(nu), best - 1e-12);
  }
}

TEST(Defaults, LearningRateAndGradientSamples) {
  EXPECT_EQ(default_outer_lr(0.3), 8.0);
  EXPECT_EQ(default_outer_lr(1.0), 1.0);
  EXPECT_EQ(default_outer_lr(3.0), 0.1);
  EXPECT_DOUBLE_EQ(default_outer_lr(2.0), 0.25);
  ExperimentConfig c;
  const auto s = c.gradient_samples(3);
  EXPECT_EQ(s.per_group, 1200u);
  EXPECT_EQ(s.groups, 5u);
  c.grad_K = 7;
  c.grad_D = 2;
  EXPECT_EQ(c.gradient_samples(3).total(), 14u);
  c.outer_lr = 0.7;
  EXPECT_EQ(learning_rate(c), 0.7);
  EXPECT_EQ(c.depth(), 10);
  c.svqe_depth = 3;
  EXPECT_EQ(c.depth(), 3);
}

TEST(Ablation, CircuitRequirement) {
  EXPECT_TRUE(Ablation::none().needs_circuit());
  EXPECT_FALSE(Ablation::full().needs_circuit());
  EXPECT_FALSE((Ablation{true, false, false}).needs_circuit());
  EXPECT_FALSE((Ablation{false, true, true}).needs_circuit());
  EXPECT_TRUE((Ablation{false, true, false}).needs_circuit());
  EXPECT_TRUE(Ablation::full().all());
  EXPECT_FALSE(Ablation::none().any());
}

TEST(Driver, OracleModeConvergesOnRow1) {
  const auto trace = run_hqhl(oracle_row1(20));
  ASSERT_EQ(trace.rows.size(), 20u);
  EXPECT_FALSE(trace.diverged);
  EXPECT_LE(trace.final_error(), 0.05);
  EXPECT_LT(trace.rows.back().loss, trace.rows.front().loss);
}

TEST(Driver, TargetIsAFixedPoint) {
  auto c = oracle_row1(5);
  c.initial_nu = table1_rows()[0].mu;
  const auto trace = run_hqhl(c);
  for (const auto& r : trace.rows) EXPECT_LE(r.err_inf, 1e-10);
}

TEST(Driver, RowSemantics) {
  auto c = oracle_row1(3);
  c.initial_nu = std::vector<double>{0.1, 0.2, -0.3};
  const auto inst = generate_instance(c);
  const auto trace = run_hqhl(c, inst);
  // loss and log_z describe the iterate the step started from; nu is the result.
  const double lz0 = exact_log_partition(inst.target.with_coefficients(*c.initial_nu), 1.0);
  EXPECT_NEAR(trace.rows[0].log_z, lz0, 1e-12);
  EXPECT_NEAR(trace.rows[0].loss, loss_L(*c.initial_nu, 1.0, inst.record, lz0), 1e-12);
  const auto g = exact_dual_gradient(inst.target.with_coefficients(*c.initial_nu), 1.0, inst.record);
  for (std::size_t l = 0; l < 3; ++l) EXPECT_NEAR(trace.rows[0].nu[l], (*c.initial_nu)[l] - g[l], 1e-12);
  EXPECT_NEAR(trace.rows[0].err_inf, inf_distance(trace.rows[0].nu, inst.mu()), 1e-15);
  const double lz1 = exact_log_partition(inst.target.with_coefficients(trace.rows[0].nu), 1.0);
  EXPECT_NEAR(trace.rows[1].log_z, lz1, 1e-12);
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    EXPECT_EQ(trace.rows[i].iter, i + 1);
    EXPECT_EQ(trace.rows[i].seconds, 0.0);
  }
  c.timing = true;
  const auto timed = run_hqhl(c, inst);
  for (std::size_t i = 1; i < timed.rows.size(); ++i) EXPECT_GE(timed.rows[i].seconds, timed.rows[i - 1].seconds);
}

TEST(Driver, DivergenceAndEarlyStop) {
  auto c = oracle_row1(200);
  c.outer_lr = 1e7;
  const auto blown = run_hqhl(c);
  EXPECT_TRUE(blown.diverged);
  EXPECT_LT(blown.rows.size(), 200u);
  auto d = oracle_row1(50);
  d.initial_nu = table1_rows()[0].mu;
  d.grad_tolerance = 1e-8;
  EXPECT_EQ(run_hqhl(d).rows.size(), 1u);
}

TEST(Driver, FullPipelineIsReproducible) {
  auto c = table1_config(table1_rows()[0], 5);
  c.outer_iterations = 2;
  c.svqe_depth = 2;
  c.svqe.iterations = 20;
  c.grad_K = 50;
  c.grad_D = 3;
  const auto a = run_hqhl(c);
  const auto b = run_hqhl(c);
  EXPECT_EQ(trace_to_csv(a), trace_to_csv(b));
  ASSERT_EQ(a.rows.size(), 2u);
  for (const auto& r : a.rows) EXPECT_TRUE(std::isfinite(r.err_inf));
}

TEST(Driver, PartialAblationsRun) {
  for (const Ablation ab : {Ablation{true, false, false}, Ablation{false, true, false}, Ablation{false, false, true}}) {
    auto c = table1_config(table1_rows()[0], 6);
    c.outer_iterations = 2;
    c.svqe_depth = 1;
    c.svqe.iterations = 5;
    c.grad_K = 20;
    c.grad_D = 2;
    c.oracle = ab;
    const auto t = run_hqhl(c);
    EXPECT_EQ(t.rows.size(), 2u);
  }
}

TEST(Driver, UnknownTargetLeavesErrorUnset) {
  const auto inst = generate_instance(oracle_row1(2));
  const auto trace = run_hqhl(oracle_row1(2), inst.target, inst.record);
  EXPECT_TRUE(std::isnan(trace.rows[0].err_inf));
  EXPECT_THROW(run_hqhl(oracle_row1(2), inst.target, inst.record, std::vector<double>{1.0}), ConfigError);
  auto misaligned = inst.record;
  misaligned.beta = 3.0;
  EXPECT_THROW(run_hqhl(oracle_row1(2), inst.target, misaligned), ConfigError);
}

TEST(TraceIo, CsvSchema) {
  ConvergenceTrace empty;
  empty.m = 3;
  EXPECT_EQ(trace_to_csv(empty), "iter,nu_1,nu_2,nu_3,loss,err_inf,log_z,seconds\n");
  EXPECT_EQ(trace_columns(3).size(), 8u);
  const auto trace = run_hqhl(oracle_row1(4));
  const auto csv = trace_to_csv(trace);
  EXPECT_EQ(count_lines(csv), 5u);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
}

TEST(TraceIo, JsonRoundTripKeepsNaN) {
  const auto inst = generate_instance(oracle_row1(3));
  const auto trace = run_hqhl(oracle_row1(3), inst.target, inst.record);
  const auto j = trace_to_json(trace);
  EXPECT_TRUE(j.at("rows").at(0).at(5).is_null());
  const auto back = trace_from_json(j);
  ASSERT_EQ(back.rows.size(), trace.rows.size());
  EXPECT_EQ(back.rows[2].nu, trace.rows[2].nu);
  EXPECT_TRUE(std::isnan(back.rows[0].err_inf));
  EXPECT_EQ(trace_to_csv(back), trace_to_csv(trace));
  EXPECT_THROW(trace_from_json(json{{"m", 3}, {"rows", json::array({json::array({1, 2})})}}), ConfigError);
}

TEST(TraceIo, FileExportImport) {
  const auto trace = run_hqhl(oracle_row1(3));
  const auto dir = std::filesystem::temp_directory_path() / "hqhl_test_driver";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "trace.json").string();
  export_trace(trace, path, TraceFormat::json);
  EXPECT_EQ(import_trace(path), trace);
  export_trace(trace, (dir / "trace.csv").string(), TraceFormat::csv);
  EXPECT_EQ(read_text_file((dir / "trace.csv").string()), trace_to_csv(trace));
  std::filesystem::remove_all(dir);
}

TEST(Config, ParsesAllSections) {
  const auto c = config_from_json(json::parse(R"({
    "n": 4, "model": "heisenberg", "params": [0.1, 0.2], "beta": 0.5,
    "outer": {"iters": 7, "lr": 0.2, "tol": 1e-4},
    "svqe": {"depth": 3, "iters": 40, "lr": 0.3, "T": 8, "D": 3, "full_sum_threshold": 0},
    "logz": {"solver": "mirror_descent", "iters": 100, "step": 0.25},
    "grad": {"K": 10, "D": 4, "epsilon": 0.1, "eta": 0.2},
    "backend": "shots", "shots": {"epsilon": 0.2, "eta": 0.1},
    "record_shots": 1000, "seed": 99, "oracle_mode": {"spectrum": true}, "timing": true, "out": "x.csv"
  })"));
  EXPECT_EQ(c.n, 4);
  EXPECT_EQ(c.model, SpinModel::heisenberg);
  EXPECT_EQ(c.outer_iterations, 7u);
  EXPECT_EQ(*c.outer_lr, 0.2);
  EXPECT_EQ(c.grad_tolerance, 1e-4);
  EXPECT_EQ(c.svqe_depth, 3);
  EXPECT_EQ(c.svqe.samples.total(), 24u);
  EXPECT_EQ(c.svqe.full_sum_threshold, 0u);
  EXPECT_EQ(c.logz.solver, LogZSolver::mirror_descent);
  EXPECT_EQ(c.logz.mirror.step_scale, 0.25);
  EXPECT_EQ(c.gradient_samples(5).total(), 40u);
  EXPECT_FALSE(c.backend.is_exact());
  EXPECT_EQ(c.backend.shots.epsilon, 0.2);
  EXPECT_EQ(c.record_shots, 1000u);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_TRUE(c.oracle.exact_spectrum);
  EXPECT_FALSE(c.oracle.exact_gradient);
  EXPECT_TRUE(c.timing);
  EXPECT_EQ(c.out, "x.csv");
  const auto h = config_from_json(json::parse(R"({"hamiltonian": {"terms": [{"coeff": 0.5, "codes": [3, 3]}]},
                                                  "oracle_mode": true, "nu0": [0.1]})"));
  EXPECT_EQ(h.qubits(), 2);
  EXPECT_TRUE(h.oracle.all());
  EXPECT_EQ(*h.initial_nu, std::vector<double>{0.1});
}

TEST(Config, RejectsBadInput) {
  for (const char* text : {R"({"bogus": 1})", R"({"beta": 0})", R"({"beta": "hot"})", R"({"n": 0})",
                           R"({"n": 13})", R"({"model": "potts"})", R"({"model": "ising", "n": 2})",
                           R"({"model": "xy", "params": [1, 2]})", R"({"outer": {"iters": 0}})",
                           R"({"svqe": {"T": 0}})", R"({"logz": {"solver": "newton"}})",
                           R"({"grad": {"eta": 1.5}})", R"({"backend": "gpu"})",
                           R"({"oracle_mode": {"everything": true}})", R"({"random": {"m": 0}})",
                           R"({"hamiltonian": {"terms": [{"coeff": 1, "codes": [4]}]}})"}) {
    EXPECT_THROW(config_from_json(json::parse(text)), ConfigError) << text;
  }
  EXPECT_THROW(parse_json("{not json", "cfg"), ConfigError);
}

TEST(Presets, TableContents) {
  ASSERT_EQ(table1_rows().size(), 8u);
  ASSERT_EQ(table2_entries().size(), 9u);
  const auto row1 = table1_hamiltonian(table1_rows()[0]);
  EXPECT_EQ(row1.term(0).string.label(), "IYX");
  EXPECT_EQ(row1.term(1).string.label(), "YXZ");
  EXPECT_EQ(row1.term(2).string.label(), "IZZ");
  EXPECT_EQ(table1_rows()[5].mu.size(), 6u);
  EXPECT_EQ(table1_rows()[7].n, 5);
  const std::vector<std::size_t> expected_m{6, 8, 10, 6, 8, 10, 12, 16, 20};
  for (std::size_t k = 0; k < 9; ++k) {
    const auto c = table2_config(table2_entries()[k], 0);
    EXPECT_EQ(make_target(c).size(), expected_m[k]);
    EXPECT_EQ(c.beta, 1.0);
  }
}

}  // namespace
