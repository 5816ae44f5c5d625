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

// Command-line frontend. Exit codes: 0 success, 2 usage or configuration
// error, 1 runtime failure.

#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hqhl/driver.hpp"
#include "hqhl/error.hpp"
#include "hqhl/exact.hpp"
#include "hqhl/io.hpp"
#include "hqhl/logz.hpp"
#include "hqhl/svqe.hpp"

namespace hqhl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

/// A Hamiltonian file is either a bare Hamiltonian or an instance file with
/// a "hamiltonian" member.
inline PauliHamiltonian load_hamiltonian(const std::string& path) {
  const auto j = parse_json(read_text_file(path), path);
  if (j.is_object() && j.contains("hamiltonian")) return hamiltonian_from_json(j.at("hamiltonian"));
  return hamiltonian_from_json(j);
}

inline Instance load_instance(const std::string& path) {
  const auto j = parse_json(read_text_file(path), path);
  if (!j.is_object() || !j.contains("hamiltonian") || !j.contains("record"))
    throw ConfigError(path + ": instance needs \"hamiltonian\" and \"record\"");
  return {hamiltonian_from_json(j.at("hamiltonian")), record_from_json(j.at("record"))};
}

inline json instance_to_json(const Instance& inst) {
  return {{"hamiltonian", hamiltonian_to_json(inst.target)}, {"record", record_to_json(inst.record)}};
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else write_text_file(path, text);
}

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace detail

/// Runs the CLI. `argv[0]` is the program name.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Hamiltonian learning from Gibbs-state measurements"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a Hamiltonian and its Gibbs measurement record");
  std::string gen_config, gen_model, gen_out;
  int gen_n = 3;
  std::size_t gen_m = 3;
  double gen_beta = 1.0;
  std::uint64_t gen_seed = 0, gen_shots = 0;
  std::vector<double> gen_params;
  gen->add_option("--config", gen_config, "Experiment config JSON (target selection keys only)");
  gen->add_option("--model", gen_model, "ising, xy or heisenberg")->check(CLI::IsMember({"ising", "xy", "heisenberg"}));
  gen->add_option("--m", gen_m, "Number of random terms")->check(CLI::PositiveNumber);
  gen->add_option("--params", gen_params, "Model parameters (J [h]); random when omitted");
  gen->add_option("--n", gen_n, "Qubit count");
  gen->add_option("--beta", gen_beta, "Inverse temperature");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--record-shots", gen_shots, "Shots per observation (0: exact data)");
  gen->add_option("--out", gen_out, "Output path (stdout when omitted)");

  // learn
  auto* learn = app.add_subcommand("learn", "Run the learning loop and export the convergence trace");
  std::string learn_config, learn_instance, learn_out, learn_format = "csv", learn_backend;
  std::optional<std::uint64_t> learn_seed;
  std::optional<std::size_t> learn_iters;
  bool learn_oracle = false, learn_timing = false;
  learn->add_option("--config", learn_config, "Experiment config JSON");
  learn->add_option("--instance", learn_instance, "Instance file from gen (overrides target selection)");
  learn->add_option("--seed", learn_seed, "Seed override");
  learn->add_option("--iters", learn_iters, "Outer iteration override");
  learn->add_option("--backend", learn_backend, "exact or shots")->check(CLI::IsMember({"exact", "shots"}));
  learn->add_flag("--oracle", learn_oracle, "Replace every inner stage by the exact oracle");
  learn->add_flag("--timing", learn_timing, "Record wall-clock seconds (otherwise 0)");
  learn->add_option("--format", learn_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  learn->add_option("--out", learn_out, "Trace output path (stdout when omitted)");

  // logz
  auto* logz = app.add_subcommand("logz", "Estimate log Z for a Hamiltonian");
  std::string logz_ham, logz_solver = "closed_form";
  double logz_beta = 1.0;
  std::uint64_t logz_seed = 0;
  int logz_depth = 0;
  std::size_t logz_iters = 500;
  bool logz_oracle = false;
  logz->add_option("--ham", logz_ham, "Hamiltonian or instance JSON")->required();
  logz->add_option("--beta", logz_beta, "Inverse temperature");
  logz->add_option("--solver", logz_solver, "closed_form or mirror_descent")
      ->check(CLI::IsMember({"closed_form", "mirror_descent"}));
  logz->add_option("--seed", logz_seed, "Seed");
  logz->add_option("--depth", logz_depth, "Circuit depth (default by n)");
  logz->add_option("--svqe-iters", logz_iters, "Circuit training iterations")->check(CLI::PositiveNumber);
  logz->add_flag("--oracle", logz_oracle, "Use the exact eigenbasis instead of a trained circuit");

  // svqe
  auto* svqe = app.add_subcommand("svqe", "Train the eigensolver and report the spectrum error");
  std::string svqe_ham;
  std::uint64_t svqe_seed = 0;
  int svqe_depth = 0;
  std::size_t svqe_iters = 500, svqe_log = 0;
  double svqe_lr = 0.5;
  svqe->add_option("--ham", svqe_ham, "Hamiltonian or instance JSON")->required();
  svqe->add_option("--seed", svqe_seed, "Seed");
  svqe->add_option("--depth", svqe_depth, "Circuit depth (default by n)");
  svqe->add_option("--iters", svqe_iters, "Training iterations")->check(CLI::PositiveNumber);
  svqe->add_option("--lr", svqe_lr, "Learning rate")->check(CLI::PositiveNumber);
  svqe->add_option("--log-every", svqe_log, "Record the objective every k iterations");

  // bench
  auto* bench = app.add_subcommand("bench", "Sweep the table1 or table2 preset grid, one CSV per configuration");
  std::string bench_suite = "table1", bench_dir = ".";
  bool bench_oracle = false, bench_timing = false;
  std::uint64_t bench_seed = 0;
  std::optional<std::size_t> bench_iters;
  std::optional<int> bench_max_n;
  bench->add_option("--suite", bench_suite, "table1 or table2")->check(CLI::IsMember({"table1", "table2"}));
  bench->add_flag("--oracle", bench_oracle, "Exact oracle inner stages");
  bench->add_option("--seed", bench_seed, "Seed");
  bench->add_option("--iters", bench_iters, "Outer iterations (default 200 with --oracle, 10 otherwise)");
  bench->add_option("--max-n", bench_max_n, "Skip configurations with more qubits");
  bench->add_option("--out-dir", bench_dir, "Directory for the CSV files");
  bench->add_flag("--timing", bench_timing, "Record wall-clock seconds (otherwise 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (*gen) {
      ExperimentConfig c;
      if (!gen_config.empty()) c = config_from_json(parse_json(read_text_file(gen_config), gen_config));
      if (gen->count("--n")) c.n = gen_n;
      if (gen->count("--beta")) c.beta = gen_beta;
      if (gen->count("--seed")) c.seed = gen_seed;
      if (gen->count("--record-shots")) c.record_shots = gen_shots;
      if (!gen_model.empty()) {
        c.target.reset();
        c.model = spin_model_from_string(gen_model);
        c.model_params = gen_params;
      } else if (gen->count("--m")) {
        c.target.reset();
        c.model.reset();
        c.random_m = gen_m;
      }
      const auto inst = generate_instance(c);
      detail::emit(gen_out, detail::instance_to_json(inst).dump(2) + "\n", out);
      return kExitOk;
    }

    if (*learn) {
      ExperimentConfig c;
      if (!learn_config.empty()) c = config_from_json(parse_json(read_text_file(learn_config), learn_config));
      if (learn_seed) c.seed = *learn_seed;
      if (learn_iters) c.outer_iterations = *learn_iters;
      if (learn_oracle) c.oracle = Ablation::full();
      if (learn_timing) c.timing = true;
      if (!learn_backend.empty())
        c.backend = learn_backend == "exact" ? ExpectationBackend::exact() : ExpectationBackend::sampled(c.backend.shots);
      if (!learn_out.empty()) c.out = learn_out;
      ConvergenceTrace trace;
      if (!learn_instance.empty()) {
        const auto inst = detail::load_instance(learn_instance);
        c.target = inst.target;
        c.beta = inst.record.beta;
        trace = run_hqhl(c, inst);
      } else {
        trace = run_hqhl(c);
      }
      const auto text = learn_format == "csv" ? trace_to_csv(trace) : trace_to_json(trace).dump(2) + "\n";
      detail::emit(c.out, text, out);
      if (trace.diverged) err << "warning: learning diverged at iteration " << trace.rows.back().iter << "\n";
      return kExitOk;
    }

    if (*logz) {
      const auto h = detail::load_hamiltonian(logz_ham);
      if (!(logz_beta > 0.0)) throw ConfigError("--beta must be > 0");
      LogZOptions opts;
      opts.solver = logz_solver_from_string(logz_solver);
      std::vector<double> lambda_hat;
      if (logz_oracle) {
        lambda_hat = exact_eigenvalues(h);
      } else {
        SvqeConfig sc;
        sc.iterations = logz_iters;
        sc.seed = logz_seed;
        lambda_hat = train_svqe(h, logz_depth > 0 ? logz_depth : default_depth(h.num_qubits()), sc).lambda_hat;
      }
      const auto r = solve_log_partition(lambda_hat, logz_beta, opts, logz_seed);
      json result{{"log_z", r.log_z}, {"solver", to_string(r.solver)}};
      if (h.num_qubits() <= kDenseQubitCap) {
        const auto exact = exact_eigenvalues(h);
        result["residual_bound"] = detail::finite_or_null(log_partition_error_bound(r, lambda_hat, exact, logz_beta));
      } else {
        result["residual_bound"] = nullptr;
      }
      out << result.dump() << "\n";
      return kExitOk;
    }

    if (*svqe) {
      const auto h = detail::load_hamiltonian(svqe_ham);
      SvqeConfig sc;
      sc.iterations = svqe_iters;
      sc.learning_rate = svqe_lr;
      sc.seed = svqe_seed;
      sc.log_every = svqe_log;
      const int depth = svqe_depth > 0 ? svqe_depth : default_depth(h.num_qubits());
      const auto est = train_svqe(h, depth, sc);
      const auto exact = exact_eigenvalues(h);
      const auto q = default_weights(h.dimension());
      json history = json::array();
      for (const auto& e : est.history) history.push_back({{"iter", e.iteration}, {"objective", e.objective}});
      json result{{"depth", depth},
                  {"iterations", svqe_iters},
                  {"lambda_hat", est.lambda_hat},
                  {"exact", exact},
                  {"sorted_error", sorted_inf_distance(est.lambda_hat, exact)},
                  {"objective", est.objective},
                  {"lower_bound", majorization_lower_bound(exact, q.values())},
                  {"history", history}};
      out << result.dump(2) << "\n";
      return kExitOk;
    }

    if (*bench) {
      std::filesystem::create_directories(bench_dir);
      const std::size_t iters = bench_iters ? *bench_iters : (bench_oracle ? 200 : 10);
      auto run_one = [&](ExperimentConfig c, const std::string& name) {
        if (bench_max_n && c.qubits() > *bench_max_n) return;
        c.outer_iterations = iters;
        c.timing = bench_timing;
        if (bench_oracle) c.oracle = Ablation::full();
        const auto trace = run_hqhl(c);
        const auto path = (std::filesystem::path(bench_dir) / (name + ".csv")).string();
        write_text_file(path, trace_to_csv(trace));
        out << name << " err_inf=" << format_double(trace.final_error()) << " -> " << path << "\n";
      };
      if (bench_suite == "table1") {
        const auto& rows = table1_rows();
        for (std::size_t r = 0; r < rows.size(); ++r)
          run_one(table1_config(rows[r], bench_seed), "table1_row" + std::to_string(r + 1));
      } else {
        for (const auto& e : table2_entries())
          run_one(table2_config(e, bench_seed),
                  std::string("table2_") + to_string(e.model) + "_n" + std::to_string(e.n));
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace hqhl
