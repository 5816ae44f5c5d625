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
 * @file driver.hpp
 * @brief Outer learning loop, instance generation and trace persistence.
 *
 * Each outer iteration rebuilds H(nu), trains (or warm-starts) the circuit,
 * estimates log Z and p*, estimates the dual gradient and takes a step
 * nu <- nu - r grad. The three inner stages can be swapped for exact oracle
 * calls independently, which is how error sources are isolated.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hqhl/error.hpp"
#include "hqhl/exact.hpp"
#include "hqhl/gradient.hpp"
#include "hqhl/io.hpp"
#include "hqhl/logz.hpp"
#include "hqhl/pauli.hpp"
#include "hqhl/random.hpp"
#include "hqhl/statevector.hpp"
#include "hqhl/svqe.hpp"

namespace hqhl {

/// Which inner stages are replaced by exact oracle calls.
struct Ablation {
  bool exact_spectrum = false;
  bool exact_log_z = false;
  bool exact_gradient = false;

  static Ablation none() { return {}; }
  static Ablation full() { return {true, true, true}; }
  bool any() const noexcept { return exact_spectrum || exact_log_z || exact_gradient; }
  bool all() const noexcept { return exact_spectrum && exact_log_z && exact_gradient; }
  /// SVQE is skipped only when nothing downstream needs the circuit.
  bool needs_circuit() const noexcept { return !exact_spectrum && !(exact_log_z && exact_gradient); }
};

struct ExperimentConfig {
  int n = 3;
  /// Target selection, checked in this order: explicit, many-body, random.
  std::optional<PauliHamiltonian> target;
  std::optional<SpinModel> model;
  std::vector<double> model_params;  // empty: drawn uniformly from [-1, 1]
  std::size_t random_m = 3;

  double beta = 1.0;
  std::size_t outer_iterations = 10;
  std::optional<double> outer_lr;
  /// Early stop once ||grad||_inf falls below this (0 disables).
  double grad_tolerance = 0.0;
  std::optional<std::vector<double>> initial_nu;

  int svqe_depth = 0;  // 0: default for n
  SvqeConfig svqe{};
  LogZOptions logz{};

  /// Gradient sample sizes; 0 picks K = ceil(3 beta^2 / eps^2) and
  /// D = ceil(log(2m / eta)).
  std::size_t grad_K = 0;
  std::size_t grad_D = 0;
  double grad_epsilon = 0.05;
  double grad_eta = 0.05;

  ExpectationBackend backend{};
  /// Shots per observation when synthesizing noisy data (0: exact e_l).
  std::uint64_t record_shots = 0;
  std::uint64_t seed = 0;
  Ablation oracle{};
  bool timing = false;
  std::string out;

  void validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be > 0");
    if (outer_iterations < 1) throw ConfigError("outer iterations must be >= 1");
    if (outer_lr && !(*outer_lr > 0.0)) throw ConfigError("outer learning rate must be > 0");
    if (grad_tolerance < 0.0) throw ConfigError("gradient tolerance must be >= 0");
    if (!target && (n < 1 || n > kDenseQubitCap))
      throw ConfigError("n must be in 1.." + std::to_string(kDenseQubitCap));
    if (!target && model && n < 3) throw ConfigError("many-body models need n >= 3");
    if (!target && model && !model_params.empty() &&
        model_params.size() != spin_model_parameter_count(*model))
      throw ConfigError(std::string("model ") + to_string(*model) + " takes " +
                        std::to_string(spin_model_parameter_count(*model)) + " parameters");
    if (svqe_depth < 0) throw ConfigError("svqe depth must be >= 0");
    if (!(grad_epsilon > 0.0) || !(grad_eta > 0.0 && grad_eta < 1.0))
      throw ConfigError("gradient epsilon must be > 0 and eta in (0, 1)");
    try {
      svqe.validate();
      logz.mirror.validate();
      if (!backend.is_exact()) backend.shots.validate();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  int qubits() const { return target ? target->num_qubits() : n; }
  int depth() const { return svqe_depth > 0 ? svqe_depth : default_depth(qubits()); }

  SampleSize gradient_samples(std::size_t m) const {
    SampleSize s;
    s.per_group = grad_K > 0 ? grad_K
                             : static_cast<std::size_t>(std::ceil(3.0 * beta * beta / (grad_epsilon * grad_epsilon)));
    s.groups = grad_D > 0 ? grad_D
                          : static_cast<std::size_t>(std::ceil(std::log(2.0 * static_cast<double>(m) / grad_eta)));
    s.per_group = std::max<std::size_t>(s.per_group, 1);
    s.groups = std::max<std::size_t>(s.groups, 1);
    return s;
  }
};

/// Preset rate for the three temperatures of the table1 suite, 1/beta^2 otherwise.
inline double default_outer_lr(double beta) {
  if (beta == 0.3) return 8.0;
  if (beta == 1.0) return 1.0;
  if (beta == 3.0) return 0.1;
  return 1.0 / (beta * beta);
}

inline double learning_rate(const ExperimentConfig& c) {
  return c.outer_lr ? *c.outer_lr : default_outer_lr(c.beta);
}

struct Instance {
  PauliHamiltonian target;
  MeasurementRecord record;

  std::vector<double> mu() const { return target.coefficients(); }
};

namespace detail {

inline constexpr std::uint64_t kInstanceKey = 0x696e7374ULL;
inline constexpr std::uint64_t kModelKey = 0x6d6f646cULL;
inline constexpr std::uint64_t kDataKey = 0x64617461ULL;
inline constexpr std::uint64_t kNuKey = 0x6e753030ULL;
inline constexpr std::uint64_t kCircuitKey = 0x63697263ULL;
inline constexpr std::uint64_t kSvqeKey = 0x73767165ULL;
inline constexpr std::uint64_t kGradKey = 0x67726164ULL;
inline constexpr std::uint64_t kLogzKey = 0x6c6f677aULL;

}  // namespace detail

inline PauliHamiltonian make_target(const ExperimentConfig& c) {
  if (c.target) return *c.target;
  if (c.model) {
    std::vector<double> params = c.model_params;
    if (params.empty()) {
      Rng rng = substream(c.seed, {detail::kModelKey});
      params.resize(spin_model_parameter_count(*c.model));
      for (double& p : params) p = uniform_in(rng, -1.0, 1.0);
    }
    return build_many_body(*c.model, c.n, params);
  }
  return random_instance(c.n, c.random_m, derive_seed(c.seed, {detail::kInstanceKey}));
}

/// Measurement data e_l = tr(rho_beta E_l) for the target, optionally with
/// binomial shot noise.
inline MeasurementRecord synthesize_record(const PauliHamiltonian& target, double beta,
                                           std::uint64_t shots, std::uint64_t seed) {
  auto rec = exact_gibbs_expectations(target, beta);
  if (shots == 0) return rec;
  Rng rng = substream(seed, {detail::kDataKey});
  for (auto& o : rec.observations) {
    std::binomial_distribution<std::uint64_t> plus(shots, std::clamp(0.5 * (1.0 + o.value), 0.0, 1.0));
    o.value = 2.0 * static_cast<double>(plus(rng)) / static_cast<double>(shots) - 1.0;
  }
  return rec;
}

inline Instance generate_instance(const ExperimentConfig& c) {
  c.validate();
  auto target = make_target(c);
  auto record = synthesize_record(target, c.beta, c.record_shots, c.seed);
  return {std::move(target), std::move(record)};
}

/// L(nu) = log Z + beta sum_l nu_l e_l.
inline double loss_L(std::span<const double> nu, double beta, const MeasurementRecord& record, double log_z) {
  if (nu.size() != record.size()) throw std::invalid_argument("loss_L: length mismatch");
  double acc = 0.0;
  for (std::size_t l = 0; l < nu.size(); ++l) acc += nu[l] * record.observations[l].value;
  return log_z + beta * acc;
}

struct TraceRow {
  std::size_t iter = 0;
  std::vector<double> nu;
  double loss = 0.0;
  double err_inf = 0.0;
  double log_z = 0.0;
  double seconds = 0.0;

  friend bool operator==(const TraceRow& a, const TraceRow& b) {
    auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
    return a.iter == b.iter && a.nu == b.nu && same(a.loss, b.loss) && same(a.err_inf, b.err_inf) &&
           same(a.log_z, b.log_z) && same(a.seconds, b.seconds);
  }
};

/// One row per outer iteration. A row holds nu after that iteration's step
/// and its distance to mu; loss and log_z are the values at the nu the step
/// started from, since those are what the iteration computed.
struct ConvergenceTrace {
  std::size_t m = 0;
  std::vector<TraceRow> rows;
  bool diverged = false;

  double final_error() const {
    return rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().err_inf;
  }
  friend bool operator==(const ConvergenceTrace&, const ConvergenceTrace&) = default;
};

inline double inf_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inf_distance: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double inf_norm(std::span<const double> a) {
  double d = 0.0;
  for (double v : a) d = std::max(d, std::abs(v));
  return d;
}

/// Everything one outer iteration computes at a fixed nu.
struct DualStep {
  std::vector<double> lambda_hat;
  LogZResult log_z;
  DualGradient gradient;
};

/// Runs the learning loop on a given instance. `mu` may be empty when the
/// truth is unknown, in which case err_inf is NaN.
inline ConvergenceTrace run_hqhl(const ExperimentConfig& c, const PauliHamiltonian& structure,
                                 const MeasurementRecord& record, std::span<const double> mu = {}) {
  c.validate();
  const std::size_t m = structure.size();
  try {
    record.check_aligned(structure, c.beta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!mu.empty() && mu.size() != m) throw ConfigError("mu length does not match the term count");
  const int n = structure.num_qubits();
  const double lr = learning_rate(c);
  const auto grad_samples = c.gradient_samples(m);
  const auto weights = default_weights(structure.dimension());

  std::vector<double> nu(m);
  if (c.initial_nu) {
    if (c.initial_nu->size() != m) throw ConfigError("initial nu length does not match the term count");
    nu = *c.initial_nu;
  } else {
    Rng rng = substream(c.seed, {detail::kNuKey});
    for (double& v : nu) v = uniform_in(rng, -1.0, 1.0);
  }

  SvqeConfig svqe = c.svqe;
  svqe.backend = c.backend;
  AnsatzCircuit circuit;
  if (c.oracle.needs_circuit())
    circuit = AnsatzCircuit::random(n, c.depth(), derive_seed(c.seed, {detail::kCircuitKey}));

  ConvergenceTrace trace;
  trace.m = m;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t t = 1; t <= c.outer_iterations; ++t) {
    const auto h = structure.with_coefficients(nu);
    DualStep step;

    std::optional<MatrixPreparer> oracle_u;
    if (c.oracle.exact_spectrum) {
      auto spec = exact_eigensystem(h);
      step.lambda_hat = spec.eigenvalues;
      oracle_u.emplace(std::move(spec.eigenvectors));
    } else if (c.oracle.needs_circuit()) {
      svqe.seed = derive_seed(c.seed, {detail::kSvqeKey, t});
      auto trained = train_svqe(h, circuit, weights, svqe);
      circuit = std::move(trained.circuit);
      step.lambda_hat = std::move(trained.lambda_hat);
    }

    if (c.oracle.exact_log_z) {
      step.log_z.log_z = exact_log_partition(h, c.beta);
      step.log_z.c_value = -step.log_z.log_z / c.beta;
      if (!step.lambda_hat.empty()) step.log_z.p_star = boltzmann_weights(step.lambda_hat, c.beta);
    } else {
      step.log_z = solve_log_partition(step.lambda_hat, c.beta, c.logz, derive_seed(c.seed, {detail::kLogzKey, t}));
    }

    const auto grad_seed = derive_seed(c.seed, {detail::kGradKey, t});
    if (c.oracle.exact_gradient) {
      step.gradient = exact_dual_gradient(h, c.beta, record);
    } else if (oracle_u) {
      step.gradient = sampled_dual_gradient(*oracle_u, step.log_z.p_star, h, record, c.beta, grad_samples,
                                            c.backend, grad_seed);
    } else {
      step.gradient = sampled_dual_gradient(circuit, step.log_z.p_star, h, record, c.beta, grad_samples,
                                            c.backend, grad_seed);
    }

    TraceRow row;
    row.iter = t;
    row.log_z = step.log_z.log_z;
    row.loss = loss_L(nu, c.beta, record, step.log_z.log_z);
    for (std::size_t l = 0; l < m; ++l) nu[l] -= lr * step.gradient[l];
    row.nu = nu;
    row.err_inf = mu.empty() ? std::numeric_limits<double>::quiet_NaN() : inf_distance(nu, mu);
    if (c.timing)
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    trace.rows.push_back(std::move(row));

    bool finite = true;
    for (double v : nu) finite = finite && std::isfinite(v) && std::abs(v) < 1e6;
    if (!finite) {
      trace.diverged = true;
      break;
    }
    if (c.grad_tolerance > 0.0 && inf_norm(step.gradient) < c.grad_tolerance) break;
  }
  return trace;
}

inline ConvergenceTrace run_hqhl(const ExperimentConfig& c, const Instance& inst) {
  const auto mu = inst.mu();
  return run_hqhl(c, inst.target, inst.record, mu);
}

inline ConvergenceTrace run_hqhl(const ExperimentConfig& c) { return run_hqhl(c, generate_instance(c)); }

// ---------------------------------------------------------------------------
// Trace export

inline std::vector<std::string> trace_columns(std::size_t m) {
  std::vector<std::string> cols{"iter"};
  for (std::size_t l = 1; l <= m; ++l) cols.push_back("nu_" + std::to_string(l));
  for (const char* c : {"loss", "err_inf", "log_z", "seconds"}) cols.emplace_back(c);
  return cols;
}

inline std::string trace_to_csv(const ConvergenceTrace& trace) {
  std::string out;
  const auto cols = trace_columns(trace.m);
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : trace.rows) {
    out += std::to_string(r.iter);
    for (double v : r.nu) out += "," + format_double(v);
    for (double v : {r.loss, r.err_inf, r.log_z, r.seconds}) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

namespace detail {

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double number_or_nan(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw ConfigError("trace JSON: expected a number");
  return j.get<double>();
}

}  // namespace detail

/// {"columns": [...], "m": m, "diverged": bool, "rows": [[iter, nu..., loss,
/// err_inf, log_z, seconds], ...]} with non-finite values as null.
inline json trace_to_json(const ConvergenceTrace& trace) {
  json rows = json::array();
  for (const auto& r : trace.rows) {
    json row = json::array({r.iter});
    for (double v : r.nu) row.push_back(detail::number_or_null(v));
    for (double v : {r.loss, r.err_inf, r.log_z, r.seconds}) row.push_back(detail::number_or_null(v));
    rows.push_back(std::move(row));
  }
  return {{"columns", trace_columns(trace.m)}, {"m", trace.m}, {"diverged", trace.diverged}, {"rows", rows}};
}

inline ConvergenceTrace trace_from_json(const json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("rows")) throw ConfigError("trace JSON: missing m or rows");
  ConvergenceTrace t;
  t.m = j.at("m").get<std::size_t>();
  t.diverged = j.value("diverged", false);
  for (const auto& row : j.at("rows")) {
    if (!row.is_array() || row.size() != t.m + 5) throw ConfigError("trace JSON: row has the wrong width");
    TraceRow r;
    r.iter = row.at(0).get<std::size_t>();
    for (std::size_t l = 0; l < t.m; ++l) r.nu.push_back(detail::number_or_nan(row.at(1 + l)));
    r.loss = detail::number_or_nan(row.at(t.m + 1));
    r.err_inf = detail::number_or_nan(row.at(t.m + 2));
    r.log_z = detail::number_or_nan(row.at(t.m + 3));
    r.seconds = detail::number_or_nan(row.at(t.m + 4));
    t.rows.push_back(std::move(r));
  }
  return t;
}

enum class TraceFormat { csv, json };

inline void export_trace(const ConvergenceTrace& trace, const std::string& path, TraceFormat format) {
  write_text_file(path, format == TraceFormat::csv ? trace_to_csv(trace) : trace_to_json(trace).dump(2) + "\n");
}

inline ConvergenceTrace import_trace(const std::string& path) {
  return trace_from_json(parse_json(read_text_file(path), path));
}

// ---------------------------------------------------------------------------
// Configuration JSON

namespace detail {

template <class T>
T get_field(const json& obj, const char* key, const char* where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + ": bad value for \"" + key + "\"");
  }
}

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

inline std::size_t positive_count(const json& obj, const char* key, const char* where) {
  const auto v = get_field<long long>(obj, key, where);
  if (v < 1) throw ConfigError(std::string(where) + ": \"" + key + "\" must be >= 1");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline ExperimentConfig config_from_json(const json& j) {
  using detail::get_field;
  using detail::positive_count;
  detail::check_keys(j, {"n", "model", "params", "random", "hamiltonian", "beta", "outer", "svqe", "logz", "grad",
                         "backend", "shots", "record_shots", "seed", "oracle_mode", "nu0", "timing", "out"},
                     "config");
  ExperimentConfig c;
  if (j.contains("n")) c.n = get_field<int>(j, "n", "config");
  if (j.contains("hamiltonian")) {
    c.target = hamiltonian_from_json(j.at("hamiltonian"));
    c.n = c.target->num_qubits();
  }
  if (j.contains("model")) {
    try {
      c.model = spin_model_from_string(get_field<std::string>(j, "model", "config"));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("params")) c.model_params = get_field<std::vector<double>>(j, "params", "config");
  if (j.contains("random")) {
    detail::check_keys(j.at("random"), {"m"}, "random");
    if (j.at("random").contains("m")) c.random_m = positive_count(j.at("random"), "m", "random");
  }
  if (j.contains("beta")) c.beta = get_field<double>(j, "beta", "config");
  if (j.contains("outer")) {
    const auto& o = j.at("outer");
    detail::check_keys(o, {"iters", "lr", "tol"}, "outer");
    if (o.contains("iters")) c.outer_iterations = positive_count(o, "iters", "outer");
    if (o.contains("lr")) c.outer_lr = get_field<double>(o, "lr", "outer");
    if (o.contains("tol")) c.grad_tolerance = get_field<double>(o, "tol", "outer");
  }
  if (j.contains("svqe")) {
    const auto& s = j.at("svqe");
    detail::check_keys(s, {"depth", "iters", "lr", "T", "D", "full_sum_threshold"}, "svqe");
    if (s.contains("depth")) c.svqe_depth = get_field<int>(s, "depth", "svqe");
    if (s.contains("iters")) c.svqe.iterations = positive_count(s, "iters", "svqe");
    if (s.contains("lr")) c.svqe.learning_rate = get_field<double>(s, "lr", "svqe");
    if (s.contains("T")) c.svqe.samples.per_group = positive_count(s, "T", "svqe");
    if (s.contains("D")) c.svqe.samples.groups = positive_count(s, "D", "svqe");
    if (s.contains("full_sum_threshold"))
      c.svqe.full_sum_threshold = get_field<std::size_t>(s, "full_sum_threshold", "svqe");
  }
  if (j.contains("logz")) {
    const auto& l = j.at("logz");
    detail::check_keys(l, {"solver", "iters", "step"}, "logz");
    if (l.contains("solver")) {
      try {
        c.logz.solver = logz_solver_from_string(get_field<std::string>(l, "solver", "logz"));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    if (l.contains("iters")) c.logz.mirror.iterations = positive_count(l, "iters", "logz");
    if (l.contains("step")) c.logz.mirror.step_scale = get_field<double>(l, "step", "logz");
  }
  if (j.contains("grad")) {
    const auto& g = j.at("grad");
    detail::check_keys(g, {"K", "D", "epsilon", "eta"}, "grad");
    if (g.contains("K")) c.grad_K = positive_count(g, "K", "grad");
    if (g.contains("D")) c.grad_D = positive_count(g, "D", "grad");
    if (g.contains("epsilon")) c.grad_epsilon = get_field<double>(g, "epsilon", "grad");
    if (g.contains("eta")) c.grad_eta = get_field<double>(g, "eta", "grad");
  }
  if (j.contains("backend")) {
    const auto b = get_field<std::string>(j, "backend", "config");
    if (b == "exact") c.backend = ExpectationBackend::exact();
    else if (b == "shots") c.backend = ExpectationBackend::sampled(ShotBudget{});
    else throw ConfigError("backend must be \"exact\" or \"shots\"");
  }
  if (j.contains("shots")) {
    const auto& s = j.at("shots");
    detail::check_keys(s, {"epsilon", "eta"}, "shots");
    if (s.contains("epsilon")) c.backend.shots.epsilon = get_field<double>(s, "epsilon", "shots");
    if (s.contains("eta")) c.backend.shots.eta = get_field<double>(s, "eta", "shots");
  }
  if (j.contains("record_shots")) c.record_shots = get_field<std::uint64_t>(j, "record_shots", "config");
  if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed", "config");
  if (j.contains("oracle_mode")) {
    const auto& o = j.at("oracle_mode");
    if (o.is_boolean()) {
      c.oracle = o.get<bool>() ? Ablation::full() : Ablation::none();
    } else {
      detail::check_keys(o, {"spectrum", "log_z", "gradient"}, "oracle_mode");
      c.oracle.exact_spectrum = o.value("spectrum", false);
      c.oracle.exact_log_z = o.value("log_z", false);
      c.oracle.exact_gradient = o.value("gradient", false);
    }
  }
  if (j.contains("nu0")) c.initial_nu = get_field<std::vector<double>>(j, "nu0", "config");
  if (j.contains("timing")) c.timing = get_field<bool>(j, "timing", "config");
  if (j.contains("out")) c.out = get_field<std::string>(j, "out", "config");
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// Experiment presets

struct Table1Row {
  int n;
  double beta;
  double lr;
  std::vector<std::vector<int>> codes;
  std::vector<double> mu;
};

/// Random-Hamiltonian configurations: rows 1-3 vary beta, rows 1 and 4-6
/// vary m, rows 1, 7, 8 vary n.
inline const std::vector<Table1Row>& table1_rows() {
  static const std::vector<Table1Row> rows{
      {3, 1.0, 1.0, {{0, 2, 1}, {2, 1, 3}, {0, 3, 3}}, {0.3408, -0.6384, -0.4988}},
      {3, 0.3, 8.0, {{1, 0, 0}, {3, 0, 2}, {3, 1, 3}}, {-0.4966, -0.8575, -0.7902}},
      {3, 3.0, 0.1, {{1, 0, 0}, {3, 3, 3}, {0, 2, 3}}, {0.5717, -0.1313, 0.2053}},
      {3, 1.0, 1.0, {{3, 2, 1}, {2, 1, 3}, {0, 0, 2}, {2, 0, 0}}, {-0.7205, -0.3676, -0.7583, -0.3002}},
      {3, 1.0, 1.0,
       {{1, 3, 0}, {2, 1, 1}, {3, 3, 2}, {2, 3, 1}, {0, 2, 0}},
       {-0.5254, -0.1481, -0.0037, -0.4373, 0.7326}},
      {3, 1.0, 1.0,
       {{3, 2, 2}, {0, 2, 1}, {1, 2, 1}, {2, 2, 0}, {0, 1, 2}, {3, 2, 1}},
       {-0.5992, 0.7912, 0.5307, -0.5422, -0.9239, 0.0354}},
      {4, 1.0, 1.0, {{0, 2, 0, 1}, {1, 0, 0, 1}, {2, 0, 1, 0}}, {0.0858, 0.3748, -0.1007}},
      {5, 1.0, 1.0, {{2, 2, 2, 1, 2}, {2, 3, 3, 2, 1}, {1, 2, 0, 2, 3}}, {-0.0411, 0.7882, 0.6207}},
  };
  return rows;
}

inline PauliHamiltonian table1_hamiltonian(const Table1Row& row) {
  std::vector<PauliString> strings;
  for (const auto& c : row.codes) strings.push_back(parse_pauli_string(std::span<const int>(c)));
  return make_hamiltonian(strings, row.mu);
}

struct Table2Entry {
  SpinModel model;
  int n;
  double lr;
  std::vector<double> params;
};

/// Many-body configurations at beta = 1.
inline const std::vector<Table2Entry>& table2_entries() {
  static const std::vector<Table2Entry> entries{
      {SpinModel::ising, 3, 2.0, {0.1981, 0.7544}},
      {SpinModel::ising, 4, 1.0, {0.5296, 0.4996}},
      {SpinModel::ising, 5, 0.5, {-0.6916, 0.4801}},
      {SpinModel::xy, 3, 1.0, {-0.0839}},
      {SpinModel::xy, 4, 1.0, {0.2883}},
      {SpinModel::xy, 5, 0.6, {-0.7773}},
      {SpinModel::heisenberg, 3, 1.0, {0.0346, 0.8939}},
      {SpinModel::heisenberg, 4, 1.0, {-0.5831, -0.0366}},
      {SpinModel::heisenberg, 5, 1.0, {0.2883, -0.2385}},
  };
  return entries;
}

inline ExperimentConfig table1_config(const Table1Row& row, std::uint64_t seed) {
  ExperimentConfig c;
  c.target = table1_hamiltonian(row);
  c.n = row.n;
  c.beta = row.beta;
  c.outer_lr = row.lr;
  c.seed = seed;
  return c;
}

inline ExperimentConfig table2_config(const Table2Entry& e, std::uint64_t seed) {
  ExperimentConfig c;
  c.n = e.n;
  c.model = e.model;
  c.model_params = e.params;
  c.beta = 1.0;
  c.outer_lr = e.lr;
  c.seed = seed;
  return c;
}

}  // namespace hqhl
