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

// JSON interchange for Hamiltonians and measurement records, plus the
// small file helpers the CLI needs. Hamiltonian:
//   {"n": 3, "terms": [{"coeff": 0.5, "codes": [0, 2, 1]}, ...]}
// Record:
//   {"beta": 1.0, "observations": [{"codes": [...], "value": 0.1}, ...]}

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "hqhl/error.hpp"
#include "hqhl/exact.hpp"
#include "hqhl/pauli.hpp"

namespace hqhl {

using json = nlohmann::json;

/// Shortest decimal that round-trips to the same double. Non-finite values
/// print as nan, inf, -inf.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

/// Parses JSON text, reporting failures as ConfigError with `what` context.
inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

namespace detail {

inline PauliString string_from_json(const json& codes) {
  if (!codes.is_array()) throw ConfigError("\"codes\" must be an array");
  std::vector<int> c;
  for (const auto& v : codes) {
    if (!v.is_number_integer()) throw ConfigError("Pauli codes must be integers");
    c.push_back(v.get<int>());
  }
  try {
    return parse_pauli_string(std::span<const int>(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline json string_to_json(const PauliString& p) {
  json codes = json::array();
  for (auto c : p.codes()) codes.push_back(static_cast<int>(c));
  return codes;
}

inline double number_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw ConfigError(std::string("missing or non-numeric \"") + key + "\"");
  return obj.at(key).get<double>();
}

}  // namespace detail

inline json hamiltonian_to_json(const PauliHamiltonian& h) {
  json terms = json::array();
  for (const auto& t : h.terms())
    terms.push_back({{"coeff", t.coeff}, {"codes", detail::string_to_json(t.string)}});
  return {{"n", h.num_qubits()}, {"terms", terms}};
}

inline PauliHamiltonian hamiltonian_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    throw ConfigError("Hamiltonian JSON needs a \"terms\" array");
  std::vector<PauliTerm> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("codes")) throw ConfigError("each term needs \"codes\"");
    terms.push_back({detail::number_field(t, "coeff"), detail::string_from_json(t.at("codes"))});
  }
  try {
    PauliHamiltonian h(std::move(terms));
    if (j.contains("n") && (!j.at("n").is_number_integer() || j.at("n").get<int>() != h.num_qubits()))
      throw ConfigError("\"n\" does not match the term width");
    return h;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline json record_to_json(const MeasurementRecord& r) {
  json obs = json::array();
  for (const auto& o : r.observations)
    obs.push_back({{"codes", detail::string_to_json(o.string)}, {"value", o.value}});
  return {{"beta", r.beta}, {"observations", obs}};
}

inline MeasurementRecord record_from_json(const json& j) {
  if (!j.is_object() || !j.contains("observations") || !j.at("observations").is_array())
    throw ConfigError("record JSON needs an \"observations\" array");
  MeasurementRecord r;
  r.beta = detail::number_field(j, "beta");
  for (const auto& o : j.at("observations")) {
    if (!o.is_object() || !o.contains("codes")) throw ConfigError("each observation needs \"codes\"");
    r.observations.push_back({detail::string_from_json(o.at("codes")), detail::number_field(o, "value")});
  }
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return r;
}

}  // namespace hqhl
