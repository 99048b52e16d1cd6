// Copyright 2026 The qbrittle Authors
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

#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qbrittle/circuit.hpp"
#include "qbrittle/format.hpp"

namespace qbrittle {

/// Circuit document:
///   { "n_qubits": int, "params": {...} | null,
///     "gates": [ {"type":"rot",...} | {"type":"cnot",...} ] }
/// Written by hand so the byte layout is stable and every angle carries 17
/// significant digits.
inline std::string to_json(const Circuit& circuit) {
  std::string out;
  out.reserve(64 + circuit.size() * 96);
  out += "{\n  \"n_qubits\": " + std::to_string(circuit.n_qubits()) + ",\n  \"params\": ";
  if (const auto& p = circuit.params()) {
    out += "{\"n\": " + std::to_string(p->n) + ", \"alpha\": " + format_real(p->alpha) +
           ", \"rho\": " + format_real(p->rho) + ", \"seed\": " + std::to_string(p->seed) + "}";
  } else {
    out += "null";
  }
  out += ",\n  \"gates\": [";
  bool first = true;
  for (const Gate& g : circuit.gates()) {
    out += first ? "\n    " : ",\n    ";
    first = false;
    if (const auto* r = std::get_if<Rotation>(&g)) {
      out += "{\"type\": \"rot\", \"axis\": \"";
      out += axis_char(r->axis);
      out += "\", \"qubit\": " + std::to_string(r->qubit) + ", \"theta\": " + format_real(r->theta) +
             ", \"provenance\": \"" +
             (r->provenance == Provenance::Layered ? "layered" : "appended") +
             "\", \"layer\": " + std::to_string(r->layer) + "}";
    } else {
      const auto& c = std::get<Cnot>(g);
      out += "{\"type\": \"cnot\", \"control\": " + std::to_string(c.control) +
             ", \"target\": " + std::to_string(c.target) + ", \"layer\": " + std::to_string(c.layer) +
             "}";
    }
  }
  out += circuit.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

namespace detail {

using nlohmann::json;

inline const json& field(const json& obj, std::string_view name, std::string_view where) {
  if (!obj.is_object()) throw ParseError(std::string(where) + ": expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw ParseError(std::string(where) + ": missing field \"" + std::string(name) + "\"");
  }
  return *it;
}

inline long long int_field(const json& obj, std::string_view name, std::string_view where) {
  const json& v = field(obj, name, where);
  if (!v.is_number_integer()) {
    throw ParseError(std::string(where) + ": field \"" + std::string(name) + "\" must be an integer");
  }
  return v.get<long long>();
}

inline double real_field(const json& obj, std::string_view name, std::string_view where) {
  const json& v = field(obj, name, where);
  if (!v.is_number()) {
    throw ParseError(std::string(where) + ": field \"" + std::string(name) + "\" must be a number");
  }
  return v.get<double>();
}

inline std::string string_field(const json& obj, std::string_view name, std::string_view where) {
  const json& v = field(obj, name, where);
  if (!v.is_string()) {
    throw ParseError(std::string(where) + ": field \"" + std::string(name) + "\" must be a string");
  }
  return v.get<std::string>();
}

inline int qubit_field(const json& obj, std::string_view name, std::string_view where) {
  const long long v = int_field(obj, name, where);
  if (v < 0 || v > 1 << 20) {
    throw ParseError(std::string(where) + ": field \"" + std::string(name) + "\" out of range");
  }
  return static_cast<int>(v);
}

}  // namespace detail

/// Parses a circuit document. Structural problems raise ParseError naming
/// the offending field; gates that do not fit the register raise ParseError
/// as well (validation failure).
inline Circuit circuit_from_json(std::string_view text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  const int n = detail::qubit_field(doc, "n_qubits", "circuit");
  if (n < 1) throw ParseError("circuit: field \"n_qubits\" must be positive");

  std::optional<GenerationParams> params;
  const json& pj = detail::field(doc, "params", "circuit");
  if (!pj.is_null()) {
    GenerationParams p;
    p.n = static_cast<int>(detail::int_field(pj, "n", "params"));
    p.alpha = detail::real_field(pj, "alpha", "params");
    p.rho = detail::real_field(pj, "rho", "params");
    const json& seed = detail::field(pj, "seed", "params");
    if (!seed.is_number_integer()) throw ParseError("params: field \"seed\" must be an integer");
    p.seed = seed.is_number_unsigned() ? seed.get<std::uint64_t>()
                                       : static_cast<std::uint64_t>(seed.get<long long>());
    params = p;
  }

  const json& gj = detail::field(doc, "gates", "circuit");
  if (!gj.is_array()) throw ParseError("circuit: field \"gates\" must be an array");
  std::vector<Gate> gates;
  gates.reserve(gj.size());
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const std::string where = "gates[" + std::to_string(i) + "]";
    const json& g = gj[i];
    const std::string type = detail::string_field(g, "type", where);
    const int layer = static_cast<int>(detail::int_field(g, "layer", where));
    if (type == "rot") {
      Rotation r;
      const std::string axis = detail::string_field(g, "axis", where);
      if (axis == "x") r.axis = Axis::X;
      else if (axis == "y") r.axis = Axis::Y;
      else if (axis == "z") r.axis = Axis::Z;
      else throw ParseError(where + ": field \"axis\" must be one of x|y|z");
      r.qubit = detail::qubit_field(g, "qubit", where);
      r.theta = detail::real_field(g, "theta", where);
      const std::string prov = detail::string_field(g, "provenance", where);
      if (prov == "layered") r.provenance = Provenance::Layered;
      else if (prov == "appended") r.provenance = Provenance::Appended;
      else throw ParseError(where + ": field \"provenance\" must be layered|appended");
      r.layer = layer;
      gates.emplace_back(r);
    } else if (type == "cnot") {
      gates.emplace_back(Cnot{detail::qubit_field(g, "control", where),
                              detail::qubit_field(g, "target", where), layer});
    } else {
      throw ParseError(where + ": field \"type\" must be rot|cnot");
    }
  }
  try {
    return Circuit(n, std::move(gates), params);
  } catch (const InvalidParameter& e) {
    throw ParseError(std::string("validation: ") + e.what());
  }
}

/// OpenQASM 2.0 with rx/ry/rz/cx on a single register `q`.
inline std::string export_qasm(const Circuit& circuit) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" +
                    std::to_string(circuit.n_qubits()) + "];\n";
  for (const Gate& g : circuit.gates()) {
    if (const auto* r = std::get_if<Rotation>(&g)) {
      out += 'r';
      out += axis_char(r->axis);
      out += "(" + format_real(r->theta) + ") q[" + std::to_string(r->qubit) + "];\n";
    } else {
      const auto& c = std::get<Cnot>(g);
      out += "cx q[" + std::to_string(c.control) + "],q[" + std::to_string(c.target) + "];\n";
    }
  }
  return out;
}

}  // namespace qbrittle
