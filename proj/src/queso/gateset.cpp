// Copyright 2026 The queso authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "queso/gateset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace queso {

bool GateDef::affine_state() const {
  for (const Anf &row : state)
    if (!row.is_affine()) return false;
  return true;
}

bool GateDef::constant_angle_ok(int slot, const Rational &q) const {
  if (slot < 0 || slot >= static_cast<int>(param_coeff_den.size()))
    return false;
  Rational scaled = q * 4 / param_coeff_den[slot];
  return scaled.get_den() == 1;
}

const GateDef *GateSet::find(const std::string &gate_name) const {
  for (const GateDef &g : gates)
    if (g.name == gate_name) return &g;
  return nullptr;
}

const GateDef *GateSet::resolve_qasm(const std::string &mnemonic,
                                     const std::vector<double> &angles) const {
  const double two_pi = 8.0 * std::atan(1.0);
  for (const GateDef &g : gates) {
    if (g.qasm_name != mnemonic) continue;
    if (g.fixed_angle_pi.has_value()) {
      if (angles.size() != 1) continue;
      double want = g.fixed_angle_pi->get_d() * (two_pi / 2.0);
      double diff = std::fmod(angles[0] - want, two_pi);
      if (diff < 0) diff += two_pi;
      if (diff < 1e-10 || two_pi - diff < 1e-10) return &g;
      continue;
    }
    if (static_cast<int>(angles.size()) == g.num_params) return &g;
  }
  return nullptr;
}

int GateSet::max_params() const {
  int m = 0;
  for (const GateDef &g : gates) m = std::max(m, g.num_params);
  // Parameter expressions may introduce more variables than any single gate
  // consumes (e.g. t1+t2 on a 1-parameter gate).
  for (const std::string &p : synth_params)
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i] == 't' && std::isdigit(static_cast<unsigned char>(p[i + 1])))
        m = std::max(m, p[i + 1] - '0');
  return m;
}

namespace {

void validate_angle_coeffs(const std::string &gate, const AmpExpr &amp) {
  for (const AmpTerm &t : amp) {
    for (const AngleTerm &a : t.angle) {
      Rational scaled = a.coeff * (a.sym == kAnglePi ? 4 : 2);
      if (scaled.get_den() != 1) {
        throw UserError(
            "gate " + gate + ": angle coefficient " +
            rational_to_string(a.coeff) +
            (a.sym == kAnglePi
                 ? " of pi is not a quarter-integer (outside Q(i)[sqrt 2])"
                 : " of a parameter is not a half-integer"));
      }
    }
  }
}

GateDef gate_from_json(const nlohmann::json &j) {
  if (j.value("symbolic", false)) {
    // symbolic gate declarations carry no semantics of their own; they are
    // uninterpreted and must be monomial
    if (j.value("branches", 0) != 0)
      throw UserError("gate " + j.value("name", std::string("?")) +
                      ": symbolic gates are monomial (branches must be 0)");
    throw UserError(
        "gate " + j.value("name", std::string("?")) +
        ": symbolic gates are built in (S, arity 1..2); set "
        "max_symbolic_arity instead of declaring them");
  }
  GateDef g;
  g.name = j.at("name").get<std::string>();
  g.qasm_name = j.value("qasm", g.name);
  g.arity = j.at("arity").get<int>();
  g.num_params = j.value("params", 0);
  g.branch_bits = j.value("branches", 0);
  g.virtual_gate = j.value("virtual", false);
  if (g.arity < 1 || g.arity > 2)
    throw UserError("gate " + g.name + ": arity must be 1 or 2");
  if (g.branch_bits < 0 || g.branch_bits > 2)
    throw UserError("gate " + g.name + ": branch_bits must be 0..2");
  if (g.num_params < 0 || g.num_params > 3)
    throw UserError("gate " + g.name + ": params must be 0..3");
  if (j.contains("fixed_angle_pi"))
    g.fixed_angle_pi = parse_rational(j.at("fixed_angle_pi").get<std::string>());
  try {
    g.amplitude = parse_amp_expr(j.at("amplitude").get<std::string>(), g.arity,
                                 g.num_params, g.branch_bits);
  } catch (const UserError &e) {
    throw UserError("gate " + g.name + ": amplitude: " + e.what());
  }
  const auto &state = j.at("state");
  if (!state.is_array() || static_cast<int>(state.size()) != g.arity)
    throw UserError("gate " + g.name + ": state must list one row per wire");
  for (const auto &row : state) {
    try {
      g.state.push_back(
          parse_bit_expr(row.get<std::string>(), g.arity, g.branch_bits));
    } catch (const UserError &e) {
      throw UserError("gate " + g.name + ": state: " + e.what());
    }
  }
  validate_angle_coeffs(g.name, g.amplitude);
  g.param_coeff_den.assign(g.num_params, 1);
  for (const AmpTerm &t : g.amplitude)
    for (const AngleTerm &a : t.angle)
      if (a.sym >= 0 && a.coeff.get_den() == 2)
        g.param_coeff_den[a.sym] = 2;
  return g;
}

}  // namespace

GateSet load_gateset(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw UserError(std::string("gate-set file is not valid JSON: ") + e.what());
  }
  if (j.value("schema", "") != "queso.gateset.v1")
    throw UserError("gate-set file schema must be queso.gateset.v1");
  GateSet gs;
  gs.name = j.at("name").get<std::string>();
  gs.params_once = j.value("params_once", false);
  gs.max_symbolic_arity = j.value("max_symbolic_arity", 2);
  if (j.contains("synthesis_params"))
    for (const auto &p : j.at("synthesis_params"))
      gs.synth_params.push_back(p.get<std::string>());
  for (const auto &gj : j.at("gates")) gs.gates.push_back(gate_from_json(gj));
  for (std::size_t i = 0; i < gs.gates.size(); ++i)
    for (std::size_t k = i + 1; k < gs.gates.size(); ++k)
      if (gs.gates[i].name == gs.gates[k].name)
        throw UserError("duplicate gate name " + gs.gates[i].name);
  return gs;
}

GateSet load_gateset_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open gate-set file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_gateset(ss.str());
}

// ---------------------------------------------------------------------------
// Built-in gate sets. Path sums follow the per-gate transition form
// |x> -> sum_y amp(x,y) |state(x,y)>; rz is the phase gate
// |x> -> e^{i(2x-1)theta} |x>.

namespace {

const char *kNamJson = R"JSON({
  "schema": "queso.gateset.v1",
  "name": "nam",
  "params_once": false,
  "synthesis_params": ["t1", "t2", "t1+t2"],
  "gates": [
    {"name": "h", "qasm": "h", "arity": 1, "params": 0, "branches": 1,
     "amplitude": "(* (rt2 -1) (expi (* 1 pi x0 y0)))",
     "state": ["y0"]},
    {"name": "x", "qasm": "x", "arity": 1, "params": 0, "branches": 0,
     "amplitude": "1",
     "state": ["(not x0)"]},
    {"name": "rz", "qasm": "rz", "arity": 1, "params": 1, "branches": 0,
     "virtual": true,
     "amplitude": "(expi (+ (* 2 t1 x0) (* -1 t1)))",
     "state": ["x0"]},
    {"name": "cx", "qasm": "cx", "arity": 2, "params": 0, "branches": 0,
     "amplitude": "1",
     "state": ["x0", "(xor x0 x1)"]}
  ]
})JSON";

const char *kIbmJson = R"JSON({
  "schema": "queso.gateset.v1",
  "name": "ibm",
  "params_once": true,
  "synthesis_params": ["t1", "t2", "t3", "t1+t2", "t1+t2+t3"],
  "gates": [
    {"name": "u1", "qasm": "u1", "arity": 1, "params": 1, "branches": 0,
     "virtual": true,
     "amplitude": "(expi (* 1 t1 x0))",
     "state": ["x0"]},
    {"name": "u2", "qasm": "u2", "arity": 1, "params": 2, "branches": 1,
     "amplitude": "(* (rt2 -1) (expi (+ (* 1 t1 y0) (* 1 t2 x0) (* 1 pi x0) (* -1 pi x0 y0))))",
     "state": ["y0"]},
    {"name": "u3", "qasm": "u3", "arity": 1, "params": 3, "branches": 1,
     "amplitude": "(+ (* 1/2 (expi (+ (* 1/2 t1) (* 1 t2 y0) (* 1 t3 x0) (* 1/2 pi x0) (* -1/2 pi y0)))) (* 1/2 (expi (+ (* -1/2 t1) (* 1 t2 y0) (* 1 t3 x0) (* 3/2 pi x0) (* 1/2 pi y0)))))",
     "state": ["y0"]},
    {"name": "cx", "qasm": "cx", "arity": 2, "params": 0, "branches": 0,
     "amplitude": "1",
     "state": ["x0", "(xor x0 x1)"]}
  ]
})JSON";

const char *kRigettiJson = R"JSON({
  "schema": "queso.gateset.v1",
  "name": "rigetti",
  "params_once": false,
  "synthesis_params": ["t1", "t2", "t1+t2", "-t1"],
  "gates": [
    {"name": "rx_pi", "qasm": "rx", "arity": 1, "params": 0, "branches": 0,
     "fixed_angle_pi": "1",
     "amplitude": "(expi (* -1/2 pi))",
     "state": ["(not x0)"]},
    {"name": "rx_pi2", "qasm": "rx", "arity": 1, "params": 0, "branches": 1,
     "fixed_angle_pi": "1/2",
     "amplitude": "(* (rt2 -1) (expi (+ (* -1/2 pi x0) (* -1/2 pi y0) (* 1 pi x0 y0))))",
     "state": ["y0"]},
    {"name": "rx_mpi2", "qasm": "rx", "arity": 1, "params": 0, "branches": 1,
     "fixed_angle_pi": "-1/2",
     "amplitude": "(* (rt2 -1) (expi (+ (* 1/2 pi x0) (* 1/2 pi y0) (* -1 pi x0 y0))))",
     "state": ["y0"]},
    {"name": "rz", "qasm": "rz", "arity": 1, "params": 1, "branches": 0,
     "virtual": true,
     "amplitude": "(expi (+ (* 2 t1 x0) (* -1 t1)))",
     "state": ["x0"]},
    {"name": "cz", "qasm": "cz", "arity": 2, "params": 0, "branches": 0,
     "amplitude": "(expi (* 1 pi x0 x1))",
     "state": ["x0", "x1"]}
  ]
})JSON";

const char *kIonJson = R"JSON({
  "schema": "queso.gateset.v1",
  "name": "ion",
  "params_once": false,
  "synthesis_params": ["t1", "t2", "t1+t2", "-t1", "pi", "pi/2"],
  "gates": [
    {"name": "rx", "qasm": "rx", "arity": 1, "params": 1, "branches": 1,
     "amplitude": "(+ (* 1/2 (expi (+ (* 1/2 t1) (* -1 pi (xor x0 y0))))) (* 1/2 (expi (* -1/2 t1))))",
     "state": ["y0"]},
    {"name": "ry", "qasm": "ry", "arity": 1, "params": 1, "branches": 1,
     "amplitude": "(+ (* 1/2 (expi (+ (* 1/2 t1) (* -1/2 pi (xor x0 y0)) (* 1 pi x0 (xor x0 y0))))) (* 1/2 (expi (+ (* -1/2 t1) (* 1/2 pi (xor x0 y0)) (* 1 pi x0 (xor x0 y0))))))",
     "state": ["y0"]},
    {"name": "rz", "qasm": "rz", "arity": 1, "params": 1, "branches": 0,
     "virtual": true,
     "amplitude": "(expi (+ (* 2 t1 x0) (* -1 t1)))",
     "state": ["x0"]},
    {"name": "rxx", "qasm": "rxx", "arity": 2, "params": 1, "branches": 1,
     "amplitude": "(+ (* 1/2 (expi (+ (* 1/2 t1) (* -1 pi y0)))) (* 1/2 (expi (* -1/2 t1))))",
     "state": ["(xor x0 y0)", "(xor x1 y0)"]}
  ]
})JSON";

}  // namespace

const std::vector<std::string> &builtin_gateset_names() {
  static const std::vector<std::string> names = {"nam", "ibm", "rigetti",
                                                 "ion"};
  return names;
}

std::string builtin_gateset_json(const std::string &name) {
  if (name == "nam") return kNamJson;
  if (name == "ibm") return kIbmJson;
  if (name == "rigetti") return kRigettiJson;
  if (name == "ion") return kIonJson;
  throw UserError("unknown built-in gate set: " + name);
}

GateSet builtin_gateset(const std::string &name) {
  return load_gateset(builtin_gateset_json(name));
}

// ---------------------------------------------------------------------------
// Interpretations

bool Interpretation::is_identity() const {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] != i) return false;
  return true;
}

std::vector<Anf> Interpretation::to_anf() const {
  // Moebius transform per output bit: the coefficient of monomial S is the
  // xor of f_i(x) over all x with support inside S.
  int n = arity;
  std::vector<Anf> out(n);
  for (int bit = 0; bit < n; ++bit) {
    Anf expr = Anf::zero();
    for (int s = 0; s < (1 << n); ++s) {
      bool coeff = false;
      for (int x = 0; x < (1 << n); ++x) {
        if ((x & ~s) != 0) continue;
        coeff = coeff != (((table[x] >> bit) & 1) != 0);
      }
      if (!coeff) continue;
      Anf mono = Anf::one();
      for (int b = 0; b < n; ++b)
        if ((s >> b) & 1) mono = mono * Anf::var(input_bit(b));
      expr = expr ^ mono;
    }
    out[bit] = expr;
  }
  return out;
}

std::string Interpretation::to_string() const {
  std::ostringstream os;
  os << arity << ":";
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i) os << ",";
    os << static_cast<int>(table[i]);
  }
  return os.str();
}

Interpretation identity_interpretation(int arity) {
  Interpretation interp;
  interp.arity = arity;
  interp.table.resize(1u << arity);
  std::iota(interp.table.begin(), interp.table.end(), 0);
  return interp;
}

Interpretation swap_interpretation() {
  Interpretation interp;
  interp.arity = 2;
  // Bit 0 is the first wire: swapping wires maps pattern x1x2 -> x2x1.
  interp.table = {0, 2, 1, 3};
  return interp;
}

std::vector<Interpretation> enumerate_interpretations(int arity) {
  if (arity < 1 || arity > 2)
    throw UserError("symbolic gates support 1 or 2 qubits");
  std::vector<std::uint8_t> table(1u << arity);
  std::iota(table.begin(), table.end(), 0);
  std::vector<Interpretation> out;
  do {
    Interpretation interp;
    interp.arity = arity;
    interp.table = table;
    out.push_back(std::move(interp));
  } while (std::next_permutation(table.begin(), table.end()));
  return out;
}

}  // namespace queso
