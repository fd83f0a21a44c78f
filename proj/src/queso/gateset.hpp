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

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "queso/expr.hpp"

namespace queso {

/**
 * One gate of a gate set, defined by its path sum:
 *
 *   |x> -> sum over branch bits y of  amplitude(x, y, params) |state(x, y)>
 *
 * amplitude and state range over gate-local bits x0..x{arity-1} and
 * y0..y{branch_bits-1}. A gate is monomial iff it has no branch bits.
 */
struct GateDef {
  std::string name;        // unique id inside the gate set (e.g. "rx_pi2")
  std::string qasm_name;   // mnemonic in OpenQASM text (e.g. "rx")
  int arity = 1;
  int num_params = 0;
  int branch_bits = 0;
  AmpExpr amplitude;
  std::vector<Anf> state;  // one row per output wire
  /// Fixed angle printed/matched in QASM for parameterless variants of a
  /// parameterized mnemonic (e.g. rx(pi/2)); multiples of pi.
  std::optional<Rational> fixed_angle_pi;  // angle = value * pi
  /// Software-implemented phase gate: error-free, skipped by the no-rz cost.
  bool virtual_gate = false;
  /// Per parameter slot: lcm of the coefficient denominators that slot has
  /// inside the amplitude (1 or 2). A constant angle q*pi fed into slot k
  /// stays in the field iff q * 4 / param_coeff_den[k] is an integer.
  std::vector<int> param_coeff_den;

  /// True when the constant angle pi*q can instantiate parameter slot k
  /// without leaving Q(i)[sqrt 2].
  bool constant_angle_ok(int slot, const Rational &q) const;

  bool monomial() const { return branch_bits == 0; }
  /// True when every state row is an affine (degree <= 1) form.
  bool affine_state() const;
};

struct GateSet {
  std::string name;
  std::vector<GateDef> gates;
  std::vector<std::string> synth_params;  // canonical expression texts
  bool params_once = false;  // each theta may appear at most once per circuit
  int max_symbolic_arity = 2;

  const GateDef *find(const std::string &gate_name) const;
  /// QASM dispatch: resolves mnemonic + angle list against fixed-angle
  /// variants. Returns nullptr when nothing matches.
  const GateDef *resolve_qasm(const std::string &mnemonic,
                              const std::vector<double> &angles) const;
  int max_params() const;
};

/**
 * Loads a gate set from JSON text (schema "queso.gateset.v1"). Validates:
 * arity in {1,2}, state row count = arity, pi coefficients quarter-integer,
 * theta coefficients half-integer, branch bits in {0,1,2}. Throws UserError
 * with a description of the offending gate/field.
 */
GateSet load_gateset(const std::string &json_text);
GateSet load_gateset_file(const std::string &path);

/// Built-in gate sets: "nam", "ibm", "rigetti", "ion".
const std::vector<std::string> &builtin_gateset_names();
GateSet builtin_gateset(const std::string &name);
/// The JSON text the built-in was parsed from (also shipped in data/).
std::string builtin_gateset_json(const std::string &name);

// ---------------------------------------------------------------------------
// Interpretations of uninterpreted state transformers.

/**
 * An explicit reversible function on Z_2^arity, stored as a truth table:
 * table[x] = f(x) with bit 0 of x = first wire. Always a bijection.
 */
struct Interpretation {
  int arity = 0;
  std::vector<std::uint8_t> table;

  bool operator==(const Interpretation &o) const {
    return arity == o.arity && table == o.table;
  }
  bool is_identity() const;
  /// Per-output-bit ANF over input bits 0..arity-1.
  std::vector<Anf> to_anf() const;
  std::string to_string() const;
};

Interpretation identity_interpretation(int arity);
Interpretation swap_interpretation();  // f(x1 x2) = x2 x1

/// All reversible functions Z_2^n -> Z_2^n in deterministic (lexicographic)
/// order: 2 for n=1, 24 for n=2. Throws UserError for n > 2.
std::vector<Interpretation> enumerate_interpretations(int arity);

}  // namespace queso
