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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "queso/gateset.hpp"

namespace queso {

// ---------------------------------------------------------------------------
// Parameter expressions: rational-linear combinations of circuit parameters
// plus a rational multiple of pi. Covers every entry of the per-gate-set
// synthesis tables (t1, t1+t2, -t1, pi/2, ...).

struct ParamExpr {
  std::map<int, Rational> coeffs;  // theta index -> nonzero coefficient
  Rational pi_mult = 0;

  static ParamExpr var(int theta);
  static ParamExpr constant_pi(const Rational &mult);
  /// Parses "t1", "-t1", "t1+t2", "pi", "pi/2", "3/4pi", sums thereof.
  static ParamExpr parse(const std::string &text);

  bool is_constant() const { return coeffs.empty(); }
  /// Exactly one theta with coefficient +-1 and no pi part: directly
  /// bindable during matching.
  bool is_single_var() const;
  /// Anything not matchable by direct binding of one variable.
  bool is_compound() const { return !is_constant() && !is_single_var(); }
  std::set<int> vars() const;

  double eval(const std::vector<double> &theta_values) const;

  bool operator==(const ParamExpr &o) const {
    return coeffs == o.coeffs && pi_mult == o.pi_mult;
  }
  bool operator<(const ParamExpr &o) const;
  std::string to_string() const;
  void add_to_digest(DigestBuilder &b) const;
};

// ---------------------------------------------------------------------------
// Circuit patterns: gate sequences with parameter expressions and at most a
// few symbolic gates. These are the objects synthesis enumerates and rules
// store.

struct PatternGate {
  const GateDef *def = nullptr;  // nullptr marks a symbolic gate S
  int sym_arity = 0;             // wire count of the symbolic gate
  std::vector<int> qubits;       // 0-based, ordered (role-sensitive)
  std::vector<ParamExpr> params;

  bool is_symbolic() const { return def == nullptr; }
  int arity() const { return is_symbolic() ? sym_arity : def->arity; }
  std::string display_name() const { return is_symbolic() ? "S" : def->name; }
};

struct CircuitPattern {
  int num_qubits = 0;  // wire count (= used wires for canonical patterns)
  int num_params = 0;  // number of distinct theta variables
  std::vector<PatternGate> gates;

  int size() const { return static_cast<int>(gates.size()); }
  /// Index of the (single) symbolic gate, or -1.
  int symbolic_index() const;
  bool has_symbolic() const { return symbolic_index() >= 0; }
  std::set<int> used_qubits() const;
  std::set<int> used_params() const;

  bool operator==(const CircuitPattern &o) const;
  std::string to_text() const;  // "h q0 ; cx q0,q1 ; rz(t1+t2) q1" or "-"
  Digest digest() const;
};

/// Renames wires and parameters to first-use order and rewrites the gate
/// list into the canonical topological order (parallel gates sorted by
/// wire). Idempotent.
CircuitPattern canonicalize_pattern(const CircuitPattern &p);
bool is_canonical_pattern(const CircuitPattern &p);

/// Parses the to_text() form back. Gate names resolved against the set;
/// "S q0,q1" gives a symbolic gate. Throws UserError on unknown names.
CircuitPattern parse_pattern(const std::string &text, const GateSet &gs);

// ---------------------------------------------------------------------------
// Concrete circuits: double-precision angles, plus opaque fences (barriers
// and measurements) that block matching.

enum class FenceKind { None, Barrier, Measure };

struct GateInstance {
  const GateDef *def = nullptr;  // null for fences
  std::vector<int> qubits;
  std::vector<double> angles;
  FenceKind fence = FenceKind::None;
  int measure_target = -1;  // classical bit for Measure fences

  bool is_fence() const { return fence != FenceKind::None; }
};

struct ConcreteCircuit {
  int num_qubits = 0;
  int num_clbits = 0;
  std::string qreg_name = "q";
  std::string creg_name = "c";
  std::vector<GateInstance> gates;

  int size() const { return static_cast<int>(gates.size()); }
  /// Gate count excluding fences.
  int gate_count() const;
};

/// Per-qubit wire adjacency: for gate i and wire-slot k, the previous/next
/// gate index touching that wire (-1 at the boundary).
struct WireGraph {
  std::vector<std::vector<int>> pred;
  std::vector<std::vector<int>> next;

  static WireGraph build(const ConcreteCircuit &c);
  /// All DAG successors of `gates` (transitive, excluding the seeds).
  std::vector<bool> descendants(const ConcreteCircuit &c,
                                const std::vector<int> &gates) const;
  std::vector<bool> ancestors(const ConcreteCircuit &c,
                              const std::vector<int> &gates) const;
};

/// Angle normalized into [0, 2pi) and quantized at 1e-10.
std::int64_t quantize_angle(double angle);
double normalize_angle(double angle);

/// Canonical gate order: the unique topological order that emits, among
/// ready gates, the one touching the lowest wire. Invariant under swapping
/// adjacent gates on disjoint wires.
std::vector<int> canonical_gate_order(const ConcreteCircuit &c);
ConcreteCircuit canonicalize_circuit(const ConcreteCircuit &c);

/// Digest of the canonical order with angles normalized mod 2pi and
/// quantized at 1e-10. Equal for circuits differing only in parallel-gate
/// order or by 2pi angle shifts.
Digest canonical_hash(const ConcreteCircuit &c);

/// Structural equality (no reordering, exact angle doubles).
bool circuits_identical(const ConcreteCircuit &a, const ConcreteCircuit &b);

/**
 * Lifts a concrete circuit to a pattern for verification: angles that are
 * integer multiples of pi/4 (within 1e-12) become exact constants; every
 * other distinct angle value (quantized at 1e-12) becomes a shared fresh
 * parameter variable. Fences must be absent. The mapping is shared across
 * calls through `angle_vars` so two circuits lift over the same variables.
 */
CircuitPattern lift_to_pattern(const ConcreteCircuit &c,
                               std::map<std::int64_t, int> &angle_vars);

}  // namespace queso
