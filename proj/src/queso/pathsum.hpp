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

#include "queso/circuit.hpp"
#include "queso/gateset.hpp"

namespace queso {

/// One f^u application produced by composing a symbolic gate: output bits
/// uapp_bit(id, 0..arity-1) stand for f^u(args).
struct UappEntry {
  int gate_occurrence = 0;
  int arity = 0;
  std::vector<Anf> args;
};

struct Branch {
  AmpExpr amp;
  std::vector<Anf> state;  // one boolean expression per wire
};

/**
 * Path sum of a circuit in branch-expanded form: the transition
 *
 *   |x> -> sum over branches  amp_k(x) |state_k(x)>
 *
 * Branch bits of the constituent gates are expanded at construction, so
 * amplitudes and states range over input bits (and f^u output bits while
 * symbolic gates remain uninterpreted). Immutable in practice: operations
 * return fresh values.
 */
struct PathSum {
  int num_qubits = 0;
  std::vector<Branch> branches;
  std::vector<UappEntry> uapps;  // in creation order

  bool is_monomial() const { return branches.size() == 1; }
  bool fully_interpreted() const { return uapps.empty(); }
};

PathSum identity_path_sum(int num_qubits);

/// Places a gate on the given wires of an n-qubit system; untouched wires
/// pass through. Branch bits are expanded into one branch per assignment.
/// Throws UserError for out-of-range or repeated wire indices.
PathSum extend_gate(const GateDef &gate, const std::vector<int> &qubits,
                    const std::vector<ParamExpr> &params, int num_qubits);

/// Places a symbolic (monomial, uninterpreted) gate.
PathSum extend_symbolic(int gate_occurrence, int arity,
                        const std::vector<int> &qubits, int num_qubits);

/// Sequential composition p1 ; p2. Branch lists multiply; p2's f^u
/// applications are renamed apart per branch of p1.
PathSum compose(const PathSum &p1, const PathSum &p2);

/// Replaces every uninterpreted state transformer by its interpretation.
/// Amplitude transformers phi^u stay symbolic. Throws UserError when an
/// occurrence has no entry.
PathSum apply_interpretation(const PathSum &p,
                             const std::map<int, Interpretation> &interps);

/**
 * Path sum of a whole pattern: extend + compose over the gate list, then
 * (when `interp` is given) one shared interpretation applied to every
 * symbolic occurrence.
 */
PathSum build_path_sum(const CircuitPattern &pattern,
                       const Interpretation *interp = nullptr);

}  // namespace queso
