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

#include "queso/qasm.hpp"
#include "queso/synth.hpp"

namespace queso {

/**
 * One occurrence of a rule's left side in a circuit: an injective,
 * wire-consistent, convex embedding plus consistent parameter bindings.
 * For symbolic rules `bridge` holds the matched C_S gates (kept in place by
 * the rewrite) and the footprint includes them.
 */
struct Match {
  std::vector<int> gate_map;   // pattern gate index -> circuit gate (-1 for S)
  std::vector<int> qubit_map;  // pattern wire -> circuit wire (-1 unused)
  std::vector<double> theta;   // bound value per pattern parameter (or NaN)
  std::map<std::string, double> expr_bindings;  // compound exprs, by text
  std::vector<int> bridge;     // circuit gates matched to S (ascending)
  std::vector<int> footprint;  // all matched circuit gates (ascending)
  Digest circuit_hash;         // staleness guard for apply
};

struct MatchLimits {
  int bridge_max_gates = 10;
  int bridge_max_qubits = 7;  // wires spanned by C_S
};

/// All convex matches of a non-symbolic pattern, in deterministic
/// (anchor-ascending) order.
std::vector<Match> match_pattern(const CircuitPattern &pattern,
                                 const ConcreteCircuit &circuit);

/// Matches of a symbolic rule's left side C_l; S; C_l'. Candidate bridges
/// are the convex between-sets of (C_l, C_l') match pairs, restricted to
/// monomial affine gates within the size/wire limits, and qualify iff their
/// affine state summary on S's wires equals the rule's interpretation.
std::vector<Match> match_sym(const RewriteRule &rule,
                             const ConcreteCircuit &circuit,
                             const MatchLimits &limits = {});

/// Dispatches on the rule kind.
std::vector<Match> find_matches(const RewriteRule &rule,
                                const ConcreteCircuit &circuit,
                                const MatchLimits &limits = {});

/// Greedy inclusion-maximal subset of pairwise non-overlapping matches
/// (footprints disjoint), in discovery order.
std::vector<Match> maximal_matching_set(const std::vector<Match> &matches);

/**
 * True when the given non-overlapping matches can be rewritten atomically:
 * contracting every footprint to one node leaves the wire graph acyclic.
 * Long-range matches can be mutually order-entangled even with disjoint
 * footprints; such a set has no block-contiguous linearization.
 */
bool matches_jointly_applicable(const ConcreteCircuit &circuit,
                                const std::vector<Match> &matches);

/// maximal_matching_set restricted to jointly applicable picks.
std::vector<Match> maximal_applicable_set(const ConcreteCircuit &circuit,
                                          const std::vector<Match> &matches);

/// Rewrites one match. Throws UserError when the match is stale (circuit
/// changed since matching).
ConcreteCircuit apply_rewrite(const ConcreteCircuit &circuit,
                              const RewriteRule &rule, const Match &match);

/// Rewrites a set of non-overlapping matches atomically.
ConcreteCircuit apply_rewrites(const ConcreteCircuit &circuit,
                               const RewriteRule &rule,
                               const std::vector<Match> &matches);

// ---------------------------------------------------------------------------
// Affine state summaries over GF(2), defined for monomial subcircuits whose
// state transformers are affine. Tracks, per wire, an affine form over the
// subcircuit's input bits.

struct AffineForm {
  std::uint64_t linear = 0;  // bit i: coefficient of local input i
  bool constant = false;
};

struct AffineSummary {
  std::vector<int> wires;       // local index -> circuit wire
  std::vector<AffineForm> rows; // output form per local wire

  int local_of(int wire) const;
  /// Forward-composes the listed gates (ascending order). Returns nullopt
  /// when a gate is a fence, non-monomial, or has a non-affine state.
  static std::optional<AffineSummary> of_gates(const ConcreteCircuit &c,
                                               const std::vector<int> &gates);
  /// Evaluates the tracked transformer on a concrete input (bit i of
  /// `input` = local wire i).
  std::uint64_t apply(std::uint64_t input) const;
};

}  // namespace queso
