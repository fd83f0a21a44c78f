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

#include "queso/verifier.hpp"

namespace queso {

struct SynthConfig {
  const GateSet *gate_set = nullptr;  // must outlive the results
  int max_qubits = 3;
  int max_size = 4;
  bool symbolic = true;
  int symbolic_max_qubits = 2;
  int symbolic_max_size = 3;  // gate count including the symbolic gate
  std::uint64_t seed = 0;
  int jobs = 1;
  double timeout_seconds = 0;  // 0 = unbounded
};

struct RewriteRule {
  CircuitPattern lhs;
  CircuitPattern rhs;
  bool symbolic = false;
  Interpretation interp;  // meaningful when symbolic
  bool size_preserving = false;
  std::string gate_set;

  std::string to_string() const;
};

struct SynthStats {
  std::uint64_t candidates = 0;  // canonical circuits enumerated
  std::uint64_t inserts = 0;     // PIF inserts (one per interpretation)
  double elapsed_seconds = 0;
  bool timed_out = false;
};

struct SynthResult {
  std::vector<Pif> pifs;  // pifs[k]: stratum of circuits on k+1 wires
  SynthStats stats;
};

/**
 * Full bottom-up enumeration of canonical plain circuits of size <=
 * cfg.max_size: wires and parameters in first-use order, parallel gates in
 * wire order, deduplicated by canonical form, parameters drawn from the
 * gate set's table (each variable at most once when params_once is set).
 * Ordered by size, then deterministically within a size.
 */
std::vector<CircuitPattern> enumerate_circuits(const SynthConfig &cfg);

/**
 * Populates one polynomial identity filter per wire-count stratum, growing
 * only class representatives, and inserting every interpretation of
 * symbolic circuits. A timeout leaves a valid partial result.
 */
SynthResult synth_eq(const SynthConfig &cfg);

/**
 * Size-reducing rules (larger -> smaller) for every unordered pair in every
 * class, both directions for equal sizes, symbolic entries paired only when
 * they share the interpretation and the symbolic gate's wire tuple.
 */
std::vector<RewriteRule> extract_rules(const SynthResult &result,
                                       const SynthConfig &cfg);

// Pruning predicates; each returns true when the rule must be dropped.
bool prune_disconnected_side(const RewriteRule &r);
bool prune_lhs_compound_param(const RewriteRule &r);
bool prune_rhs_params_unbindable(const RewriteRule &r);
bool prune_rhs_qubits_not_subset(const RewriteRule &r);
bool prune_symbolic_empty_segment(const RewriteRule &r);
bool prune_common_affix(const RewriteRule &r);

struct PruneStats {
  std::uint64_t disconnected = 0;
  std::uint64_t lhs_compound_param = 0;
  std::uint64_t rhs_params = 0;
  std::uint64_t rhs_qubits = 0;
  std::uint64_t symbolic_empty_segment = 0;
  std::uint64_t common_affix = 0;
};

std::vector<RewriteRule> prune_rules(std::vector<RewriteRule> rules,
                                     PruneStats *stats = nullptr);

}  // namespace queso
