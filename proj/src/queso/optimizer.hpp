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

#include "queso/matcher.hpp"

namespace queso {

enum class CostKind {
  TotalGates,
  TwoQubitGates,
  TotalExcludingRz,  // skips gates flagged virtual (software phase gates)
};

CostKind cost_kind_from_string(const std::string &name);  // total|2q|no-rz
std::string cost_kind_to_string(CostKind kind);

/// Fences are free under every cost function.
int circuit_cost(const ConcreteCircuit &c, CostKind kind);

struct BeamConfig {
  int queue_capacity = 8000;
  double timeout_seconds = 3600;
  CostKind cost = CostKind::TotalGates;
  std::uint64_t seed = 0;
  int jobs = 1;
  MatchLimits limits;
};

struct BeamStats {
  std::uint64_t expanded = 0;
  std::uint64_t enqueued = 0;
  double elapsed_seconds = 0;
  bool timed_out = false;
  int initial_cost = 0;
  int final_cost = 0;
};

/// One maximal (greedy, non-overlapping) application of a rule; returns the
/// input unchanged when nothing matches.
ConcreteCircuit apply_max(const RewriteRule &rule, const ConcreteCircuit &c,
                          const MatchLimits &limits = {});

/**
 * Bounded best-first search over maximal rule applications. Every enqueued
 * circuit passed the cost filter (<= best so far) and the unseen-hash
 * filter; the queue evicts its worst entry above capacity; search ends when
 * the queue empties or the timeout strikes. The result never costs more
 * than the input.
 */
ConcreteCircuit max_beam(const ConcreteCircuit &c,
                         const std::vector<RewriteRule> &rules,
                         const BeamConfig &cfg, BeamStats *stats = nullptr);

}  // namespace queso
