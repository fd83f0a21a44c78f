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

#include "queso/optimizer.hpp"

#include <chrono>
#include <map>
#include <set>
#include <unordered_set>

namespace queso {

CostKind cost_kind_from_string(const std::string &name) {
  if (name == "total") return CostKind::TotalGates;
  if (name == "2q") return CostKind::TwoQubitGates;
  if (name == "no-rz") return CostKind::TotalExcludingRz;
  throw UserError("unknown cost function '" + name +
                  "' (expected total|2q|no-rz)");
}

std::string cost_kind_to_string(CostKind kind) {
  switch (kind) {
    case CostKind::TotalGates: return "total";
    case CostKind::TwoQubitGates: return "2q";
    case CostKind::TotalExcludingRz: return "no-rz";
  }
  return "?";
}

int circuit_cost(const ConcreteCircuit &c, CostKind kind) {
  int cost = 0;
  for (const GateInstance &g : c.gates) {
    if (g.is_fence()) continue;
    switch (kind) {
      case CostKind::TotalGates:
        ++cost;
        break;
      case CostKind::TwoQubitGates:
        if (g.def->arity == 2) ++cost;
        break;
      case CostKind::TotalExcludingRz:
        if (!g.def->virtual_gate) ++cost;
        break;
    }
  }
  return cost;
}

ConcreteCircuit apply_max(const RewriteRule &rule, const ConcreteCircuit &c,
                          const MatchLimits &limits) {
  std::vector<Match> matches = find_matches(rule, c, limits);
  if (matches.empty()) return c;
  std::vector<Match> maximal = maximal_applicable_set(c, matches);
  if (maximal.empty()) return c;
  return apply_rewrites(c, rule, maximal);
}

namespace {

struct QueueEntry {
  int cost;
  std::uint64_t seq;  // insertion order tie-break

  bool operator<(const QueueEntry &o) const {
    return cost != o.cost ? cost < o.cost : seq < o.seq;
  }
};

}  // namespace

ConcreteCircuit max_beam(const ConcreteCircuit &input,
                         const std::vector<RewriteRule> &rules,
                         const BeamConfig &cfg, BeamStats *stats) {
  auto t0 = std::chrono::steady_clock::now();
  auto expired = [&]() {
    if (cfg.timeout_seconds <= 0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
               .count() >= cfg.timeout_seconds;
  };

  BeamStats local;
  local.initial_cost = circuit_cost(input, cfg.cost);

  std::map<QueueEntry, ConcreteCircuit> queue;
  std::unordered_set<Digest, DigestHash> seen;
  std::uint64_t seq = 0;

  seen.insert(canonical_hash(input));
  queue.emplace(QueueEntry{local.initial_cost, seq++}, input);
  ConcreteCircuit best = input;
  int best_cost = local.initial_cost;

  while (!queue.empty() && !expired()) {
    auto it = queue.begin();
    ConcreteCircuit current = std::move(it->second);
    int current_cost = it->first.cost;
    queue.erase(it);
    local.expanded++;
    if (current_cost < best_cost) {
      best = current;
      best_cost = current_cost;
    }

    // maximal application of every rule, evaluated in parallel but merged
    // in rule order so results do not depend on the worker count
    std::vector<int> rule_ids(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) rule_ids[i] = static_cast<int>(i);
    std::vector<ConcreteCircuit> results =
        parallel_map(rule_ids, cfg.jobs, [&](int ri) {
          return apply_max(rules[ri], current, cfg.limits);
        });
    for (ConcreteCircuit &next : results) {
      if (expired()) break;
      int next_cost = circuit_cost(next, cfg.cost);
      if (next_cost > best_cost) continue;
      Digest h = canonical_hash(next);
      if (!seen.insert(h).second) continue;
      queue.emplace(QueueEntry{next_cost, seq++}, std::move(next));
      local.enqueued++;
      if (static_cast<int>(queue.size()) > cfg.queue_capacity)
        queue.erase(std::prev(queue.end()));  // evict the worst
    }
  }

  local.timed_out = expired() && !queue.empty();
  local.final_cost = best_cost;
  local.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (stats) *stats = local;
  return best;
}

}  // namespace queso
