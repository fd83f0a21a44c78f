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

#include "queso/synth.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <unordered_set>

namespace queso {

std::string RewriteRule::to_string() const {
  std::string s = lhs.to_text() + "  ->  " + rhs.to_text();
  if (symbolic) s += "  [" + interp.to_string() + "]";
  return s;
}

namespace {

struct GateChoice {
  PatternGate gate;  // qubits/params filled in
};

// All single-gate instances available to the enumerator, in deterministic
// order: gate-set order x wire tuples x parameter expressions.
std::vector<GateChoice> plain_gate_choices(const GateSet &gs, int max_qubits) {
  std::vector<ParamExpr> exprs;
  for (const std::string &text : gs.synth_params)
    exprs.push_back(ParamExpr::parse(text));
  if (exprs.empty()) exprs.push_back(ParamExpr::var(0));

  std::vector<std::vector<int>> tuples1, tuples2;
  for (int a = 0; a < max_qubits; ++a) {
    tuples1.push_back({a});
    for (int b = 0; b < max_qubits; ++b)
      if (a != b) tuples2.push_back({a, b});
  }

  std::vector<GateChoice> out;
  for (const GateDef &def : gs.gates) {
    const auto &tuples = def.arity == 1 ? tuples1 : tuples2;
    for (const auto &qubits : tuples) {
      // parameter expression tuples with repetition, lexicographic
      std::vector<int> idx(def.num_params, 0);
      for (;;) {
        GateChoice c;
        c.gate.def = &def;
        c.gate.qubits = qubits;
        bool valid = true;
        for (int k = 0; k < def.num_params; ++k) {
          const ParamExpr &pe = exprs[idx[k]];
          if (pe.is_constant() && !def.constant_angle_ok(k, pe.pi_mult))
            valid = false;
          c.gate.params.push_back(pe);
        }
        if (valid) out.push_back(std::move(c));
        int k = def.num_params - 1;
        for (; k >= 0; --k) {
          if (++idx[k] < static_cast<int>(exprs.size())) break;
          idx[k] = 0;
        }
        if (k < 0) break;
        if (def.num_params == 0) break;
      }
    }
  }
  return out;
}

std::vector<GateChoice> symbolic_gate_choices(int max_qubits,
                                              int max_arity) {
  std::vector<GateChoice> out;
  for (int arity = 1; arity <= max_arity; ++arity) {
    if (arity > max_qubits) break;
    std::vector<std::vector<int>> tuples;
    if (arity == 1)
      for (int a = 0; a < max_qubits; ++a) tuples.push_back({a});
    else
      for (int a = 0; a < max_qubits; ++a)
        for (int b = 0; b < max_qubits; ++b)
          if (a != b) tuples.push_back({a, b});
    for (const auto &qubits : tuples) {
      GateChoice c;
      c.gate.def = nullptr;
      c.gate.sym_arity = arity;
      c.gate.qubits = qubits;
      out.push_back(std::move(c));
    }
  }
  return out;
}

bool params_once_ok(const CircuitPattern &p) {
  std::map<int, int> uses;
  for (const PatternGate &g : p.gates)
    for (const ParamExpr &pe : g.params)
      for (int v : pe.vars())
        if (++uses[v] > 1) return false;
  return true;
}

// Appends the choice and accepts the result only in canonical form within
// the enumeration bounds.
std::optional<CircuitPattern> try_extend(const CircuitPattern &base,
                                         const GateChoice &choice,
                                         const SynthConfig &cfg,
                                         int qubit_bound, int max_params) {
  CircuitPattern cand = base;
  cand.gates.push_back(choice.gate);
  for (int q : choice.gate.qubits)
    cand.num_qubits = std::max(cand.num_qubits, q + 1);
  for (const ParamExpr &pe : choice.gate.params)
    for (int v : pe.vars()) cand.num_params = std::max(cand.num_params, v + 1);
  if (cand.num_qubits > qubit_bound) return std::nullopt;
  if (cand.num_params > max_params) return std::nullopt;
  if (cfg.gate_set->params_once && !params_once_ok(cand)) return std::nullopt;
  if (!is_canonical_pattern(cand)) return std::nullopt;
  return cand;
}

class DeadlineTracker {
 public:
  explicit DeadlineTracker(double seconds)
      : enabled_(seconds > 0),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(seconds))) {}
  bool expired() const {
    return enabled_ && std::chrono::steady_clock::now() >= deadline_;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

std::vector<CircuitPattern> enumerate_circuits(const SynthConfig &cfg) {
  const GateSet &gs = *cfg.gate_set;
  auto choices = plain_gate_choices(gs, cfg.max_qubits);
  int max_params = gs.max_params();

  std::vector<CircuitPattern> all;
  CircuitPattern empty;  // zero wires; strata pad it as needed
  all.push_back(empty);
  std::vector<CircuitPattern> frontier = {empty};
  std::unordered_set<Digest, DigestHash> seen;
  seen.insert(empty.digest());

  for (int size = 1; size <= cfg.max_size; ++size) {
    std::vector<CircuitPattern> next;
    for (const CircuitPattern &base : frontier) {
      for (const GateChoice &choice : choices) {
        auto cand = try_extend(base, choice, cfg, cfg.max_qubits, max_params);
        if (!cand) continue;
        Digest d = cand->digest();
        if (!seen.insert(d).second) continue;
        next.push_back(*cand);
        all.push_back(std::move(*cand));
      }
    }
    frontier = std::move(next);
  }
  return all;
}

SynthResult synth_eq(const SynthConfig &cfg) {
  const GateSet &gs = *cfg.gate_set;
  auto t0 = std::chrono::steady_clock::now();
  DeadlineTracker deadline(cfg.timeout_seconds);

  SynthResult result;
  int max_params = gs.max_params();
  int sym_arity = std::min(gs.max_symbolic_arity, 2);
  for (int n = 1; n <= cfg.max_qubits; ++n) {
    Rng seeder(cfg.seed);
    result.pifs.emplace_back(n, max_params, cfg.symbolic ? 1 : 0, sym_arity,
                             seeder.derive(1000 + n));
  }
  auto pif_for = [&result](int used_qubits) -> Pif & {
    return result.pifs[std::max(used_qubits, 1) - 1];
  };

  // The empty circuit seeds every stratum (the n-wire identity).
  for (int n = 1; n <= cfg.max_qubits; ++n) {
    CircuitPattern empty;
    empty.num_qubits = n;
    result.pifs[n - 1].insert(empty, std::nullopt);
    result.stats.inserts++;
  }

  struct Candidate {
    CircuitPattern circuit;  // padded to the target stratum's width
    std::optional<Interpretation> interp;  // per interpretation for symbolic
    bool own_stratum = true;  // narrowest stratum (drives representative growth)
  };

  // Evaluates candidates in parallel (deterministically ordered), inserts
  // sequentially, and reports which circuits opened a new class.
  auto insert_batch = [&](std::vector<Candidate> &batch,
                          std::vector<char> &opened_flags) {
    struct Eval {
      FieldElement value;
      long degree = 0;
    };
    std::vector<Eval> evals = parallel_map(batch, cfg.jobs, [&](const Candidate &c) {
      Eval e;
      const Pif &pif = pif_for(c.circuit.num_qubits);
      e.value = pif.evaluate_fingerprint(
          c.circuit, c.interp.has_value() ? &*c.interp : nullptr, &e.degree);
      return e;
    });
    opened_flags.assign(batch.size(), 0);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      Pif &pif = pif_for(batch[i].circuit.num_qubits);
      auto r = pif.insert_evaluated(batch[i].circuit, batch[i].interp,
                                    std::move(evals[i].value),
                                    evals[i].degree);
      result.stats.inserts++;
      opened_flags[i] = r.new_class ? 1 : 0;
    }
  };

  auto choices = plain_gate_choices(gs, cfg.max_qubits);

  // Plain pass: grow only representatives (first member of a new class).
  CircuitPattern empty0;
  std::vector<CircuitPattern> frontier = {empty0};
  std::unordered_set<Digest, DigestHash> seen;
  seen.insert(empty0.digest());
  std::vector<std::vector<CircuitPattern>> plain_canonical_by_size(
      std::max(cfg.max_size, cfg.symbolic_max_size) + 1);
  plain_canonical_by_size[0].push_back(empty0);

  // A circuit on w wires is compared in its own stratum and, padded, in
  // every wider stratum: cross-width identities (e.g. a two-wire pattern
  // reducing to a one-wire circuit) live in the wider filter.
  auto pad_into_strata = [&](const CircuitPattern &c,
                             const std::optional<Interpretation> &interp,
                             int max_stratum, std::vector<Candidate> &batch) {
    int own = std::max(c.num_qubits, 1);
    for (int n = own; n <= max_stratum; ++n) {
      CircuitPattern padded = c;
      padded.num_qubits = n;
      batch.push_back(Candidate{std::move(padded), interp, n == own});
    }
  };

  for (int size = 1; size <= cfg.max_size && !result.stats.timed_out; ++size) {
    std::vector<Candidate> batch;
    for (const CircuitPattern &base : frontier) {
      for (const GateChoice &choice : choices) {
        auto cand = try_extend(base, choice, cfg, cfg.max_qubits, max_params);
        if (!cand) continue;
        if (!seen.insert(cand->digest()).second) continue;
        result.stats.candidates++;
        pad_into_strata(*cand, std::nullopt, cfg.max_qubits, batch);
      }
      if (deadline.expired()) {
        result.stats.timed_out = true;
        break;
      }
    }
    std::vector<char> opened;
    insert_batch(batch, opened);
    std::vector<CircuitPattern> next;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!batch[i].own_stratum) continue;
      const CircuitPattern &circuit = batch[i].circuit;
      if (size <= cfg.symbolic_max_size - 1 &&
          circuit.num_qubits <= cfg.symbolic_max_qubits)
        plain_canonical_by_size[size].push_back(circuit);
      if (opened[i]) next.push_back(circuit);
    }
    frontier = std::move(next);
  }

  // Symbolic pass: circuits with exactly one symbolic gate, grown from the
  // representatives of plain and symbolic classes, every interpretation of
  // the symbolic gate inserted per Algorithm-style enumeration.
  if (cfg.symbolic && !result.stats.timed_out) {
    auto sym_choices =
        symbolic_gate_choices(cfg.symbolic_max_qubits, sym_arity);
    std::vector<std::vector<Interpretation>> interps_by_arity(sym_arity + 1);
    for (int a = 1; a <= sym_arity; ++a)
      interps_by_arity[a] = enumerate_interpretations(a);

    // bases: plain circuits to put a symbolic gate after; symbolic frontier
    // circuits to extend with plain gates
    std::vector<CircuitPattern> sym_frontier;
    for (int size = 1;
         size <= cfg.symbolic_max_size && !result.stats.timed_out; ++size) {
      std::vector<CircuitPattern> sym_circuits;
      // plain base (size-1) + S
      for (const CircuitPattern &base : plain_canonical_by_size[size - 1]) {
        for (const GateChoice &choice : sym_choices) {
          auto cand = try_extend(base, choice, cfg, cfg.symbolic_max_qubits,
                                 max_params);
          if (!cand) continue;
          if (!seen.insert(cand->digest()).second) continue;
          sym_circuits.push_back(std::move(*cand));
        }
      }
      // symbolic base (size-1) + plain gate
      for (const CircuitPattern &base : sym_frontier) {
        for (const GateChoice &choice : choices) {
          auto cand = try_extend(base, choice, cfg, cfg.symbolic_max_qubits,
                                 max_params);
          if (!cand) continue;
          if (!seen.insert(cand->digest()).second) continue;
          sym_circuits.push_back(std::move(*cand));
        }
        if (deadline.expired()) {
          result.stats.timed_out = true;
          break;
        }
      }

      std::vector<Candidate> batch;
      std::vector<std::size_t> batch_start;
      for (const CircuitPattern &c : sym_circuits) {
        result.stats.candidates++;
        batch_start.push_back(batch.size());
        int arity = c.gates[c.symbolic_index()].sym_arity;
        for (const Interpretation &interp : interps_by_arity[arity])
          pad_into_strata(c, interp, cfg.symbolic_max_qubits, batch);
      }
      batch_start.push_back(batch.size());
      std::vector<char> opened;
      insert_batch(batch, opened);
      // a symbolic circuit grows if any interpretation opened a class in
      // the circuit's own stratum
      std::vector<CircuitPattern> next;
      for (std::size_t ci = 0; ci < sym_circuits.size(); ++ci) {
        bool any = false;
        for (std::size_t j = batch_start[ci]; j < batch_start[ci + 1]; ++j)
          any = any || (opened[j] && batch[j].own_stratum);
        if (any) next.push_back(sym_circuits[ci]);
      }
      sym_frontier = std::move(next);
    }
  }

  result.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

// ---------------------------------------------------------------------------
// Rule extraction

namespace {

bool same_symbolic_site(const CircuitPattern &a, const CircuitPattern &b) {
  int ia = a.symbolic_index(), ib = b.symbolic_index();
  if (ia < 0 || ib < 0) return false;
  const PatternGate &ga = a.gates[ia], &gb = b.gates[ib];
  // Applying a symbolic rule keeps the matched bridge in place, which is
  // only sound when both sides see the bridge through the same wire tuple.
  return ga.sym_arity == gb.sym_arity && ga.qubits == gb.qubits;
}

}  // namespace

std::vector<RewriteRule> extract_rules(const SynthResult &result,
                                       const SynthConfig &cfg) {
  std::vector<RewriteRule> rules;
  std::unordered_set<Digest, DigestHash> dedup;

  auto emit = [&](const PifEntry &from, const PifEntry &to) {
    RewriteRule r;
    r.lhs = from.circuit;
    r.rhs = to.circuit;
    r.symbolic = from.interp.has_value();
    if (r.symbolic) r.interp = *from.interp;
    r.size_preserving = from.circuit.size() == to.circuit.size();
    r.gate_set = cfg.gate_set->name;
    DigestBuilder b;
    b.add_string(r.lhs.to_text());
    b.add_string(r.rhs.to_text());
    b.add_string(r.symbolic ? r.interp.to_string() : "-");
    if (dedup.insert(b.finish()).second) rules.push_back(std::move(r));
  };

  for (const Pif &pif : result.pifs) {
    for (const PifClass &cls : pif.classes()) {
      if (cls.entries.size() < 2) continue;
      std::vector<const PifEntry *> entries;
      for (const PifEntry &e : cls.entries) entries.push_back(&e);
      std::sort(entries.begin(), entries.end(),
                [](const PifEntry *a, const PifEntry *b) {
                  if (a->circuit.size() != b->circuit.size())
                    return a->circuit.size() < b->circuit.size();
                  return a->circuit.to_text() < b->circuit.to_text();
                });
      for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
          const PifEntry &small = *entries[i];
          const PifEntry &big = *entries[j];
          bool sym_a = small.interp.has_value();
          bool sym_b = big.interp.has_value();
          if (sym_a != sym_b) continue;  // plain/symbolic never pair
          if (sym_a) {
            if (!(*small.interp == *big.interp)) continue;
            if (!same_symbolic_site(small.circuit, big.circuit)) continue;
          }
          emit(big, small);
          if (big.circuit.size() == small.circuit.size()) emit(small, big);
        }
      }
    }
  }
  return rules;
}

// ---------------------------------------------------------------------------
// Pruning

bool prune_disconnected_side(const RewriteRule &r) {
  auto disconnected = [](const CircuitPattern &p) {
    if (p.gates.size() <= 1) return false;
    std::vector<int> parent(p.gates.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::map<int, int> last_on_wire;
    for (std::size_t i = 0; i < p.gates.size(); ++i) {
      for (int q : p.gates[i].qubits) {
        auto it = last_on_wire.find(q);
        if (it != last_on_wire.end())
          parent[find(static_cast<int>(i))] = find(it->second);
        last_on_wire[q] = static_cast<int>(i);
      }
    }
    int root = find(0);
    for (std::size_t i = 1; i < p.gates.size(); ++i)
      if (find(static_cast<int>(i)) != root) return true;
    return false;
  };
  return disconnected(r.lhs) || disconnected(r.rhs);
}

namespace {
std::vector<ParamExpr> side_exprs(const CircuitPattern &p) {
  std::vector<ParamExpr> out;
  for (const PatternGate &g : p.gates)
    for (const ParamExpr &pe : g.params) out.push_back(pe);
  return out;
}
}  // namespace

bool prune_lhs_compound_param(const RewriteRule &r) {
  auto rhs = side_exprs(r.rhs);
  for (const ParamExpr &pe : side_exprs(r.lhs)) {
    if (!pe.is_compound()) continue;
    if (std::find(rhs.begin(), rhs.end(), pe) == rhs.end()) return true;
  }
  return false;
}

bool prune_rhs_params_unbindable(const RewriteRule &r) {
  auto lhs_exprs = side_exprs(r.lhs);
  std::set<int> lhs_vars = r.lhs.used_params();
  std::set<int> single_bound;
  for (const ParamExpr &pe : lhs_exprs)
    if (pe.is_single_var()) single_bound.insert(pe.coeffs.begin()->first);
  for (const ParamExpr &pe : side_exprs(r.rhs)) {
    if (pe.is_constant()) continue;
    auto vars = pe.vars();
    if (!std::includes(lhs_vars.begin(), lhs_vars.end(), vars.begin(),
                       vars.end()))
      return true;
    if (std::find(lhs_exprs.begin(), lhs_exprs.end(), pe) != lhs_exprs.end())
      continue;  // matched as a unit
    if (!std::includes(single_bound.begin(), single_bound.end(), vars.begin(),
                       vars.end()))
      return true;  // not reconstructible from bindings
  }
  return false;
}

bool prune_rhs_qubits_not_subset(const RewriteRule &r) {
  auto lhs = r.lhs.used_qubits();
  auto rhs = r.rhs.used_qubits();
  return !std::includes(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

bool prune_symbolic_empty_segment(const RewriteRule &r) {
  if (!r.symbolic) return false;
  int idx = r.lhs.symbolic_index();
  if (idx < 0) return true;  // malformed symbolic rule
  return idx == 0 || idx == r.lhs.size() - 1;
}

bool prune_common_affix(const RewriteRule &r) {
  auto equal_gates = [](const PatternGate &a, const PatternGate &b) {
    return a.def == b.def && a.sym_arity == b.sym_arity &&
           a.qubits == b.qubits && a.params == b.params;
  };
  const auto &lhs = r.lhs.gates;
  const auto &rhs = r.rhs.gates;
  if (lhs.empty() || rhs.empty()) return false;
  if (equal_gates(lhs.front(), rhs.front())) return true;  // common prefix
  if (equal_gates(lhs.back(), rhs.back())) return true;    // common suffix
  return false;
}

std::vector<RewriteRule> prune_rules(std::vector<RewriteRule> rules,
                                     PruneStats *stats) {
  PruneStats local;
  std::vector<RewriteRule> kept;
  kept.reserve(rules.size());
  for (RewriteRule &r : rules) {
    if (prune_disconnected_side(r)) {
      local.disconnected++;
      continue;
    }
    if (prune_lhs_compound_param(r)) {
      local.lhs_compound_param++;
      continue;
    }
    if (prune_rhs_params_unbindable(r)) {
      local.rhs_params++;
      continue;
    }
    if (prune_rhs_qubits_not_subset(r)) {
      local.rhs_qubits++;
      continue;
    }
    if (prune_symbolic_empty_segment(r)) {
      local.symbolic_empty_segment++;
      continue;
    }
    if (prune_common_affix(r)) {
      local.common_affix++;
      continue;
    }
    kept.push_back(std::move(r));
  }
  if (stats) *stats = local;
  return kept;
}

}  // namespace queso
