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

#include "queso/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace queso {

namespace {

constexpr double kAngleTol = 1e-10;

bool angles_equal_mod_2pi(double a, double b) {
  double d = normalize_angle(a - b);
  return d < kAngleTol || (2.0 * M_PI - d) < kAngleTol;
}

struct BindState {
  std::vector<double> theta;  // NaN = unbound
  std::map<std::string, double> exprs;

  explicit BindState(int num_params)
      : theta(num_params, std::numeric_limits<double>::quiet_NaN()) {}

  bool bind(const ParamExpr &pe, double angle) {
    if (pe.is_constant())
      return angles_equal_mod_2pi(angle, pe.pi_mult.get_d() * M_PI);
    if (pe.is_single_var()) {
      int v = pe.coeffs.begin()->first;
      double val = pe.coeffs.begin()->second > 0 ? angle : -angle;
      if (std::isnan(theta[v])) {
        theta[v] = val;
        return true;
      }
      return angles_equal_mod_2pi(theta[v], val);
    }
    // compound: fully bound -> consistency check; otherwise bind as a unit
    bool all_bound = true;
    for (const auto &[v, coeff] : pe.coeffs)
      if (std::isnan(theta[v])) all_bound = false;
    if (all_bound) {
      double sum = pe.pi_mult.get_d() * M_PI;
      for (const auto &[v, coeff] : pe.coeffs) sum += coeff.get_d() * theta[v];
      return angles_equal_mod_2pi(sum, angle);
    }
    std::string key = pe.to_string();
    auto it = exprs.find(key);
    if (it == exprs.end()) {
      exprs[key] = angle;
      return true;
    }
    return angles_equal_mod_2pi(it->second, angle);
  }
};

// Backtracking embedder for the non-symbolic gates of a pattern. Gates in
// the same segment must be wire-adjacent in the circuit exactly as in the
// pattern; gates in different segments (the two sides of a symbolic gate)
// leave room for a bridge.
class MatchEngine {
 public:
  MatchEngine(const CircuitPattern &pat, const ConcreteCircuit &c,
              const WireGraph &wg, std::vector<int> gate_order,
              std::vector<int> segment_of)
      : pat_(pat),
        c_(c),
        wg_(wg),
        order_(std::move(gate_order)),
        segment_(std::move(segment_of)),
        qmap_(pat.num_qubits, -1),
        wire_taken_(c.num_qubits, false),
        gate_used_(c.gates.size(), false),
        bind_(pat.num_params) {
    gmap_.assign(pat_.gates.size(), -1);
    // previous pattern gate (and its slot) per (gate, slot) within a segment
    prev_.assign(pat_.gates.size(), {});
    std::map<std::pair<int, int>, std::pair<int, int>> last;  // (seg,wire)->(gate,slot)
    for (int k : order_) {
      const PatternGate &g = pat_.gates[k];
      prev_[k].assign(g.qubits.size(), {-1, -1});
      for (std::size_t s = 0; s < g.qubits.size(); ++s) {
        std::pair<int, int> key{segment_[k], g.qubits[s]};
        auto it = last.find(key);
        if (it != last.end()) prev_[k][s] = it->second;
        last[key] = {k, static_cast<int>(s)};
      }
    }
  }

  template <typename OnMatch>
  void run(OnMatch on_match) {
    on_match_ = on_match;
    recurse(0);
  }

  // state exposed to the finalizer
  std::vector<int> qmap_snapshot() const { return qmap_; }

 private:
  void recurse(std::size_t i) {
    if (i == order_.size()) {
      on_match_(gmap_, qmap_, bind_);
      return;
    }
    int k = order_[i];
    const PatternGate &pg = pat_.gates[k];
    // a wire-adjacency constraint pins the candidate uniquely
    int forced = -2;
    for (std::size_t s = 0; s < pg.qubits.size(); ++s) {
      auto [j, js] = prev_[k][s];
      if (j < 0 || gmap_[j] < 0) continue;
      int cj = gmap_[j];
      int wire = qmap_[pg.qubits[s]];
      int slot = -1;
      for (std::size_t m = 0; m < c_.gates[cj].qubits.size(); ++m)
        if (c_.gates[cj].qubits[m] == wire) slot = static_cast<int>(m);
      int cand = slot >= 0 ? wg_.next[cj][slot] : -1;
      if (forced == -2)
        forced = cand;
      else if (forced != cand)
        return;  // two wires disagree: dead end
    }
    if (forced != -2) {
      if (forced >= 0) try_assign(i, k, forced);
      return;
    }
    for (int g = 0; g < static_cast<int>(c_.gates.size()); ++g)
      try_assign(i, k, g);
  }

  void try_assign(std::size_t i, int k, int g) {
    const PatternGate &pg = pat_.gates[k];
    const GateInstance &cg = c_.gates[g];
    if (gate_used_[g] || cg.is_fence() || cg.def != pg.def) return;
    // wire consistency (injective)
    std::vector<int> newly_mapped;
    bool ok = true;
    for (std::size_t s = 0; s < pg.qubits.size() && ok; ++s) {
      int p = pg.qubits[s];
      int w = cg.qubits[s];
      if (qmap_[p] >= 0) {
        ok = qmap_[p] == w;
      } else if (wire_taken_[w]) {
        ok = false;
      } else {
        qmap_[p] = w;
        wire_taken_[w] = true;
        newly_mapped.push_back(p);
      }
    }
    // exact wire adjacency within the segment
    for (std::size_t s = 0; s < pg.qubits.size() && ok; ++s) {
      auto [j, js] = prev_[k][s];
      if (j < 0) continue;
      int cj = gmap_[j];
      int wire = qmap_[pg.qubits[s]];
      int slot = -1;
      for (std::size_t m = 0; m < c_.gates[cj].qubits.size(); ++m)
        if (c_.gates[cj].qubits[m] == wire) slot = static_cast<int>(m);
      ok = slot >= 0 && wg_.next[cj][slot] == g;
    }
    BindState saved = bind_;
    if (ok) {
      for (std::size_t s = 0; s < pg.params.size() && ok; ++s)
        ok = bind_.bind(pg.params[s], cg.angles[s]);
    }
    if (ok) {
      gmap_[k] = g;
      gate_used_[g] = true;
      recurse(i + 1);
      gate_used_[g] = false;
      gmap_[k] = -1;
    }
    bind_ = saved;
    for (int p : newly_mapped) {
      wire_taken_[qmap_[p]] = false;
      qmap_[p] = -1;
    }
  }

  const CircuitPattern &pat_;
  const ConcreteCircuit &c_;
  const WireGraph &wg_;
  std::vector<int> order_;
  std::vector<int> segment_;
  std::vector<std::vector<std::pair<int, int>>> prev_;
  std::vector<int> qmap_;
  std::vector<bool> wire_taken_;
  std::vector<bool> gate_used_;
  std::vector<int> gmap_;
  BindState bind_;
  std::function<void(const std::vector<int> &, const std::vector<int> &,
                     const BindState &)>
      on_match_;
};

// (desc(F) intersect anc(F)) outside F must be empty: no path between
// matched gates through an unmatched one.
bool footprint_convex(const ConcreteCircuit &c, const WireGraph &wg,
                      const std::vector<int> &footprint) {
  auto desc = wg.descendants(c, footprint);
  auto anc = wg.ancestors(c, footprint);
  std::vector<bool> in_f(c.gates.size(), false);
  for (int g : footprint) in_f[g] = true;
  for (std::size_t g = 0; g < c.gates.size(); ++g)
    if (!in_f[g] && desc[g] && anc[g]) return false;
  return true;
}

Match build_match(const CircuitPattern &pat, const ConcreteCircuit &c,
                  const std::vector<int> &gmap, const std::vector<int> &qmap,
                  const BindState &bind) {
  Match m;
  m.gate_map = gmap;
  m.qubit_map = qmap;
  m.theta = bind.theta;
  m.expr_bindings = bind.exprs;
  for (int g : gmap)
    if (g >= 0) m.footprint.push_back(g);
  std::sort(m.footprint.begin(), m.footprint.end());
  m.circuit_hash = canonical_hash(c);
  (void)pat;
  return m;
}

}  // namespace

std::vector<Match> match_pattern(const CircuitPattern &pattern,
                                 const ConcreteCircuit &circuit) {
  if (pattern.has_symbolic())
    throw UserError("match_pattern expects a non-symbolic pattern");
  std::vector<Match> out;
  if (pattern.gates.empty()) return out;
  WireGraph wg = WireGraph::build(circuit);
  std::vector<int> order(pattern.gates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<int> segment(pattern.gates.size(), 0);
  MatchEngine engine(pattern, circuit, wg, order, segment);
  engine.run([&](const std::vector<int> &gmap, const std::vector<int> &qmap,
                 const BindState &bind) {
    Match m = build_match(pattern, circuit, gmap, qmap, bind);
    if (!footprint_convex(circuit, wg, m.footprint)) return;
    out.push_back(std::move(m));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Affine summaries

int AffineSummary::local_of(int wire) const {
  for (std::size_t i = 0; i < wires.size(); ++i)
    if (wires[i] == wire) return static_cast<int>(i);
  return -1;
}

std::optional<AffineSummary> AffineSummary::of_gates(
    const ConcreteCircuit &c, const std::vector<int> &gates) {
  AffineSummary sum;
  for (int g : gates) {
    if (c.gates[g].is_fence()) return std::nullopt;
    for (int q : c.gates[g].qubits)
      if (sum.local_of(q) < 0) sum.wires.push_back(q);
  }
  std::sort(sum.wires.begin(), sum.wires.end());
  if (sum.wires.size() > 63) return std::nullopt;
  sum.rows.resize(sum.wires.size());
  for (std::size_t i = 0; i < sum.wires.size(); ++i)
    sum.rows[i] = AffineForm{1ULL << i, false};

  for (int gi : gates) {
    const GateInstance &g = c.gates[gi];
    if (!g.def->monomial() || !g.def->affine_state()) return std::nullopt;
    // current forms feeding the gate
    std::vector<AffineForm> in(g.qubits.size());
    for (std::size_t s = 0; s < g.qubits.size(); ++s)
      in[s] = sum.rows[sum.local_of(g.qubits[s])];
    for (std::size_t s = 0; s < g.qubits.size(); ++s) {
      AffineForm row{0, false};
      for (const auto &mono : g.def->state[s].monomials()) {
        if (mono.empty()) {
          row.constant = !row.constant;
        } else {
          int local_in = mono[0];  // affine: single gate-local input bit
          row.linear ^= in[local_in].linear;
          row.constant = row.constant != in[local_in].constant;
        }
      }
      sum.rows[sum.local_of(g.qubits[s])] = row;
    }
  }
  return sum;
}

std::uint64_t AffineSummary::apply(std::uint64_t input) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool v = rows[i].constant != (__builtin_popcountll(rows[i].linear & input) & 1);
    if (v) out |= 1ULL << i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic matching

namespace {

struct InterpAffine {
  std::vector<AffineForm> rows;  // over S-slot input bits
};

// Affine rows of a (1 or 2 wire) reversible truth table; every such table
// is affine, asserted by cross-checking all entries.
std::optional<InterpAffine> interp_affine(const Interpretation &interp) {
  InterpAffine ia;
  int n = interp.arity;
  for (int bit = 0; bit < n; ++bit) {
    AffineForm row;
    row.constant = (interp.table[0] >> bit) & 1;
    for (int j = 0; j < n; ++j) {
      bool coeff = (((interp.table[1 << j] >> bit) & 1) != 0) != row.constant;
      if (coeff) row.linear |= 1ULL << j;
    }
    ia.rows.push_back(row);
  }
  for (int x = 0; x < (1 << n); ++x) {
    int got = 0;
    for (int bit = 0; bit < n; ++bit) {
      bool v = ia.rows[bit].constant !=
               ((__builtin_popcountll(ia.rows[bit].linear & x) & 1) != 0);
      if (v) got |= 1 << bit;
    }
    if (got != interp.table[x]) return std::nullopt;
  }
  return ia;
}

// Convex closure of the set of gates lying between A and B; grows until no
// outside gate has both an ancestor and a descendant inside.
std::vector<int> bridge_closure(const ConcreteCircuit &c, const WireGraph &wg,
                                const std::vector<int> &a_gates,
                                const std::vector<int> &b_gates,
                                int max_gates, bool *ok) {
  *ok = true;
  std::vector<bool> in_f(c.gates.size(), false);
  std::vector<int> footprint = a_gates;
  footprint.insert(footprint.end(), b_gates.begin(), b_gates.end());
  for (int g : footprint) in_f[g] = true;

  auto desc_a = wg.descendants(c, a_gates);
  auto anc_b = wg.ancestors(c, b_gates);
  std::vector<int> bridge;
  for (std::size_t g = 0; g < c.gates.size(); ++g)
    if (!in_f[g] && desc_a[g] && anc_b[g]) {
      bridge.push_back(static_cast<int>(g));
      in_f[g] = true;
    }
  // close under convexity
  for (;;) {
    std::vector<int> all = footprint;
    all.insert(all.end(), bridge.begin(), bridge.end());
    auto desc = wg.descendants(c, all);
    auto anc = wg.ancestors(c, all);
    bool grew = false;
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
      if (!in_f[g] && desc[g] && anc[g]) {
        bridge.push_back(static_cast<int>(g));
        in_f[g] = true;
        grew = true;
      }
    }
    if (static_cast<int>(bridge.size()) > max_gates) {
      *ok = false;
      return bridge;
    }
    if (!grew) break;
  }
  std::sort(bridge.begin(), bridge.end());
  return bridge;
}

}  // namespace

std::vector<Match> match_sym(const RewriteRule &rule,
                             const ConcreteCircuit &circuit,
                             const MatchLimits &limits) {
  std::vector<Match> out;
  const CircuitPattern &pat = rule.lhs;
  int s_idx = pat.symbolic_index();
  if (s_idx < 0) throw UserError("match_sym expects a symbolic rule");
  const PatternGate &s_gate = pat.gates[s_idx];
  // one-sided patterns are never stored (pruned); a bridge needs anchors
  if (s_idx == 0 || s_idx == pat.size() - 1) return out;

  auto ia = interp_affine(rule.interp);
  if (!ia) return out;

  WireGraph wg = WireGraph::build(circuit);
  std::vector<int> order;
  std::vector<int> segment(pat.gates.size(), 0);
  for (int k = 0; k < pat.size(); ++k) {
    if (k == s_idx) continue;
    order.push_back(k);
    segment[k] = k < s_idx ? 0 : 1;
  }

  MatchEngine engine(pat, circuit, wg, order, segment);
  engine.run([&](const std::vector<int> &gmap, const std::vector<int> &qmap_in,
                 const BindState &bind) {
    std::vector<int> a_gates, b_gates;
    for (int k = 0; k < pat.size(); ++k) {
      if (k == s_idx) continue;
      (k < s_idx ? a_gates : b_gates).push_back(gmap[k]);
    }
    bool size_ok = true;
    std::vector<int> bridge = bridge_closure(circuit, wg, a_gates, b_gates,
                                             limits.bridge_max_gates, &size_ok);
    if (!size_ok) return;
    // bridge gates must be monomial with affine state transformers
    for (int g : bridge) {
      if (circuit.gates[g].is_fence()) return;
      if (!circuit.gates[g].def->monomial() ||
          !circuit.gates[g].def->affine_state())
        return;
    }
    // ordering: nothing may flow backwards across the three blocks
    {
      auto desc_b = wg.descendants(circuit, b_gates);
      for (int g : a_gates)
        if (desc_b[g]) return;
      for (int g : bridge)
        if (desc_b[g]) return;
      if (!bridge.empty()) {
        auto desc_k = wg.descendants(circuit, bridge);
        for (int g : a_gates)
          if (desc_k[g]) return;
      }
    }
    auto summary = AffineSummary::of_gates(circuit, bridge);
    if (!summary) return;

    // wires spanned by C_S: the bridge's wires plus S's own wires
    std::set<int> span(summary->wires.begin(), summary->wires.end());
    std::vector<int> qmap = qmap_in;
    std::vector<int> unbound;
    for (int s = 0; s < s_gate.arity(); ++s) {
      int p = s_gate.qubits[s];
      if (qmap[p] >= 0)
        span.insert(qmap[p]);
      else
        unbound.push_back(s);
    }
    if (static_cast<int>(span.size()) + static_cast<int>(unbound.size()) >
        limits.bridge_max_qubits)
      return;

    // resolve unbound S wires deterministically: first assignment (over
    // bridge wires, then fresh low wires) that satisfies the constraint
    std::vector<int> taken(circuit.num_qubits, false);
    for (int w : qmap)
      if (w >= 0) taken[w] = true;
    std::vector<int> candidates;
    for (int w : summary->wires)
      if (!taken[w]) candidates.push_back(w);
    for (int w = 0; w < circuit.num_qubits; ++w)
      if (!taken[w] &&
          std::find(summary->wires.begin(), summary->wires.end(), w) ==
              summary->wires.end())
        candidates.push_back(w);

    std::vector<bool> pattern_wire(circuit.num_qubits, false);
    for (int w : qmap)
      if (w >= 0) pattern_wire[w] = true;

    auto constraint_holds = [&](const std::vector<int> &smap) {
      // smap: S slot -> circuit wire
      // The bridge may span extra wires, but never wires the pattern's
      // other gates act on: rewriting moves those gates across the bridge,
      // which is only sound when they share nothing beyond S's wires.
      for (int w : summary->wires) {
        if (!pattern_wire[w]) continue;
        bool is_s_wire = false;
        for (int v : smap) is_s_wire = is_s_wire || (v == w);
        if (!is_s_wire) return false;
      }
      for (int i = 0; i < s_gate.arity(); ++i) {
        int w = smap[i];
        int local = summary->local_of(w);
        AffineForm actual;
        if (local >= 0)
          actual = summary->rows[local];
        else
          actual = AffineForm{0, false};  // untouched wire: identity (local -1)
        // translate the actual row into S-slot space; every linear term must
        // sit on an S wire
        AffineForm expect = ia->rows[i];
        if (local < 0) {
          // wire untouched by the bridge: its transformer is the identity,
          // so the interpretation must be the identity on this slot
          if (expect.constant || expect.linear != (1ULL << i)) return false;
          continue;
        }
        std::uint64_t want = 0;
        for (int j = 0; j < s_gate.arity(); ++j) {
          if (!(expect.linear & (1ULL << j))) continue;
          int lj = summary->local_of(smap[j]);
          // a touched row cannot read a wire the bridge never touches
          if (lj < 0) return false;
          want |= 1ULL << lj;
        }
        if (actual.constant != expect.constant) return false;
        if (actual.linear != want) return false;
      }
      return true;
    };

    std::vector<int> smap(s_gate.arity(), -1);
    for (int s = 0; s < s_gate.arity(); ++s)
      if (qmap[s_gate.qubits[s]] >= 0) smap[s] = qmap[s_gate.qubits[s]];

    bool resolved = false;
    if (unbound.empty()) {
      resolved = constraint_holds(smap);
    } else {
      // try assignments of unbound slots over the candidate wires
      std::vector<int> pick(unbound.size(), 0);
      std::function<bool(std::size_t)> search = [&](std::size_t d) -> bool {
        if (d == unbound.size()) return constraint_holds(smap);
        for (int w : candidates) {
          bool used = false;
          for (int v : smap)
            if (v == w) used = true;
          if (used) continue;
          smap[unbound[d]] = w;
          if (search(d + 1)) return true;
          smap[unbound[d]] = -1;
        }
        return false;
      };
      resolved = search(0);
    }
    if (!resolved) return;
    for (int s = 0; s < s_gate.arity(); ++s) qmap[s_gate.qubits[s]] = smap[s];

    Match m;
    m.gate_map = gmap;
    m.qubit_map = qmap;
    m.theta = bind.theta;
    m.expr_bindings = bind.exprs;
    m.bridge = bridge;
    m.footprint = a_gates;
    m.footprint.insert(m.footprint.end(), bridge.begin(), bridge.end());
    m.footprint.insert(m.footprint.end(), b_gates.begin(), b_gates.end());
    std::sort(m.footprint.begin(), m.footprint.end());
    if (!footprint_convex(circuit, wg, m.footprint)) return;
    m.circuit_hash = canonical_hash(circuit);
    out.push_back(std::move(m));
  });
  return out;
}

std::vector<Match> find_matches(const RewriteRule &rule,
                                const ConcreteCircuit &circuit,
                                const MatchLimits &limits) {
  return rule.symbolic ? match_sym(rule, circuit, limits)
                       : match_pattern(rule.lhs, circuit);
}

std::vector<Match> maximal_matching_set(const std::vector<Match> &matches) {
  std::vector<Match> out;
  std::set<int> used;
  for (const Match &m : matches) {
    bool overlap = false;
    for (int g : m.footprint)
      if (used.count(g)) overlap = true;
    if (overlap) continue;
    for (int g : m.footprint) used.insert(g);
    out.push_back(m);
  }
  return out;
}

namespace {

// Contracts every match footprint to one node over the circuit's wire
// graph; `acyclic` says whether the contraction admits a topological order
// (i.e. the matches can all be rewritten as contiguous blocks at once).
struct Contraction {
  int n_nodes = 0;
  std::vector<int> node_of;     // gate -> node
  std::vector<int> node_match;  // node -> match index or -1
  std::vector<int> first_pos;   // node -> lowest original gate position
  std::vector<int> topo;        // node order; complete iff acyclic
  bool acyclic = false;
};

Contraction build_contraction(const ConcreteCircuit &circuit,
                              const std::vector<Match> &matches) {
  Contraction ctr;
  int n_gates = static_cast<int>(circuit.gates.size());
  ctr.node_of.resize(n_gates);
  std::vector<int> owner(n_gates, -1);
  for (std::size_t mi = 0; mi < matches.size(); ++mi)
    for (int g : matches[mi].footprint) owner[g] = static_cast<int>(mi);
  std::vector<int> match_first(matches.size(), -1);
  for (int g = 0; g < n_gates; ++g) {
    if (owner[g] < 0) {
      ctr.node_of[g] = ctr.n_nodes++;
      ctr.first_pos.push_back(g);
      ctr.node_match.push_back(-1);
    } else if (match_first[owner[g]] < 0) {
      match_first[owner[g]] = ctr.n_nodes;
      ctr.node_of[g] = ctr.n_nodes++;
      ctr.first_pos.push_back(g);
      ctr.node_match.push_back(owner[g]);
    } else {
      ctr.node_of[g] = match_first[owner[g]];
    }
  }

  std::vector<std::set<int>> succ(ctr.n_nodes);
  std::vector<int> indeg(ctr.n_nodes, 0);
  std::vector<int> last(circuit.num_qubits, -1);
  for (int g = 0; g < n_gates; ++g) {
    for (int q : circuit.gates[g].qubits) {
      int prev = last[q];
      if (prev >= 0 && ctr.node_of[prev] != ctr.node_of[g])
        if (succ[ctr.node_of[prev]].insert(ctr.node_of[g]).second)
          indeg[ctr.node_of[g]]++;
      last[q] = g;
    }
  }

  // Kahn, preferring the lowest original position: the unique block order
  std::set<std::pair<int, int>> ready;
  for (int v = 0; v < ctr.n_nodes; ++v)
    if (indeg[v] == 0) ready.insert({ctr.first_pos[v], v});
  while (!ready.empty()) {
    auto [pos, v] = *ready.begin();
    ready.erase(ready.begin());
    ctr.topo.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.insert({ctr.first_pos[w], w});
  }
  ctr.acyclic = static_cast<int>(ctr.topo.size()) == ctr.n_nodes;
  return ctr;
}

}  // namespace

bool matches_jointly_applicable(const ConcreteCircuit &circuit,
                                const std::vector<Match> &matches) {
  return build_contraction(circuit, matches).acyclic;
}

std::vector<Match> maximal_applicable_set(const ConcreteCircuit &circuit,
                                          const std::vector<Match> &matches) {
  std::vector<Match> out;
  std::set<int> used;
  for (const Match &m : matches) {
    bool overlap = false;
    for (int g : m.footprint)
      if (used.count(g)) overlap = true;
    if (overlap) continue;
    out.push_back(m);
    if (!matches_jointly_applicable(circuit, out)) {
      out.pop_back();  // order-entangled with an earlier pick
      continue;
    }
    for (int g : m.footprint) used.insert(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

GateInstance instantiate_gate(const PatternGate &pg, const Match &m) {
  GateInstance g;
  g.def = pg.def;
  for (int p : pg.qubits) {
    int w = m.qubit_map[p];
    if (w < 0) throw InternalError("rewrite references an unbound wire");
    g.qubits.push_back(w);
  }
  for (const ParamExpr &pe : pg.params) {
    double value;
    if (pe.is_constant()) {
      value = pe.pi_mult.get_d() * M_PI;
    } else if (pe.is_single_var()) {
      int v = pe.coeffs.begin()->first;
      value = (pe.coeffs.begin()->second > 0 ? 1.0 : -1.0) * m.theta[v];
    } else {
      auto it = m.expr_bindings.find(pe.to_string());
      if (it != m.expr_bindings.end()) {
        value = it->second;
      } else {
        value = pe.pi_mult.get_d() * M_PI;
        for (const auto &[v, coeff] : pe.coeffs)
          value += coeff.get_d() * m.theta[v];
      }
    }
    g.angles.push_back(normalize_angle(value));
  }
  return g;
}

std::vector<GateInstance> replacement_block(const ConcreteCircuit &c,
                                            const RewriteRule &rule,
                                            const Match &m) {
  std::vector<GateInstance> block;
  if (!rule.symbolic) {
    for (const PatternGate &pg : rule.rhs.gates)
      block.push_back(instantiate_gate(pg, m));
    return block;
  }
  int s_idx = rule.rhs.symbolic_index();
  if (s_idx < 0)
    throw InternalError("symbolic rule without S in the replacement");
  for (int k = 0; k < s_idx; ++k)
    block.push_back(instantiate_gate(rule.rhs.gates[k], m));
  for (int g : m.bridge) block.push_back(c.gates[g]);  // bridge kept in place
  for (int k = s_idx + 1; k < rule.rhs.size(); ++k)
    block.push_back(instantiate_gate(rule.rhs.gates[k], m));
  return block;
}

}  // namespace

ConcreteCircuit apply_rewrites(const ConcreteCircuit &circuit,
                               const RewriteRule &rule,
                               const std::vector<Match> &matches) {
  if (matches.empty()) return circuit;
  Digest now = canonical_hash(circuit);
  std::vector<bool> used(circuit.gates.size(), false);
  for (const Match &m : matches) {
    if (m.circuit_hash != now)
      throw UserError("stale match: the circuit changed since matching");
    for (int g : m.footprint) {
      if (used[g]) throw UserError("overlapping matches in one rewrite");
      used[g] = true;
    }
  }

  // contract every match into one node, then emit the unique topological
  // order that prefers the lowest original position
  Contraction ctr = build_contraction(circuit, matches);
  if (!ctr.acyclic)
    throw UserError("matches are order-entangled and cannot be rewritten together");

  ConcreteCircuit out;
  out.num_qubits = circuit.num_qubits;
  out.num_clbits = circuit.num_clbits;
  out.qreg_name = circuit.qreg_name;
  out.creg_name = circuit.creg_name;
  for (int v : ctr.topo) {
    if (ctr.node_match[v] >= 0) {
      for (GateInstance &g :
           replacement_block(circuit, rule, matches[ctr.node_match[v]]))
        out.gates.push_back(std::move(g));
    } else {
      out.gates.push_back(circuit.gates[ctr.first_pos[v]]);
    }
  }
  return out;
}

ConcreteCircuit apply_rewrite(const ConcreteCircuit &circuit,
                              const RewriteRule &rule, const Match &match) {
  return apply_rewrites(circuit, rule, {match});
}

}  // namespace queso
