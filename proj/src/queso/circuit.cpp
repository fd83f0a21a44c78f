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

#include "queso/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>

namespace queso {

// ---------------------------------------------------------------------------
// ParamExpr

ParamExpr ParamExpr::var(int theta) {
  ParamExpr e;
  e.coeffs[theta] = 1;
  return e;
}

ParamExpr ParamExpr::constant_pi(const Rational &mult) {
  ParamExpr e;
  e.pi_mult = mult;
  return e;
}

ParamExpr ParamExpr::parse(const std::string &text) {
  ParamExpr e;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    bool neg = false;
    if (!first || text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '+') {
        ++pos;
      } else if (text[pos] == '-') {
        neg = true;
        ++pos;
      } else if (!first) {
        throw UserError("malformed parameter expression: " + text);
      }
    }
    first = false;
    std::size_t end = pos;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string term = text.substr(pos, end - pos);
    pos = end;
    // strip spaces
    term.erase(std::remove(term.begin(), term.end(), ' '), term.end());
    if (term.empty()) throw UserError("malformed parameter expression: " + text);
    Rational coeff = 1;
    // optional leading rational followed by '*' or directly "pi"/"tK"
    std::size_t i = 0;
    while (i < term.size() &&
           (std::isdigit(static_cast<unsigned char>(term[i])) || term[i] == '/'))
      ++i;
    if (i > 0 && i < term.size()) {
      coeff = parse_rational(term.substr(0, i));
      if (term[i] == '*') ++i;
      term = term.substr(i);
    }
    if (neg) coeff = -coeff;
    if (term == "pi") {
      e.pi_mult += coeff;
    } else if (term.rfind("pi/", 0) == 0) {
      e.pi_mult += coeff / parse_rational(term.substr(3));
    } else if (term.size() >= 2 && term[0] == 't') {
      int idx = std::stoi(term.substr(1));
      if (idx < 1) throw UserError("parameters are 1-based: " + text);
      e.coeffs[idx - 1] += coeff;
      if (e.coeffs[idx - 1] == 0) e.coeffs.erase(idx - 1);
    } else {
      throw UserError("malformed parameter term '" + term + "' in " + text);
    }
  }
  return e;
}

bool ParamExpr::is_single_var() const {
  return coeffs.size() == 1 && pi_mult == 0 &&
         (coeffs.begin()->second == 1 || coeffs.begin()->second == -1);
}

std::set<int> ParamExpr::vars() const {
  std::set<int> out;
  for (const auto &[k, v] : coeffs) out.insert(k);
  return out;
}

double ParamExpr::eval(const std::vector<double> &theta_values) const {
  double acc = pi_mult.get_d() * M_PI;
  for (const auto &[k, v] : coeffs) {
    if (k >= static_cast<int>(theta_values.size()))
      throw InternalError("parameter value missing for t" + std::to_string(k + 1));
    acc += v.get_d() * theta_values[k];
  }
  return acc;
}

bool ParamExpr::operator<(const ParamExpr &o) const {
  if (coeffs != o.coeffs) {
    return std::lexicographical_compare(
        coeffs.begin(), coeffs.end(), o.coeffs.begin(), o.coeffs.end(),
        [](const auto &a, const auto &b) {
          if (a.first != b.first) return a.first < b.first;
          return a.second < b.second;
        });
  }
  return pi_mult < o.pi_mult;
}

std::string ParamExpr::to_string() const {
  if (coeffs.empty() && pi_mult == 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[k, c] : coeffs) {
    Rational abs = c < 0 ? Rational(-c) : c;
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    if (abs != 1) os << rational_to_string(abs) << "*";
    os << "t" << (k + 1);
    first = false;
  }
  if (pi_mult != 0) {
    Rational abs = pi_mult < 0 ? Rational(-pi_mult) : pi_mult;
    if (pi_mult < 0)
      os << "-";
    else if (!first)
      os << "+";
    if (abs.get_num() != 1) os << abs.get_num().get_str() << "*";
    os << "pi";
    if (abs.get_den() != 1) os << "/" << abs.get_den().get_str();
    first = false;
  }
  return os.str();
}

void ParamExpr::add_to_digest(DigestBuilder &b) const {
  b.add_u64(coeffs.size());
  for (const auto &[k, c] : coeffs) {
    b.add_i64(k);
    b.add_string(rational_to_string(c));
  }
  b.add_string(rational_to_string(pi_mult));
}

// ---------------------------------------------------------------------------
// CircuitPattern

int CircuitPattern::symbolic_index() const {
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].is_symbolic()) return static_cast<int>(i);
  return -1;
}

std::set<int> CircuitPattern::used_qubits() const {
  std::set<int> out;
  for (const auto &g : gates) out.insert(g.qubits.begin(), g.qubits.end());
  return out;
}

std::set<int> CircuitPattern::used_params() const {
  std::set<int> out;
  for (const auto &g : gates)
    for (const auto &p : g.params) {
      auto vs = p.vars();
      out.insert(vs.begin(), vs.end());
    }
  return out;
}

bool CircuitPattern::operator==(const CircuitPattern &o) const {
  if (num_qubits != o.num_qubits || gates.size() != o.gates.size())
    return false;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const PatternGate &a = gates[i], &b = o.gates[i];
    if (a.def != b.def || a.sym_arity != b.sym_arity || a.qubits != b.qubits ||
        !(a.params == b.params))
      return false;
  }
  return true;
}

std::string CircuitPattern::to_text() const {
  if (gates.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (i) os << " ; ";
    const PatternGate &g = gates[i];
    os << g.display_name();
    if (!g.params.empty()) {
      os << "(";
      for (std::size_t k = 0; k < g.params.size(); ++k) {
        if (k) os << ",";
        os << g.params[k].to_string();
      }
      os << ")";
    }
    os << " ";
    for (std::size_t k = 0; k < g.qubits.size(); ++k) {
      if (k) os << ",";
      os << "q" << g.qubits[k];
    }
  }
  return os.str();
}

Digest CircuitPattern::digest() const {
  DigestBuilder b;
  b.add_i64(num_qubits);
  b.add_u64(gates.size());
  for (const PatternGate &g : gates) {
    b.add_string(g.is_symbolic() ? "S" + std::to_string(g.sym_arity)
                                 : g.def->name);
    b.add_u64(g.qubits.size());
    for (int q : g.qubits) b.add_i64(q);
    b.add_u64(g.params.size());
    for (const ParamExpr &p : g.params) p.add_to_digest(b);
  }
  return b.finish();
}

namespace {

// Canonical topological order over arbitrary gate->wires lists: repeatedly
// emit the ready gate touching the lowest wire. Ready gates touch disjoint
// wire sets, so the minimum wire is unique and the order well defined.
std::vector<int> canonical_order_impl(
    int num_gates, const std::vector<std::vector<int>> &wires) {
  std::vector<std::size_t> cursor;  // per wire: position in its gate list
  std::map<int, std::vector<int>> per_wire;
  for (int i = 0; i < num_gates; ++i)
    for (int q : wires[i]) per_wire[q].push_back(i);
  std::map<int, std::size_t> wire_pos;
  for (auto &[q, list] : per_wire) wire_pos[q] = 0;

  auto gate_ready = [&](int g) {
    for (int q : wires[g]) {
      const auto &list = per_wire[q];
      std::size_t pos = wire_pos[q];
      if (pos >= list.size() || list[pos] != g) return false;
    }
    return true;
  };

  std::vector<int> order;
  std::vector<bool> emitted(num_gates, false);
  order.reserve(num_gates);
  while (static_cast<int>(order.size()) < num_gates) {
    int best = -1;
    int best_wire = INT32_MAX;
    for (int g = 0; g < num_gates; ++g) {
      if (emitted[g]) continue;
      if (!gate_ready(g)) continue;
      int mw = *std::min_element(wires[g].begin(), wires[g].end());
      if (mw < best_wire) {
        best_wire = mw;
        best = g;
      }
    }
    if (best < 0) throw InternalError("cycle in wire order");
    emitted[best] = true;
    order.push_back(best);
    for (int q : wires[best]) wire_pos[q]++;
  }
  return order;
}

}  // namespace

CircuitPattern canonicalize_pattern(const CircuitPattern &p) {
  CircuitPattern cur = p;
  for (int round = 0; round < 8; ++round) {
    // 1. canonical gate order
    std::vector<std::vector<int>> wires;
    for (const auto &g : cur.gates) wires.push_back(g.qubits);
    std::vector<int> order =
        canonical_order_impl(static_cast<int>(cur.gates.size()), wires);
    CircuitPattern next;
    next.gates.reserve(cur.gates.size());
    for (int idx : order) next.gates.push_back(cur.gates[idx]);
    // 2. wire relabel by first use
    std::map<int, int> qubit_map;
    for (auto &g : next.gates)
      for (int &q : g.qubits) {
        auto it = qubit_map.find(q);
        if (it == qubit_map.end())
          it = qubit_map.emplace(q, static_cast<int>(qubit_map.size())).first;
        q = it->second;
      }
    next.num_qubits = static_cast<int>(qubit_map.size());
    // 3. parameter relabel by first use (ascending old index inside a gate)
    std::map<int, int> theta_map;
    for (auto &g : next.gates)
      for (auto &pe : g.params) {
        std::map<int, Rational> renamed;
        for (const auto &[old_idx, coeff] : pe.coeffs) {
          auto it = theta_map.find(old_idx);
          if (it == theta_map.end())
            it = theta_map.emplace(old_idx, static_cast<int>(theta_map.size()))
                     .first;
          renamed[it->second] = coeff;
        }
        pe.coeffs = std::move(renamed);
      }
    next.num_params = static_cast<int>(theta_map.size());
    if (next == cur && next.num_qubits == cur.num_qubits &&
        next.num_params == cur.num_params)
      return next;
    cur = std::move(next);
  }
  return cur;
}

bool is_canonical_pattern(const CircuitPattern &p) {
  CircuitPattern c = canonicalize_pattern(p);
  return c == p && c.num_qubits == p.num_qubits && c.num_params == p.num_params;
}

CircuitPattern parse_pattern(const std::string &text, const GateSet &gs) {
  CircuitPattern p;
  std::string trimmed = text;
  // split on ';'
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= trimmed.size()) {
    std::size_t semi = trimmed.find(';', start);
    if (semi == std::string::npos) semi = trimmed.size();
    parts.push_back(trimmed.substr(start, semi - start));
    start = semi + 1;
  }
  int max_qubit = -1;
  int max_theta = -1;
  for (std::string part : parts) {
    // trim
    auto l = part.find_first_not_of(" \t");
    auto r = part.find_last_not_of(" \t");
    if (l == std::string::npos) continue;
    part = part.substr(l, r - l + 1);
    if (part == "-" || part.empty()) continue;
    PatternGate g;
    std::size_t sp = part.find(' ');
    if (sp == std::string::npos) throw UserError("malformed gate: " + part);
    std::string head = part.substr(0, sp);
    std::string args = part.substr(sp + 1);
    std::string name = head;
    auto paren = head.find('(');
    if (paren != std::string::npos) {
      if (head.back() != ')') throw UserError("malformed gate: " + part);
      name = head.substr(0, paren);
      std::string plist = head.substr(paren + 1, head.size() - paren - 2);
      std::size_t s = 0;
      while (s <= plist.size()) {
        std::size_t comma = plist.find(',', s);
        if (comma == std::string::npos) comma = plist.size();
        g.params.push_back(ParamExpr::parse(plist.substr(s, comma - s)));
        s = comma + 1;
      }
    }
    std::size_t s = 0;
    while (s <= args.size()) {
      std::size_t comma = args.find(',', s);
      if (comma == std::string::npos) comma = args.size();
      std::string q = args.substr(s, comma - s);
      auto ql = q.find_first_not_of(" \t");
      if (ql == std::string::npos || q[ql] != 'q')
        throw UserError("malformed qubit in: " + part);
      g.qubits.push_back(std::stoi(q.substr(ql + 1)));
      s = comma + 1;
    }
    if (name == "S") {
      g.def = nullptr;
      g.sym_arity = static_cast<int>(g.qubits.size());
      if (!g.params.empty())
        throw UserError("symbolic gates take no parameters");
    } else {
      const GateDef *def = gs.find(name);
      if (!def) throw UserError("unknown gate '" + name + "' in pattern");
      g.def = def;
      if (static_cast<int>(g.params.size()) != def->num_params)
        throw UserError("gate " + name + " expects " +
                        std::to_string(def->num_params) + " parameter(s)");
      if (static_cast<int>(g.qubits.size()) != def->arity)
        throw UserError("gate " + name + " expects " +
                        std::to_string(def->arity) + " qubit(s)");
    }
    for (int q : g.qubits) max_qubit = std::max(max_qubit, q);
    for (const auto &pe : g.params)
      for (int v : pe.vars()) max_theta = std::max(max_theta, v);
    p.gates.push_back(std::move(g));
  }
  p.num_qubits = max_qubit + 1;
  p.num_params = max_theta + 1;
  return p;
}

// ---------------------------------------------------------------------------
// ConcreteCircuit

int ConcreteCircuit::gate_count() const {
  int n = 0;
  for (const auto &g : gates)
    if (!g.is_fence()) ++n;
  return n;
}

WireGraph WireGraph::build(const ConcreteCircuit &c) {
  WireGraph wg;
  wg.pred.resize(c.gates.size());
  wg.next.resize(c.gates.size());
  std::vector<int> last(c.num_qubits, -1);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto &g = c.gates[i];
    wg.pred[i].assign(g.qubits.size(), -1);
    wg.next[i].assign(g.qubits.size(), -1);
    for (std::size_t k = 0; k < g.qubits.size(); ++k) {
      int q = g.qubits[k];
      int p = last[q];
      wg.pred[i][k] = p;
      if (p >= 0) {
        const auto &pg = c.gates[p];
        for (std::size_t m = 0; m < pg.qubits.size(); ++m)
          if (pg.qubits[m] == q) wg.next[p][m] = static_cast<int>(i);
      }
      last[q] = static_cast<int>(i);
    }
  }
  return wg;
}

std::vector<bool> WireGraph::descendants(const ConcreteCircuit &c,
                                         const std::vector<int> &gates) const {
  std::vector<bool> seen(c.gates.size(), false);
  std::deque<int> work(gates.begin(), gates.end());
  std::vector<bool> out(c.gates.size(), false);
  while (!work.empty()) {
    int g = work.front();
    work.pop_front();
    for (int n : next[g]) {
      if (n >= 0 && !seen[n]) {
        seen[n] = true;
        out[n] = true;
        work.push_back(n);
      }
    }
  }
  for (int g : gates) out[g] = false;
  return out;
}

std::vector<bool> WireGraph::ancestors(const ConcreteCircuit &c,
                                       const std::vector<int> &gates) const {
  std::vector<bool> seen(c.gates.size(), false);
  std::deque<int> work(gates.begin(), gates.end());
  std::vector<bool> out(c.gates.size(), false);
  while (!work.empty()) {
    int g = work.front();
    work.pop_front();
    for (int p : pred[g]) {
      if (p >= 0 && !seen[p]) {
        seen[p] = true;
        out[p] = true;
        work.push_back(p);
      }
    }
  }
  for (int g : gates) out[g] = false;
  return out;
}

double normalize_angle(double angle) {
  const double two_pi = 2.0 * M_PI;
  double a = std::fmod(angle, two_pi);
  if (a < 0) a += two_pi;
  return a;
}

std::int64_t quantize_angle(double angle) {
  const double two_pi = 2.0 * M_PI;
  std::int64_t q = std::llround(normalize_angle(angle) * 1e10);
  const std::int64_t full = std::llround(two_pi * 1e10);
  if (q >= full) q -= full;
  return q;
}

std::vector<int> canonical_gate_order(const ConcreteCircuit &c) {
  std::vector<std::vector<int>> wires;
  wires.reserve(c.gates.size());
  for (const auto &g : c.gates) wires.push_back(g.qubits);
  return canonical_order_impl(static_cast<int>(c.gates.size()), wires);
}

ConcreteCircuit canonicalize_circuit(const ConcreteCircuit &c) {
  ConcreteCircuit out = c;
  out.gates.clear();
  for (int idx : canonical_gate_order(c)) out.gates.push_back(c.gates[idx]);
  return out;
}

Digest canonical_hash(const ConcreteCircuit &c) {
  DigestBuilder b;
  b.add_i64(c.num_qubits);
  for (int idx : canonical_gate_order(c)) {
    const GateInstance &g = c.gates[idx];
    if (g.is_fence()) {
      b.add_string(g.fence == FenceKind::Barrier ? "|barrier" : "|measure");
      b.add_i64(g.measure_target);
    } else {
      b.add_string(g.def->name);
    }
    b.add_u64(g.qubits.size());
    for (int q : g.qubits) b.add_i64(q);
    b.add_u64(g.angles.size());
    for (double a : g.angles) b.add_i64(quantize_angle(a));
  }
  return b.finish();
}

bool circuits_identical(const ConcreteCircuit &a, const ConcreteCircuit &b) {
  if (a.num_qubits != b.num_qubits || a.gates.size() != b.gates.size())
    return false;
  for (std::size_t i = 0; i < a.gates.size(); ++i) {
    const auto &x = a.gates[i], &y = b.gates[i];
    if (x.def != y.def || x.qubits != y.qubits || x.angles != y.angles ||
        x.fence != y.fence || x.measure_target != y.measure_target)
      return false;
  }
  return true;
}

CircuitPattern lift_to_pattern(const ConcreteCircuit &c,
                               std::map<std::int64_t, int> &angle_vars) {
  CircuitPattern p;
  p.num_qubits = c.num_qubits;
  int max_theta = -1;
  for (const auto &[k, v] : angle_vars) max_theta = std::max(max_theta, v);
  for (const GateInstance &g : c.gates) {
    if (g.is_fence())
      throw UserError("cannot verify circuits containing barriers/measurements");
    PatternGate pg;
    pg.def = g.def;
    pg.qubits = g.qubits;
    for (std::size_t slot = 0; slot < g.angles.size(); ++slot) {
      double a = g.angles[slot];
      // pi/4 multiples stay exact field constants when the gate's
      // coefficients keep them inside the field
      double quarter = a / (M_PI / 4.0);
      double nearest = std::round(quarter);
      if (std::abs(quarter - nearest) < 1e-12 && std::abs(nearest) < 1e15 &&
          g.def->constant_angle_ok(static_cast<int>(slot),
                                   make_rational(static_cast<long>(nearest), 4))) {
        ParamExpr pe;
        pe.pi_mult = make_rational(static_cast<long>(nearest), 4);
        pg.params.push_back(pe);
        continue;
      }
      std::int64_t key = std::llround(normalize_angle(a) * 1e12);
      auto it = angle_vars.find(key);
      if (it == angle_vars.end())
        it = angle_vars.emplace(key, ++max_theta).first;
      pg.params.push_back(ParamExpr::var(it->second));
    }
    p.gates.push_back(std::move(pg));
  }
  p.num_params = max_theta + 1;
  return p;
}

}  // namespace queso
