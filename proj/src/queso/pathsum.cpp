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

#include "queso/pathsum.hpp"

#include <algorithm>

namespace queso {

PathSum identity_path_sum(int num_qubits) {
  PathSum p;
  p.num_qubits = num_qubits;
  Branch b;
  b.amp.push_back(AmpTerm{});
  for (int i = 0; i < num_qubits; ++i) b.state.push_back(Anf::var(input_bit(i)));
  p.branches.push_back(std::move(b));
  return p;
}

namespace {

void check_wires(const std::vector<int> &qubits, int num_qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= num_qubits)
      throw UserError("wire index out of range: " + std::to_string(qubits[i]));
    for (std::size_t j = i + 1; j < qubits.size(); ++j)
      if (qubits[i] == qubits[j])
        throw UserError("repeated wire index " + std::to_string(qubits[i]));
  }
}

// Rewrites gate-local parameter symbols through the instance's parameter
// expressions: a term c * t_local * bits becomes, for t_local = sum_j d_j
// theta_j + q pi, the terms (c d_j, theta_j, bits) and (c q, pi, bits).
AngleExpr instantiate_params(const AngleExpr &angle,
                             const std::vector<ParamExpr> &params) {
  AngleExpr out;
  for (const AngleTerm &t : angle) {
    if (t.sym == kAnglePi) {
      out.push_back(t);
      continue;
    }
    if (t.sym >= static_cast<int>(params.size()))
      throw InternalError("gate parameter index out of range");
    const ParamExpr &pe = params[t.sym];
    for (const auto &[theta, coeff] : pe.coeffs) {
      AngleTerm nt;
      nt.coeff = t.coeff * coeff;
      nt.sym = theta;
      nt.bit_factors = t.bit_factors;
      out.push_back(std::move(nt));
    }
    if (pe.pi_mult != 0) {
      AngleTerm nt;
      nt.coeff = t.coeff * pe.pi_mult;
      nt.sym = kAnglePi;
      nt.bit_factors = t.bit_factors;
      out.push_back(std::move(nt));
    }
  }
  return out;
}

}  // namespace

PathSum extend_gate(const GateDef &gate, const std::vector<int> &qubits,
                    const std::vector<ParamExpr> &params, int num_qubits) {
  check_wires(qubits, num_qubits);
  if (static_cast<int>(qubits.size()) != gate.arity)
    throw UserError("gate " + gate.name + " wants " +
                    std::to_string(gate.arity) + " wires");
  if (static_cast<int>(params.size()) != gate.num_params)
    throw UserError("gate " + gate.name + " wants " +
                    std::to_string(gate.num_params) + " parameters");

  AmpExpr amp = [&] {
    AmpExpr e = gate.amplitude;
    for (AmpTerm &t : e) t.angle = instantiate_params(t.angle, params);
    return e;
  }();

  PathSum p;
  p.num_qubits = num_qubits;
  int combos = 1 << gate.branch_bits;
  for (int y = 0; y < combos; ++y) {
    std::map<BitVar, Anf> subst;
    for (int k = 0; k < gate.arity; ++k)
      subst[input_bit(k)] = Anf::var(input_bit(qubits[k]));
    for (int j = 0; j < gate.branch_bits; ++j)
      subst[branch_bit(j)] = ((y >> j) & 1) ? Anf::one() : Anf::zero();
    Branch b;
    b.amp = amp_substitute(amp, subst);
    for (int w = 0; w < num_qubits; ++w) b.state.push_back(Anf::var(input_bit(w)));
    for (int k = 0; k < gate.arity; ++k)
      b.state[qubits[k]] = gate.state[k].substitute(subst);
    p.branches.push_back(std::move(b));
  }
  return p;
}

PathSum extend_symbolic(int gate_occurrence, int arity,
                        const std::vector<int> &qubits, int num_qubits) {
  check_wires(qubits, num_qubits);
  PathSum p;
  p.num_qubits = num_qubits;
  UappEntry app;
  app.gate_occurrence = gate_occurrence;
  app.arity = arity;
  for (int k = 0; k < arity; ++k) app.args.push_back(Anf::var(input_bit(qubits[k])));
  p.uapps.push_back(app);

  Branch b;
  AmpTerm t;
  PhiuApp phi;
  phi.gate_occurrence = gate_occurrence;
  phi.args = app.args;
  t.phiu.push_back(std::move(phi));
  b.amp.push_back(std::move(t));
  for (int w = 0; w < num_qubits; ++w) b.state.push_back(Anf::var(input_bit(w)));
  for (int k = 0; k < arity; ++k)
    b.state[qubits[k]] = Anf::var(uapp_bit(0, k));
  p.branches.push_back(std::move(b));
  return p;
}

PathSum compose(const PathSum &p1, const PathSum &p2) {
  if (p1.num_qubits != p2.num_qubits)
    throw UserError("composition of path sums over different wire counts");
  PathSum out;
  out.num_qubits = p1.num_qubits;
  out.uapps = p1.uapps;

  for (const Branch &b1 : p1.branches) {
    // Substitution for this branch: p2's inputs become b1's outputs, and
    // p2's f^u applications are renamed apart so their argument lists can
    // be specialized per branch.
    std::map<BitVar, Anf> subst;
    for (int w = 0; w < p1.num_qubits; ++w) subst[input_bit(w)] = b1.state[w];
    for (std::size_t k = 0; k < p2.uapps.size(); ++k) {
      UappEntry app = p2.uapps[k];
      for (Anf &a : app.args) a = a.substitute(subst);
      int new_id = static_cast<int>(out.uapps.size());
      for (int j = 0; j < app.arity; ++j)
        subst[uapp_bit(static_cast<int>(k), j)] = Anf::var(uapp_bit(new_id, j));
      out.uapps.push_back(std::move(app));
    }
    for (const Branch &b2 : p2.branches) {
      Branch nb;
      nb.amp = amp_mul(b1.amp, amp_substitute(b2.amp, subst));
      nb.state.reserve(p1.num_qubits);
      for (const Anf &row : b2.state) nb.state.push_back(row.substitute(subst));
      out.branches.push_back(std::move(nb));
    }
  }
  return out;
}

PathSum apply_interpretation(const PathSum &p,
                             const std::map<int, Interpretation> &interps) {
  std::map<BitVar, Anf> cum;
  for (std::size_t k = 0; k < p.uapps.size(); ++k) {
    const UappEntry &app = p.uapps[k];
    auto it = interps.find(app.gate_occurrence);
    if (it == interps.end())
      throw UserError("missing interpretation for symbolic gate " +
                      std::to_string(app.gate_occurrence));
    const Interpretation &interp = it->second;
    if (interp.arity != app.arity)
      throw UserError("interpretation arity mismatch for symbolic gate " +
                      std::to_string(app.gate_occurrence));
    std::map<BitVar, Anf> local;
    for (int j = 0; j < app.arity; ++j)
      local[input_bit(j)] = app.args[j].substitute(cum);
    std::vector<Anf> rows = interp.to_anf();
    for (int j = 0; j < app.arity; ++j)
      cum[uapp_bit(static_cast<int>(k), j)] = rows[j].substitute(local);
  }
  PathSum out;
  out.num_qubits = p.num_qubits;
  out.branches.reserve(p.branches.size());
  for (const Branch &b : p.branches) {
    Branch nb;
    nb.amp = amp_substitute(b.amp, cum);
    for (const Anf &row : b.state) nb.state.push_back(row.substitute(cum));
    out.branches.push_back(std::move(nb));
  }
  return out;
}

PathSum build_path_sum(const CircuitPattern &pattern,
                       const Interpretation *interp) {
  int n = std::max(pattern.num_qubits, 1);
  PathSum acc = identity_path_sum(n);
  int occurrence = 0;
  std::map<int, Interpretation> interp_map;
  for (const PatternGate &g : pattern.gates) {
    PathSum step;
    if (g.is_symbolic()) {
      step = extend_symbolic(occurrence, g.sym_arity, g.qubits, n);
      if (interp) interp_map.emplace(occurrence, *interp);
      ++occurrence;
    } else {
      step = extend_gate(*g.def, g.qubits, g.params, n);
    }
    acc = compose(acc, step);
  }
  if (interp && occurrence > 0) acc = apply_interpretation(acc, interp_map);
  return acc;
}

}  // namespace queso
