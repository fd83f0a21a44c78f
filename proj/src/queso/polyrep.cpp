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

#include "queso/polyrep.hpp"

#include <algorithm>

namespace queso {

long AmpMonomial::degree() const {
  long d = (basis_in >= 0) ? 1 : 0;
  for (const auto &[j, e] : u_exp) d += std::abs(e);
  for (const auto &[k, e] : phiu_exp) d += e;
  return d;
}

FieldElement AmpMonomial::evaluate(const Valuation &val) const {
  FieldElement acc = coeff;
  for (const auto &[j, e] : u_exp)
    acc *= val.power(VarId{VarKind::UnitAngle, j, 0}, e);
  for (const auto &[kp, e] : phiu_exp)
    acc *= val.power(VarId{VarKind::Phiu, kp.first, kp.second}, e);
  if (basis_in >= 0)
    acc *= val.at(VarId{VarKind::Basis, basis_in, basis_out});
  return acc;
}

void AmpMonomial::collect_vars(std::vector<VarId> &out) const {
  for (const auto &[j, e] : u_exp) out.push_back({VarKind::UnitAngle, j, 0});
  for (const auto &[kp, e] : phiu_exp)
    out.push_back({VarKind::Phiu, kp.first, kp.second});
  if (basis_in >= 0) out.push_back({VarKind::Basis, basis_in, basis_out});
}

std::vector<VarId> FingerprintPoly::variables() const {
  std::vector<VarId> out;
  for (const AmpMonomial &m : monomials) m.collect_vars(out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FieldElement FingerprintPoly::evaluate(const Valuation &val) const {
  // Sum per basis pair first: inner terms share small denominators, and
  // only the per-pair totals touch the large mixed-denominator accumulator.
  FieldElement acc;
  FieldElement inner;
  int cur_a = -2, cur_b = -2;
  auto flush = [&]() {
    if (cur_a == -2) return;
    if (cur_a >= 0)
      inner *= val.at(VarId{VarKind::Basis, cur_a, cur_b});
    acc += inner;
    inner = FieldElement();
  };
  for (const AmpMonomial &m : monomials) {
    if (m.basis_in != cur_a || m.basis_out != cur_b) {
      flush();
      cur_a = m.basis_in;
      cur_b = m.basis_out;
    }
    FieldElement term = m.coeff;
    for (const auto &[j, e] : m.u_exp)
      term *= val.power(VarId{VarKind::UnitAngle, j, 0}, e);
    for (const auto &[kp, e] : m.phiu_exp)
      term *= val.power(VarId{VarKind::Phiu, kp.first, kp.second}, e);
    inner += term;
  }
  flush();
  return acc;
}

namespace {

long rational_to_long(const Rational &q, const char *what) {
  if (q.get_den() != 1)
    throw InternalError(std::string("non-integer ") + what + ": " +
                        rational_to_string(q));
  if (!q.get_num().fits_slong_p())
    throw InternalError(std::string(what) + " out of range");
  return q.get_num().get_si();
}

}  // namespace

std::map<int, std::vector<AmpMonomial>> amplitudes(const PathSum &p,
                                                   int basis_in) {
  if (!p.fully_interpreted())
    throw UserError("uninterpreted state transformer present");
  auto env = [&](BitVar v) -> bool {
    if (!is_input_bit(v))
      throw InternalError("unexpected non-input bit in interpreted path sum");
    return ((basis_in >> v) & 1) != 0;
  };

  std::map<int, std::vector<AmpMonomial>> out;
  for (const Branch &branch : p.branches) {
    int basis_out = 0;
    for (std::size_t w = 0; w < branch.state.size(); ++w)
      if (branch.state[w].evaluate(env)) basis_out |= 1 << w;

    for (const AmpTerm &term : branch.amp) {
      AmpMonomial mono;
      mono.coeff = term.coeff * FieldElement::sqrt2_power(term.sqrt2_exp);
      Rational pi_coeff = 0;
      std::map<int, Rational> theta_coeff;
      for (const AngleTerm &at : term.angle) {
        bool live = true;
        for (const Anf &f : at.bit_factors)
          if (!f.evaluate(env)) {
            live = false;
            break;
          }
        if (!live) continue;
        if (at.sym == kAnglePi)
          pi_coeff += at.coeff;
        else
          theta_coeff[at.sym] += at.coeff;
      }
      // e^{i pi q} with q a quarter-integer is an exact eighth root of unity
      mono.coeff *= FieldElement::quarter_pi_phase(
          rational_to_long(pi_coeff * 4, "pi coefficient (x4)"));
      for (const auto &[theta, c] : theta_coeff) {
        long e = rational_to_long(c * 2, "half-angle exponent");
        if (e != 0) mono.u_exp[theta] += e;
      }
      for (auto it = mono.u_exp.begin(); it != mono.u_exp.end();)
        it = (it->second == 0) ? mono.u_exp.erase(it) : std::next(it);
      for (const PhiuApp &app : term.phiu) {
        int pattern = 0;
        for (std::size_t k = 0; k < app.args.size(); ++k)
          if (app.args[k].evaluate(env)) pattern |= 1 << k;
        mono.phiu_exp[{app.gate_occurrence, pattern}] += 1;
      }
      out[basis_out].push_back(std::move(mono));
    }
  }
  return out;
}

FingerprintPoly fingerprint_poly(const PathSum &p) {
  FingerprintPoly poly;
  poly.num_qubits = p.num_qubits;
  for (int a = 0; a < (1 << p.num_qubits); ++a) {
    auto per_basis = amplitudes(p, a);
    for (auto &[b, monos] : per_basis) {
      for (AmpMonomial &m : monos) {
        m.basis_in = a;
        m.basis_out = b;
        poly.degree_bound = std::max(poly.degree_bound, m.degree());
        poly.monomials.push_back(std::move(m));
      }
    }
  }
  return poly;
}

FingerprintPoly fingerprint_poly(const CircuitPattern &pattern,
                                 const Interpretation *interp,
                                 int max_qubits) {
  if (pattern.num_qubits > max_qubits)
    throw UserError("circuit too wide to fingerprint: " +
                    std::to_string(pattern.num_qubits) + " > " +
                    std::to_string(max_qubits) + " qubits");
  return fingerprint_poly(build_path_sum(pattern, interp));
}

std::vector<VarId> stratum_variables(int num_qubits, int num_params,
                                     int sym_occurrences, int max_sym_arity) {
  std::vector<VarId> vars;
  for (int j = 0; j < num_params; ++j)
    vars.push_back({VarKind::UnitAngle, j, 0});
  for (int a = 0; a < (1 << num_qubits); ++a)
    for (int b = 0; b < (1 << num_qubits); ++b)
      vars.push_back({VarKind::Basis, a, b});
  for (int g = 0; g < sym_occurrences; ++g)
    for (int pat = 0; pat < (1 << max_sym_arity); ++pat)
      vars.push_back({VarKind::Phiu, g, pat});
  return vars;
}

}  // namespace queso
