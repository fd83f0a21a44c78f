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

#include "queso/pathsum.hpp"

namespace queso {

/**
 * One product term of an amplitude polynomial:
 *
 *   coeff * prod_j u_j^{e_j} * prod phi^u_{g,p}^{m} [* v_{a,b}]
 *
 * u_j = e^{i theta_j / 2} is the half-angle unit variable of parameter j, so
 * exponents may be negative (evaluated by exact conjugate inverse). phi^u
 * exponents are nonnegative. Quarter-pi phases and sqrt2 powers are folded
 * into the exact coefficient.
 */
struct AmpMonomial {
  FieldElement coeff = FieldElement::one();
  std::map<int, long> u_exp;
  std::map<std::pair<int, int>, long> phiu_exp;  // (occurrence, arg pattern)
  int basis_in = -1;   // v_{a,b} present when both >= 0
  int basis_out = -1;

  long degree() const;
  FieldElement evaluate(const Valuation &val) const;
  void collect_vars(std::vector<VarId> &out) const;
};

/**
 * The single summed polynomial sum_{a,b} v_{a,b} psi^a(b) of a circuit,
 * kept in evaluate-on-demand monomial form (never canonicalized).
 */
struct FingerprintPoly {
  int num_qubits = 0;
  std::vector<AmpMonomial> monomials;
  long degree_bound = 0;

  std::vector<VarId> variables() const;
  FieldElement evaluate(const Valuation &val) const;
};

/**
 * Amplitude expressions psi^a per output basis state: applying the path sum
 * to |a> gives sum_b psi^a(b) |b>, with each psi^a(b) a sum of monomials.
 * Branch phases over concrete bits collapse into exact constants; phi^u
 * applications become indexed variables. The path sum must be fully
 * interpreted.
 */
std::map<int, std::vector<AmpMonomial>> amplitudes(const PathSum &p,
                                                   int basis_in);

FingerprintPoly fingerprint_poly(const PathSum &p);
/// Builds the path sum of the pattern (with interpretation for symbolic
/// gates) and fingerprints it. Throws UserError above `max_qubits`.
FingerprintPoly fingerprint_poly(const CircuitPattern &pattern,
                                 const Interpretation *interp,
                                 int max_qubits = 3);

/// Variable set for a whole stratum: all v_{a,b} for n qubits, unit angles
/// u_0..u_{num_params-1}, and phi^u variables for `sym_occurrences` symbolic
/// gates of arity <= max_sym_arity.
std::vector<VarId> stratum_variables(int num_qubits, int num_params,
                                     int sym_occurrences, int max_sym_arity);

}  // namespace queso
