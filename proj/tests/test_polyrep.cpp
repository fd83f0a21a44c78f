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

#include "doctest.h"
#include "support/oracle.hpp"

using namespace queso;

namespace {
const GateSet &nam() {
  static GateSet gs = builtin_gateset("nam");
  return gs;
}
}  // namespace

TEST_CASE("fingerprint of the empty 1-qubit circuit is v00 + v11") {
  CircuitPattern empty;
  empty.num_qubits = 1;
  FingerprintPoly p = fingerprint_poly(empty, nullptr);
  REQUIRE(p.monomials.size() == 2);
  for (const AmpMonomial &m : p.monomials) {
    CHECK(m.basis_in == m.basis_out);
    CHECK(m.coeff == FieldElement::one());
    CHECK(m.u_exp.empty());
  }
  CHECK(p.degree_bound == 1);
}

TEST_CASE("fingerprint of H;Rz matches the four-term expansion") {
  // v00 (1/rt2) u^-2 + v01 (1/rt2) u^2 + v10 (1/rt2) u^-2 + v11 (-1/rt2) u^2
  CircuitPattern c = parse_pattern("h q0 ; rz(t1) q0", nam());
  FingerprintPoly got = fingerprint_poly(c, nullptr);
  REQUIRE(got.monomials.size() == 4);

  FingerprintPoly expected;
  expected.num_qubits = 1;
  FieldElement inv_rt2 = FieldElement::sqrt2_power(-1);
  auto mono = [&](int a, int b, FieldElement coeff, long uexp) {
    AmpMonomial m;
    m.coeff = coeff;
    m.u_exp[0] = uexp;
    m.basis_in = a;
    m.basis_out = b;
    return m;
  };
  expected.monomials = {
      mono(0, 0, inv_rt2, -2),
      mono(0, 1, inv_rt2, 2),
      mono(1, 0, inv_rt2, -2),
      mono(1, 1, -inv_rt2, 2),
  };
  expected.degree_bound = 3;

  std::vector<VarId> vars = got.variables();
  for (std::uint64_t s = 0; s < 50; ++s) {
    Valuation val = Valuation::sample(s, vars);
    CHECK(got.evaluate(val) == expected.evaluate(val));
  }
  CHECK(got.degree_bound == 3);
}

TEST_CASE("amplitudes of X from |0>") {
  PathSum ps = build_path_sum(parse_pattern("x q0", nam()));
  auto amps = amplitudes(ps, 0);
  CHECK(amps.count(0) == 0);
  REQUIRE(amps.count(1) == 1);
}

TEST_CASE("amplitudes of Rz;Rz from |1> to |1> is e^{i t1} e^{i t2}") {
  PathSum ps = build_path_sum(parse_pattern("rz(t1) q0 ; rz(t2) q0", nam()));
  auto amps = amplitudes(ps, 1);
  REQUIRE(amps[1].size() == 1);
  CHECK(amps[1][0].u_exp.at(0) == 2);
  CHECK(amps[1][0].u_exp.at(1) == 2);
  CHECK(amps[1][0].coeff == FieldElement::one());
}

TEST_CASE("phi^u applications become indexed variables with u powers") {
  // rz(t1) q0 ; S q0,q1 ; rz(t2) q1 under identity interpretation, from |00>:
  // amplitude e^{-i t1} phi^u(00) e^{-i t2} -> u1^-2 phi00 u2^-2
  CircuitPattern c = parse_pattern("rz(t1) q0 ; S q0,q1 ; rz(t2) q1", nam());
  Interpretation id = identity_interpretation(2);
  PathSum ps = build_path_sum(c, &id);
  auto amps = amplitudes(ps, 0);
  REQUIRE(amps[0].size() == 1);
  const AmpMonomial &m = amps[0][0];
  CHECK(m.u_exp.at(0) == -2);
  CHECK(m.u_exp.at(1) == -2);
  CHECK(m.phiu_exp.at({0, 0}) == 1);
  CHECK(m.degree() == 5);
}

TEST_CASE("evaluate sums monomials exactly") {
  // v00 + v11 at explicit values 2 and 3 evaluates to 5
  FingerprintPoly p;
  p.num_qubits = 1;
  AmpMonomial m1, m2;
  m1.basis_in = m1.basis_out = 0;
  m2.basis_in = m2.basis_out = 1;
  p.monomials = {m1, m2};
  Valuation val = Valuation::from_entries({
      {{VarKind::Basis, 0, 0}, FieldElement::from_rational(2)},
      {{VarKind::Basis, 1, 1}, FieldElement::from_rational(3)},
  });
  CHECK(p.evaluate(val) == FieldElement::from_rational(5));
}

TEST_CASE("unit variable squared at u = i evaluates to -1") {
  AmpMonomial m;
  m.u_exp[0] = 2;
  Valuation val = Valuation::from_entries(
      {{{VarKind::UnitAngle, 0, 0}, FieldElement::imag_unit()}});
  CHECK(m.evaluate(val) == -FieldElement::one());
}

TEST_CASE("fingerprints share v variables across circuits of equal width") {
  CircuitPattern a = parse_pattern("h q0 ; h q0", nam());
  CircuitPattern b;
  b.num_qubits = 1;
  FingerprintPoly pa = fingerprint_poly(a, nullptr);
  FingerprintPoly pb = fingerprint_poly(b, nullptr);
  std::vector<VarId> vars = pa.variables();
  for (std::uint64_t s = 0; s < 20; ++s) {
    Valuation val = Valuation::sample(s * 13, vars);
    CHECK(pa.evaluate(val) == pb.evaluate(val));  // H;H is the identity
  }
}

TEST_CASE("degree bound dominates the true total degree") {
  GateSet gs = builtin_gateset("nam");
  CircuitPattern c =
      parse_pattern("rz(t1) q0 ; rz(t2) q0 ; h q0 ; rz(t1+t2) q0", gs);
  FingerprintPoly p = fingerprint_poly(c, nullptr);
  // every monomial: v (1) + |u1 exp| + |u2 exp|, all <= bound
  for (const AmpMonomial &m : p.monomials) CHECK(m.degree() <= p.degree_bound);
  CHECK(p.degree_bound >= 1);
}

TEST_CASE("too many qubits are rejected") {
  CircuitPattern wide;
  wide.num_qubits = 4;
  CHECK_THROWS_AS(fingerprint_poly(wide, nullptr, 3), UserError);
}

TEST_CASE("stratum variable table covers bases, units and phi^u") {
  auto vars = stratum_variables(2, 2, 1, 2);
  // 2 unit angles + 16 basis pairs + 4 phi^u patterns
  CHECK(vars.size() == 2 + 16 + 4);
}
