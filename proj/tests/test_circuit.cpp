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

#include "doctest.h"
#include "queso/qasm.hpp"
#include "support/oracle.hpp"

using namespace queso;

namespace {
const GateSet &nam() {
  static GateSet gs = builtin_gateset("nam");
  return gs;
}
ConcreteCircuit qasm(const std::string &body, const GateSet &gs = nam()) {
  return parse_qasm("OPENQASM 2.0;\nqreg q[4];\n" + body, gs);
}
}  // namespace

TEST_CASE("param expression parsing and printing round-trips") {
  for (const char *text : {"t1", "t2", "-t1", "t1+t2", "t1+t2+t3", "pi",
                           "pi/2", "-t1+t2", "t1-t2"}) {
    ParamExpr e = ParamExpr::parse(text);
    CHECK(ParamExpr::parse(e.to_string()) == e);
  }
  ParamExpr sum = ParamExpr::parse("t1+t2");
  CHECK(sum.eval({0.25, 0.5}) == doctest::Approx(0.75));
  CHECK(ParamExpr::parse("-t1").eval({0.25}) == doctest::Approx(-0.25));
  CHECK(ParamExpr::parse("pi/2").eval({}) == doctest::Approx(M_PI / 2));
  CHECK(ParamExpr::parse("t1").is_single_var());
  CHECK(ParamExpr::parse("-t1").is_single_var());
  CHECK(ParamExpr::parse("t1+t2").is_compound());
  CHECK(ParamExpr::parse("pi").is_constant());
}

TEST_CASE("pattern text round-trips through the parser") {
  for (const char *text :
       {"h q0", "-", "cx q0,q1 ; x q0 ; x q1", "rz(t1+t2) q0",
        "rz(t1) q0 ; S q0,q1 ; rz(t2) q1"}) {
    CircuitPattern p = parse_pattern(text, nam());
    CircuitPattern q = parse_pattern(p.to_text(), nam());
    CHECK(p == q);
  }
}

TEST_CASE("parse_qasm handles the basic forms") {
  ConcreteCircuit c = qasm("h q[0];\nh q[0];\n");
  CHECK(c.num_qubits == 4);
  CHECK(c.gate_count() == 2);
  CHECK(c.gates[0].def->name == "h");

  ConcreteCircuit fig1b = qasm("cx q[0],q[1];\nx q[0];\nx q[1];\n");
  CHECK(fig1b.gate_count() == 3);
  CHECK(fig1b.gates[0].def->name == "cx");
  CHECK(fig1b.gates[0].qubits == std::vector<int>{0, 1});

  ConcreteCircuit rz = qasm("rz(pi/3) q[1];\n");
  CHECK(rz.gates[0].def->name == "rz");
  CHECK(rz.gates[0].angles[0] == doctest::Approx(M_PI / 3));
}

TEST_CASE("parse_qasm reports precise errors") {
  CHECK_THROWS_AS(qasm("t q[0];\n"), QasmError);  // unknown gate
  CHECK_THROWS_AS(qasm("h q[9];\n"), QasmError);  // out of range
  CHECK_THROWS_AS(qasm("h q[0]\n"), QasmError);   // missing semicolon
  CHECK_THROWS_AS(
      parse_qasm("OPENQASM 2.0;\nqreg q[2];\nqreg r[2];\n", nam()), QasmError);
  try {
    qasm("h q[0];\nbogus q[0];\n");
    CHECK(false);
  } catch (const QasmError &e) {
    CHECK(e.line == 4);  // header contributes two lines
  }
}

TEST_CASE("emit/parse round-trip is structural identity") {
  ConcreteCircuit c = qasm(
      "h q[0];\ncx q[0],q[1];\nrz(0.12345678901234567) q[1];\n"
      "barrier q;\nmeasure q[0] -> c[0];\n");
  c.num_clbits = 4;
  ConcreteCircuit back = parse_qasm(emit_qasm(c), nam());
  CHECK(circuits_identical(c, back));
}

TEST_CASE("rigetti fixed-angle gates round-trip") {
  GateSet gs = builtin_gateset("rigetti");
  ConcreteCircuit c =
      parse_qasm("OPENQASM 2.0;\nqreg q[1];\nrx(pi/2) q[0];\nrx(-pi/2) q[0];\n"
                 "rx(pi) q[0];\nrz(0.7) q[0];\n",
                 gs);
  CHECK(c.gates[0].def->name == "rx_pi2");
  CHECK(c.gates[1].def->name == "rx_mpi2");
  CHECK(c.gates[2].def->name == "rx_pi");
  ConcreteCircuit back = parse_qasm(emit_qasm(c), gs);
  CHECK(circuits_identical(c, back));
}

TEST_CASE("canonical hash is invariant under parallel swaps") {
  ConcreteCircuit a = qasm("x q[0];\nrz(0.5) q[1];\n");
  ConcreteCircuit b = qasm("rz(0.5) q[1];\nx q[0];\n");
  CHECK(canonical_hash(a) == canonical_hash(b));
  // ordering on a shared wire is significant
  ConcreteCircuit c = qasm("x q[0];\nrz(0.5) q[0];\n");
  ConcreteCircuit d = qasm("rz(0.5) q[0];\nx q[0];\n");
  CHECK(canonical_hash(c) != canonical_hash(d));
}

TEST_CASE("canonical hash quantizes angles at 1e-10 and folds 2pi") {
  ConcreteCircuit a = qasm("rz(0.5) q[0];\n");
  ConcreteCircuit b = qasm("rz(0.50000000004) q[0];\n");
  ConcreteCircuit c = qasm("rz(0.5001) q[0];\n");
  CHECK(canonical_hash(a) == canonical_hash(b));
  CHECK(canonical_hash(a) != canonical_hash(c));
  ConcreteCircuit d = qasm("rz(6.783185307179586) q[0];\n");  // 0.5 + 2pi
  CHECK(canonical_hash(a) == canonical_hash(d));
}

TEST_CASE("fences block canonical reordering") {
  ConcreteCircuit a = qasm("x q[0];\nbarrier q;\nrz(0.5) q[1];\n");
  ConcreteCircuit b = qasm("rz(0.5) q[1];\nbarrier q;\nx q[0];\n");
  CHECK(canonical_hash(a) != canonical_hash(b));
}

TEST_CASE("canonicalization is idempotent and confluent on small circuits") {
  Rng rng(2024);
  GateSet gs = builtin_gateset("nam");
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(2));
    ConcreteCircuit c;
    c.num_qubits = n;
    int size = 1 + static_cast<int>(rng.next_below(6));
    for (int i = 0; i < size; ++i) {
      GateInstance g;
      const GateDef *def;
      do {
        def = &gs.gates[rng.next_below(gs.gates.size())];
      } while (def->arity > n);
      g.def = def;
      int q0 = static_cast<int>(rng.next_below(n));
      g.qubits.push_back(q0);
      if (def->arity == 2) {
        int q1 = static_cast<int>(rng.next_below(n - 1));
        if (q1 >= q0) ++q1;
        g.qubits.push_back(q1);
      }
      for (int k = 0; k < def->num_params; ++k)
        g.angles.push_back(rng.next_double() * 6.0);
      c.gates.push_back(std::move(g));
    }
    ConcreteCircuit canon = canonicalize_circuit(c);
    CHECK(circuits_identical(canon, canonicalize_circuit(canon)));
    CHECK(canonical_hash(c) == canonical_hash(canon));
    // confluence: every adjacent parallel swap reaches the same canonical form
    for (std::size_t i = 0; i + 1 < c.gates.size(); ++i) {
      const auto &g1 = c.gates[i], &g2 = c.gates[i + 1];
      bool disjoint = true;
      for (int q : g1.qubits)
        if (std::find(g2.qubits.begin(), g2.qubits.end(), q) != g2.qubits.end())
          disjoint = false;
      if (!disjoint) continue;
      ConcreteCircuit swapped = c;
      std::swap(swapped.gates[i], swapped.gates[i + 1]);
      CHECK(circuits_identical(canonicalize_circuit(swapped), canon));
      // the swap preserves semantics too
      CHECK(oracle::max_abs_diff(oracle::circuit_matrix(c),
                                 oracle::circuit_matrix(swapped)) < 1e-12);
    }
  }
}

TEST_CASE("wire graph encodes per-qubit adjacency exactly") {
  ConcreteCircuit c = qasm("cx q[0],q[1];\nx q[0];\ncx q[1],q[2];\n");
  WireGraph wg = WireGraph::build(c);
  CHECK(wg.pred[0] == std::vector<int>{-1, -1});
  CHECK(wg.next[0] == std::vector<int>{1, 2});
  CHECK(wg.pred[1] == std::vector<int>{0});
  CHECK(wg.next[2] == std::vector<int>{-1, -1});
  auto desc = wg.descendants(c, {0});
  CHECK(desc[1]);
  CHECK(desc[2]);
  auto anc = wg.ancestors(c, {2});
  CHECK(anc[0]);
  CHECK(!anc[1]);
}

TEST_CASE("pattern canonicalization relabels wires and parameters") {
  CircuitPattern p = parse_pattern("rz(t2) q2 ; rz(t1) q2", nam());
  CircuitPattern canon = canonicalize_pattern(p);
  CHECK(canon.to_text() == "rz(t1) q0 ; rz(t2) q0");
  CHECK(is_canonical_pattern(canon));
  CHECK(!is_canonical_pattern(p));
  // parallel gates sort by wire
  CircuitPattern q = parse_pattern("x q1 ; h q0", nam());
  CHECK(canonicalize_pattern(q).to_text() == "h q0 ; x q1");
}

TEST_CASE("lift_to_pattern: exact constants vs shared variables") {
  std::map<std::int64_t, int> vars;
  ConcreteCircuit c = qasm("rz(pi/4) q[0];\nrz(0.7) q[0];\nrz(0.7) q[1];\n");
  CircuitPattern p = lift_to_pattern(c, vars);
  CHECK(p.gates[0].params[0].is_constant());
  CHECK(p.gates[0].params[0].pi_mult == make_rational(1, 4));
  CHECK(p.gates[1].params[0] == p.gates[2].params[0]);
  CHECK(p.num_params == 1);
  // u3's half-angle coefficient keeps pi/4 out of the field: variable instead
  GateSet ibm = builtin_gateset("ibm");
  ConcreteCircuit u = parse_qasm(
      "OPENQASM 2.0;\nqreg q[1];\nu3(pi/4,pi/4,pi/2) q[0];\n", ibm);
  std::map<std::int64_t, int> vars2;
  CircuitPattern up = lift_to_pattern(u, vars2);
  CHECK(!up.gates[0].params[0].is_constant());  // theta/2 would be pi/8
  CHECK(up.gates[0].params[1].is_constant());   // phi has integer coefficient
  CHECK(up.gates[0].params[2].is_constant());
}
