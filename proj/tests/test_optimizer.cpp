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

#include <cmath>

#include "doctest.h"
#include "queso/device.hpp"
#include "support/oracle.hpp"

using namespace queso;

namespace {

const GateSet &nam() {
  static GateSet gs = builtin_gateset("nam");
  return gs;
}

ConcreteCircuit qasm(const std::string &body, int qubits = 1,
                     const GateSet &gs = nam()) {
  return parse_qasm("OPENQASM 2.0;\nqreg q[" + std::to_string(qubits) +
                        "];\n" + body,
                    gs);
}

RewriteRule rule_of(const std::string &lhs, const std::string &rhs) {
  RewriteRule r;
  r.lhs = parse_pattern(lhs, nam());
  r.rhs = parse_pattern(rhs, nam());
  int width = std::max(r.lhs.num_qubits, r.rhs.num_qubits);
  r.lhs.num_qubits = r.rhs.num_qubits = width;
  r.gate_set = "nam";
  r.size_preserving = r.lhs.size() == r.rhs.size();
  return r;
}

const ConcreteCircuit &rotation_chain() {
  static ConcreteCircuit c = qasm(
      "rz(pi) q[0];\nrz(pi/2) q[0];\nrz(pi/3) q[0];\nrz(pi/4) q[0];\n");
  return c;
}

}  // namespace

TEST_CASE("one maximal application merges two disjoint pairs") {
  RewriteRule merge = rule_of("rz(t1) q0 ; rz(t2) q0", "rz(t1+t2) q0");
  ConcreteCircuit once = apply_max(merge, rotation_chain());
  CHECK(once.gate_count() == 2);
  CHECK(once.gates[0].angles[0] == doctest::Approx(3 * M_PI / 2));
  CHECK(once.gates[1].angles[0] ==
        doctest::Approx(M_PI / 3 + M_PI / 4));
}

TEST_CASE("beam search collapses the rotation chain to one gate") {
  RewriteRule merge = rule_of("rz(t1) q0 ; rz(t2) q0", "rz(t1+t2) q0");
  BeamConfig cfg;
  cfg.jobs = 1;
  BeamStats stats;
  ConcreteCircuit best = max_beam(rotation_chain(), {merge}, cfg, &stats);
  REQUIRE(best.gate_count() == 1);
  // pi + pi/2 + pi/3 + pi/4 = 25pi/12 = pi/12 (mod 2pi)
  CHECK(std::abs(best.gates[0].angles[0] - M_PI / 12) < 1e-10);
  CHECK(stats.final_cost == 1);
  CHECK(stats.initial_cost == 4);
  CHECK(!stats.timed_out);
}

TEST_CASE("two disjoint cancellations empty the circuit") {
  RewriteRule cancel = rule_of("h q0 ; h q0", "-");
  ConcreteCircuit c = qasm("h q[0];\nh q[0];\nh q[0];\nh q[0];\n");
  BeamConfig cfg;
  ConcreteCircuit best = max_beam(c, {cancel}, cfg);
  CHECK(best.gate_count() == 0);
}

TEST_CASE("no applicable rule leaves the circuit unchanged") {
  RewriteRule cancel = rule_of("h q0 ; h q0", "-");
  ConcreteCircuit c = qasm("x q[0];\nrz(0.5) q[0];\n");
  ConcreteCircuit best = max_beam(c, {cancel}, BeamConfig{});
  CHECK(circuits_identical(best, c));
  CHECK(circuits_identical(apply_max(cancel, c), c));
}

TEST_CASE("cost functions count what they claim") {
  ConcreteCircuit fig = qasm(
      "rz(pi) q[0];\ncx q[0],q[1];\nrz(pi/4) q[1];\ncx q[1],q[0];\n"
      "cx q[0],q[1];\ncx q[1],q[2];\nrz(pi/2) q[1];\n",
      3);
  CHECK(circuit_cost(fig, CostKind::TotalGates) == 7);
  CHECK(circuit_cost(fig, CostKind::TwoQubitGates) == 4);
  CHECK(circuit_cost(fig, CostKind::TotalExcludingRz) == 4);
  ConcreteCircuit empty;
  empty.num_qubits = 1;
  CHECK(circuit_cost(empty, CostKind::TotalGates) == 0);
  GateSet ion = builtin_gateset("ion");
  ConcreteCircuit ion_pair =
      qasm("rz(0.3) q[0];\nrx(0.4) q[0];\n", 1, ion);
  CHECK(circuit_cost(ion_pair, CostKind::TotalExcludingRz) == 1);
  CHECK(cost_kind_from_string("no-rz") == CostKind::TotalExcludingRz);
  CHECK_THROWS_AS(cost_kind_from_string("bogus"), UserError);
}

TEST_CASE("beam cost never increases and the result stays equivalent") {
  RewriteRule merge = rule_of("rz(t1) q0 ; rz(t2) q0", "rz(t1+t2) q0");
  RewriteRule cancel = rule_of("h q0 ; h q0", "-");
  RewriteRule cxflip = rule_of("cx q0,q1 ; x q0 ; x q1", "x q0 ; cx q0,q1");
  std::vector<RewriteRule> rules = {merge, cancel, cxflip};
  Rng rng(31337);
  for (int trial = 0; trial < 6; ++trial) {
    ConcreteCircuit c;
    c.num_qubits = 3;
    for (int i = 0; i < 12; ++i) {
      GateInstance g;
      int pick = static_cast<int>(rng.next_below(4));
      g.def = nam().gates[pick].arity <= 3 ? &nam().gates[pick] : nam().find("h");
      int q0 = static_cast<int>(rng.next_below(3));
      g.qubits.push_back(q0);
      if (g.def->arity == 2) {
        int q1 = static_cast<int>(rng.next_below(2));
        if (q1 >= q0) ++q1;
        g.qubits.push_back(q1);
      }
      for (int k = 0; k < g.def->num_params; ++k)
        g.angles.push_back(rng.next_double() * 2 * M_PI);
      c.gates.push_back(std::move(g));
    }
    BeamConfig cfg;
    ConcreteCircuit best = max_beam(c, rules, cfg);
    CHECK(circuit_cost(best, cfg.cost) <= circuit_cost(c, cfg.cost));
    CHECK(oracle::max_abs_diff(oracle::circuit_matrix(c),
                               oracle::circuit_matrix(best)) < 1e-9);
  }
}

TEST_CASE("beam is deterministic across job counts") {
  RewriteRule merge = rule_of("rz(t1) q0 ; rz(t2) q0", "rz(t1+t2) q0");
  RewriteRule cancel = rule_of("h q0 ; h q0", "-");
  ConcreteCircuit c = qasm(
      "h q[0];\nrz(0.2) q[0];\nrz(0.3) q[0];\nh q[0];\nh q[0];\nh q[0];\n");
  BeamConfig one;
  one.jobs = 1;
  BeamConfig two;
  two.jobs = 2;
  ConcreteCircuit a = max_beam(c, {merge, cancel}, one);
  ConcreteCircuit b = max_beam(c, {merge, cancel}, two);
  CHECK(circuits_identical(a, b));
  CHECK(emit_qasm(a) == emit_qasm(b));
}

TEST_CASE("a short timeout still returns a valid circuit") {
  RewriteRule merge = rule_of("rz(t1) q0 ; rz(t2) q0", "rz(t1+t2) q0");
  std::string body;
  for (int i = 0; i < 60; ++i) body += "rz(0.01) q[0];\n";
  ConcreteCircuit c = qasm(body);
  BeamConfig cfg;
  cfg.timeout_seconds = 1e-6;
  BeamStats stats;
  ConcreteCircuit best = max_beam(c, {merge}, cfg, &stats);
  CHECK(best.gate_count() <= c.gate_count());
  CHECK(stats.elapsed_seconds < 1.0);
}

TEST_CASE("the queue respects its capacity") {
  RewriteRule merge = rule_of("rz(t1) q0 ; rz(t2) q0", "rz(t1+t2) q0");
  std::string body;
  for (int i = 0; i < 10; ++i) body += "rz(0.1) q[0];\n";
  ConcreteCircuit c = qasm(body);
  BeamConfig cfg;
  cfg.queue_capacity = 2;
  ConcreteCircuit best = max_beam(c, {merge}, cfg);
  CHECK(best.gate_count() == 1);  // still converges on this easy input
}

// ---------------------------------------------------------------------------
// Fidelity

TEST_CASE("single CX on the Toronto model") {
  DeviceModel m = builtin_device("ibm-toronto");
  ConcreteCircuit c = qasm("cx q[0],q[1];\n", 2);
  CHECK(circuit_fidelity(c, m) == 0.98719);
}

TEST_CASE("empty circuit has fidelity one") {
  DeviceModel m = builtin_device("ibm-toronto");
  ConcreteCircuit empty;
  empty.num_qubits = 2;
  CHECK(circuit_fidelity(empty, m) == 1.0);
}

TEST_CASE("fidelity is the product over physical gates") {
  DeviceModel m = builtin_device("ibm-toronto");
  ConcreteCircuit c = qasm("cx q[0],q[1];\nh q[0];\n", 2);
  CHECK(std::abs(circuit_fidelity(c, m) - 0.98719 * 0.999606) < 1e-12);
  // rz is virtual: free
  ConcreteCircuit with_rz = qasm("cx q[0],q[1];\nrz(0.5) q[0];\n", 2);
  CHECK(circuit_fidelity(with_rz, m) == 0.98719);
  // ten-gate hand-computed case
  std::string body;
  for (int i = 0; i < 4; ++i) body += "cx q[0],q[1];\n";
  for (int i = 0; i < 3; ++i) body += "h q[0];\n";
  for (int i = 0; i < 3; ++i) body += "rz(0.1) q[1];\n";
  ConcreteCircuit ten = qasm(body, 2);
  double expect = std::pow(0.98719, 4) * std::pow(0.999606, 3);
  CHECK(std::abs(circuit_fidelity(ten, m) - expect) < 1e-12);
}

TEST_CASE("unclassified gates are an error") {
  DeviceModel partial = load_device(R"JSON({
    "schema": "queso.device.v1", "name": "partial",
    "gates": {"cx": 0.99}
  })JSON");
  ConcreteCircuit c = qasm("cx q[0],q[1];\n", 2);
  CHECK(circuit_fidelity(c, partial) == 0.99);
  ConcreteCircuit h = qasm("h q[0];\n", 1);
  CHECK_THROWS_AS(circuit_fidelity(h, partial), UserError);
}

TEST_CASE("device files validate") {
  CHECK_THROWS_AS(load_device("{}"), UserError);
  CHECK_THROWS_AS(load_device(R"JSON({
    "schema": "queso.device.v1", "name": "bad",
    "gates": {"cx": 1.5}
  })JSON"),
                  UserError);
  for (const std::string &name : builtin_device_names())
    CHECK(builtin_device(name).name == name);
}
