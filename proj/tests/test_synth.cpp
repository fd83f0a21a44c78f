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

#include <set>

#include "doctest.h"
#include "queso/rulefile.hpp"
#include "support/oracle.hpp"

using namespace queso;

namespace {

const GateSet &nam() {
  static GateSet gs = builtin_gateset("nam");
  return gs;
}

SynthConfig config(const GateSet &gs, int qubits, int size, bool symbolic,
                   int sym_size = 3) {
  SynthConfig cfg;
  cfg.gate_set = &gs;
  cfg.max_qubits = qubits;
  cfg.max_size = size;
  cfg.symbolic = symbolic;
  cfg.symbolic_max_qubits = 2;
  cfg.symbolic_max_size = sym_size;
  cfg.seed = 7;
  cfg.jobs = 1;
  return cfg;
}

std::set<std::string> texts(const std::vector<CircuitPattern> &circuits) {
  std::set<std::string> out;
  for (const auto &c : circuits) out.insert(c.to_text());
  return out;
}

bool has_rule(const std::vector<RewriteRule> &rules, const std::string &lhs,
              const std::string &rhs, const char *interp = nullptr) {
  for (const RewriteRule &r : rules) {
    if (r.lhs.to_text() != lhs || r.rhs.to_text() != rhs) continue;
    if (interp == nullptr && !r.symbolic) return true;
    if (interp != nullptr && r.symbolic && r.interp.to_string() == interp)
      return true;
  }
  return false;
}

RewriteRule make_rule(const std::string &lhs, const std::string &rhs,
                      const GateSet &gs = nam()) {
  RewriteRule r;
  r.lhs = parse_pattern(lhs, gs);
  r.rhs = parse_pattern(rhs, gs);
  r.gate_set = gs.name;
  int sym = r.lhs.symbolic_index();
  if (sym >= 0) {
    r.symbolic = true;
    r.interp = identity_interpretation(r.lhs.gates[sym].sym_arity);
  }
  r.size_preserving = r.lhs.size() == r.rhs.size();
  return r;
}

}  // namespace

TEST_CASE("enumeration covers the expected 1-qubit circuits") {
  auto all = enumerate_circuits(config(nam(), 1, 2, false));
  auto t = texts(all);
  CHECK(t.count("-"));
  CHECK(t.count("h q0"));
  CHECK(t.count("x q0"));
  CHECK(t.count("rz(t1) q0"));
  CHECK(t.count("rz(t1+t2) q0"));
  CHECK(t.count("h q0 ; h q0"));
  CHECK(t.count("h q0 ; x q0"));
  CHECK(t.count("rz(t1) q0 ; rz(t2) q0"));
  // no renaming duplicates, wires and parameters in first-use order
  CHECK(!t.count("rz(t2) q0"));
  CHECK(!t.count("h q1"));
  CHECK(!t.count("rz(t2) q0 ; rz(t1) q0"));
}

TEST_CASE("size zero enumerates exactly the empty circuit") {
  auto all = enumerate_circuits(config(nam(), 2, 0, false));
  REQUIRE(all.size() == 1);
  CHECK(all[0].to_text() == "-");
}

TEST_CASE("enumeration is deterministic") {
  auto a = enumerate_circuits(config(nam(), 2, 2, false));
  auto b = enumerate_circuits(config(nam(), 2, 2, false));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("ibm enumeration uses every parameter at most once") {
  GateSet ibm = builtin_gateset("ibm");
  auto all = enumerate_circuits(config(ibm, 1, 2, false));
  for (const CircuitPattern &c : all) {
    std::map<int, int> uses;
    for (const PatternGate &g : c.gates)
      for (const ParamExpr &pe : g.params)
        for (int v : pe.vars()) uses[v]++;
    for (const auto &[v, n] : uses) CHECK(n == 1);
  }
}

TEST_CASE("synth_eq groups the textbook Nam identities") {
  SynthResult result = synth_eq(config(nam(), 2, 3, false));
  auto rules = extract_rules(result, config(nam(), 2, 3, false));
  CHECK(has_rule(rules, "h q0 ; h q0", "-"));
  CHECK(has_rule(rules, "cx q0,q1 ; cx q0,q1", "-"));
  CHECK(has_rule(rules, "rz(t1) q0 ; rz(t2) q0", "rz(t1+t2) q0"));
  CHECK(has_rule(rules, "cx q0,q1 ; x q0 ; x q1", "x q0 ; cx q0,q1"));
}

TEST_CASE("symbolic synthesis finds the long-range rotation merge") {
  SynthResult result = synth_eq(config(nam(), 2, 3, true));
  auto rules = extract_rules(result, config(nam(), 2, 3, true));
  // f^u(x1 x2) = x2 x1 is table 0,2,1,3
  CHECK(has_rule(rules, "rz(t1) q0 ; S q0,q1 ; rz(t2) q1",
                 "S q0,q1 ; rz(t1+t2) q1", "2:0,2,1,3"));
  // the same-wire flavor under the identity interpretation
  CHECK(has_rule(rules, "rz(t1) q0 ; S q0,q1 ; rz(t2) q0",
                 "S q0,q1 ; rz(t1+t2) q0", "2:0,1,2,3"));
  // long-range CX cancellation: a CX pair cancels across any bridge that
  // preserves its control wire
  CHECK(has_rule(rules, "cx q0,q1 ; S q0 ; cx q0,q1", "S q0", "1:0,1"));
}

TEST_CASE("cross-width identities are grouped through padded strata") {
  SynthConfig cfg = config(nam(), 2, 2, false);
  SynthResult result = synth_eq(cfg);
  // stratum 2 holds the padded 1-wire circuits: h;h joins the 2-wire
  // identity class next to cx;cx
  const Pif &two = result.pifs[1];
  int identity_class = -1;
  for (std::size_t i = 0; i < two.classes().size(); ++i)
    for (const PifEntry &e : two.classes()[i].entries)
      if (e.circuit.to_text() == "cx q0,q1 ; cx q0,q1")
        identity_class = static_cast<int>(i);
  REQUIRE(identity_class >= 0);
  std::set<std::string> members;
  for (const PifEntry &e : two.classes()[identity_class].entries)
    members.insert(e.circuit.to_text());
  CHECK(members.count("-"));
  CHECK(members.count("h q0 ; h q0"));
  CHECK(members.count("x q0 ; x q0"));
}

TEST_CASE("an empty gate set yields only the empty circuit") {
  GateSet empty = load_gateset(
      R"JSON({"schema":"queso.gateset.v1","name":"none","gates":[]})JSON");
  SynthConfig cfg = config(empty, 2, 3, false);
  SynthResult result = synth_eq(cfg);
  for (const Pif &pif : result.pifs) {
    CHECK(pif.classes().size() == 1);
    CHECK(pif.classes()[0].entries.size() == 1);
  }
  CHECK(extract_rules(result, cfg).empty());
}

TEST_CASE("singleton classes yield no rules") {
  SynthConfig cfg = config(nam(), 1, 1, false);
  SynthResult result = synth_eq(cfg);
  auto rules = extract_rules(result, cfg);
  CHECK(rules.empty());  // size-1 circuits are pairwise inequivalent
}

TEST_CASE("every synthesized rule passes the dense-matrix oracle") {
  SynthConfig cfg = config(nam(), 2, 3, true);
  SynthResult result = synth_eq(cfg);
  auto rules = prune_rules(extract_rules(result, cfg));
  CHECK(rules.size() > 0);
  Rng rng(99);
  for (const RewriteRule &r : rules) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> thetas;
      for (int k = 0; k < std::max(r.lhs.num_params, 1); ++k)
        thetas.push_back(rng.next_double() * 2 * M_PI);
      std::vector<oracle::Complex> phi;
      for (int p = 0; p < 4; ++p)
        phi.emplace_back(rng.next_double() * 2 - 1, rng.next_double() * 2 - 1);
      auto lhs = oracle::pattern_matrix(r.lhs, thetas,
                                        r.symbolic ? &r.interp : nullptr,
                                        r.symbolic ? &phi : nullptr);
      auto rhs = oracle::pattern_matrix(r.rhs, thetas,
                                        r.symbolic ? &r.interp : nullptr,
                                        r.symbolic ? &phi : nullptr);
      REQUIRE(oracle::max_abs_diff(lhs, rhs) < 1e-9);
    }
  }
}

TEST_CASE("rules never violate a pruning predicate after pruning") {
  SynthConfig cfg = config(nam(), 2, 3, true);
  SynthResult result = synth_eq(cfg);
  auto rules = prune_rules(extract_rules(result, cfg));
  for (const RewriteRule &r : rules) {
    CHECK(!prune_disconnected_side(r));
    CHECK(!prune_lhs_compound_param(r));
    CHECK(!prune_rhs_params_unbindable(r));
    CHECK(!prune_rhs_qubits_not_subset(r));
    CHECK(!prune_symbolic_empty_segment(r));
    CHECK(!prune_common_affix(r));
  }
}

TEST_CASE("pruning predicates fire on their own examples") {
  // lone compound parameter on the left: would need angle decomposition
  RewriteRule compound = make_rule("rz(t1+t2) q0", "rz(t1) q0 ; rz(t2) q0");
  CHECK(prune_lhs_compound_param(compound));
  // disconnected side: two gates on unrelated wires
  RewriteRule disconnected = make_rule("x q0 ; x q1", "x q1 ; x q0");
  CHECK(prune_disconnected_side(disconnected));
  // replacement on wires the pattern never touches
  RewriteRule qubits = make_rule("x q0", "x q1");
  qubits.rhs.num_qubits = 2;
  qubits.lhs.num_qubits = 2;
  CHECK(prune_rhs_qubits_not_subset(qubits));
  // replacement parameters not bindable from the pattern
  RewriteRule params = make_rule("rz(t1) q0", "rz(t2) q0");
  CHECK(prune_rhs_params_unbindable(params));
  // symbolic rule with an empty segment around S
  RewriteRule empty_seg =
      make_rule("S q0,q1 ; cx q0,q1 ; cx q0,q1", "S q0,q1");
  CHECK(prune_symbolic_empty_segment(empty_seg));
  // removable common prefix
  RewriteRule affix = make_rule("h q0 ; x q0", "h q0");
  CHECK(prune_common_affix(affix));
  // a healthy rule passes all of them
  RewriteRule good = make_rule("h q0 ; h q0", "-");
  CHECK(!prune_disconnected_side(good));
  CHECK(!prune_lhs_compound_param(good));
  CHECK(!prune_rhs_params_unbindable(good));
  CHECK(!prune_rhs_qubits_not_subset(good));
  CHECK(!prune_symbolic_empty_segment(good));
  CHECK(!prune_common_affix(good));
}

TEST_CASE("rule files round-trip and validate") {
  SynthConfig cfg = config(nam(), 2, 2, true);
  SynthResult result = synth_eq(cfg);
  auto rules = prune_rules(extract_rules(result, cfg));
  std::string text = rules_to_text(rules, "nam");
  auto loaded = rules_from_text(text, nam());
  REQUIRE(loaded.size() == rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    CHECK(loaded[i].lhs == rules[i].lhs);
    CHECK(loaded[i].rhs == rules[i].rhs);
    CHECK(loaded[i].symbolic == rules[i].symbolic);
    if (rules[i].symbolic) CHECK(loaded[i].interp == rules[i].interp);
  }
  CHECK(rules_to_text(loaded, "nam") == text);

  CHECK_THROWS_AS(rules_from_text("queso-rules 999\n", nam()), UserError);
  GateSet ibm = builtin_gateset("ibm");
  CHECK_THROWS_AS(rules_from_text(text, ibm), UserError);
}

TEST_CASE("synthesis is deterministic across runs and job counts") {
  SynthConfig cfg = config(nam(), 2, 3, true);
  SynthResult r1 = synth_eq(cfg);
  cfg.jobs = 2;
  SynthResult r2 = synth_eq(cfg);
  auto rules1 = prune_rules(extract_rules(r1, cfg));
  auto rules2 = prune_rules(extract_rules(r2, cfg));
  CHECK(rules_to_text(rules1, "nam") == rules_to_text(rules2, "nam"));
}

TEST_CASE("a timeout leaves a valid partial pif") {
  SynthConfig cfg = config(nam(), 3, 4, false);
  cfg.timeout_seconds = 1e-9;
  SynthResult result = synth_eq(cfg);
  CHECK(result.stats.timed_out);
  // the empty circuit is always present
  for (const Pif &pif : result.pifs) CHECK(pif.classes().size() >= 1);
}
