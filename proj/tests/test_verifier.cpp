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

#include "queso/verifier.hpp"

#include <sstream>

#include "doctest.h"

using namespace queso;

namespace {
const GateSet &nam() {
  static GateSet gs = builtin_gateset("nam");
  return gs;
}
CircuitPattern pat(const std::string &text) { return parse_pattern(text, nam()); }
}  // namespace

TEST_CASE("pit: rotation merge is equivalent") {
  PitOutcome out =
      pit_check(pat("rz(t1) q0 ; rz(t2) q0"), pat("rz(t1+t2) q0"), nullptr, 7);
  CHECK(out.equivalent);
  CHECK(out.failure_bound > 0);
  CHECK(out.failure_bound < Rational(1, 1000000000));
}

TEST_CASE("pit: H vs X yields a reproducible counterexample") {
  PitOutcome out = pit_check(pat("h q0"), pat("x q0"), nullptr, 7);
  CHECK(!out.equivalent);
  CHECK(out.lhs_value != out.rhs_value);
  // the echoed valuation re-distinguishes the fingerprints exactly
  FingerprintPoly p1 = fingerprint_poly(pat("h q0"), nullptr);
  FingerprintPoly p2 = fingerprint_poly(pat("x q0"), nullptr);
  CHECK(p1.evaluate(out.valuation) == out.lhs_value);
  CHECK(p2.evaluate(out.valuation) == out.rhs_value);
}

TEST_CASE("pit: non-unifying interpretation is refuted") {
  // identity state transformer does not unify the long-range rotation merge
  CircuitPattern lhs = pat("rz(t1) q0 ; S q0,q1 ; rz(t2) q1");
  CircuitPattern rhs = pat("S q0,q1 ; rz(t1+t2) q1");
  Interpretation id = identity_interpretation(2);
  PitOutcome out = pit_check(lhs, rhs, &id, 7);
  CHECK(!out.equivalent);
  Interpretation swap = swap_interpretation();
  PitOutcome ok = pit_check(lhs, rhs, &swap, 7);
  CHECK(ok.equivalent);
}

TEST_CASE("pit rejects mismatched circuits") {
  CircuitPattern one = pat("h q0");
  CircuitPattern two = pat("cx q0,q1");
  CHECK_THROWS_AS(pit_check(one, two, nullptr, 7), UserError);
  CHECK_THROWS_AS(
      pit_check(pat("rz(t1) q0"), pat("rz(t2) q0"), nullptr, 7), UserError);
}

TEST_CASE("pif groups equivalent circuits and separates others") {
  Pif pif(1, 2, 0, 2, 42);
  CircuitPattern empty;
  empty.num_qubits = 1;
  auto r0 = pif.insert(empty, std::nullopt);
  CHECK(r0.new_class);
  auto r1 = pif.insert(pat("h q0 ; h q0"), std::nullopt);
  CHECK(!r1.new_class);
  CHECK(r1.class_id == r0.class_id);  // H;H cancels
  auto r2 = pif.insert(pat("h q0"), std::nullopt);
  auto r3 = pif.insert(pat("x q0"), std::nullopt);
  CHECK(r2.class_id != r3.class_id);
  CHECK(r2.new_class);
  CHECK(r3.new_class);
  // same circuit twice: same class, deterministic
  auto r4 = pif.insert(pat("h q0"), std::nullopt);
  CHECK(r4.class_id == r2.class_id);
  CHECK(pif.pair_count() == 2);  // (H;H, empty) and (h, h)
  CHECK(pif.digest_collisions() == 0);
}

TEST_CASE("pif failure bound is k*d/|R|") {
  Pif pif(1, 2, 0, 2, 43);
  CircuitPattern empty;
  empty.num_qubits = 1;
  pif.insert(empty, std::nullopt);
  pif.insert(pat("h q0 ; h q0"), std::nullopt);
  pif.insert(pat("x q0 ; x q0"), std::nullopt);
  CHECK(pif.pair_count() == 3);  // class of size 3: 1 + 2 new pairs
  Rational expect =
      Rational(3) * Rational(pif.max_degree()) / pit_domain_size();
  CHECK(pif.failure_bound() == expect);
}

TEST_CASE("reverify confirms honest classes and splits corrupted ones") {
  Pif pif(1, 2, 0, 2, 77);
  CircuitPattern empty;
  empty.num_qubits = 1;
  pif.insert(empty, std::nullopt);
  pif.insert(pat("h q0 ; h q0"), std::nullopt);
  pif.insert(pat("x q0 ; x q0"), std::nullopt);
  pif.insert(pat("h q0"), std::nullopt);
  pif.insert(pat("rz(t1) q0"), std::nullopt);

  auto clean = pif.reverify_classes(999);
  CHECK(clean.splits == 0);
  CHECK(clean.pairs_confirmed == 3);

  // corrupt: merge the identity class with the H class, then reverify
  int id_class = pif.insert(empty, std::nullopt).class_id;
  int h_class = pif.insert(pat("h q0"), std::nullopt).class_id;
  REQUIRE(id_class != h_class);
  pif.force_merge(id_class, h_class);
  auto report = pif.reverify_classes(1000);
  CHECK(report.splits >= 1);
  CHECK(!report.split_details.empty());
}

TEST_CASE("classes of size one are vacuously confirmed") {
  Pif pif(1, 1, 0, 2, 5);
  pif.insert(pat("h q0"), std::nullopt);
  auto report = pif.reverify_classes(6);
  CHECK(report.splits == 0);
  CHECK(report.pairs_confirmed == 0);
}

TEST_CASE("pif dump is versioned text") {
  Pif pif(1, 1, 0, 2, 5);
  pif.insert(pat("h q0"), std::nullopt);
  std::ostringstream os;
  pif.dump(os);
  CHECK(os.str().rfind("queso-pif 1\n", 0) == 0);
  CHECK(os.str().find("h q0") != std::string::npos);
}

TEST_CASE("symbolic circuits join classes only with matching values") {
  Pif pif(2, 2, 1, 2, 11);
  CircuitPattern lhs = pat("rz(t1) q0 ; S q0,q1 ; rz(t2) q1");
  CircuitPattern rhs = pat("S q0,q1 ; rz(t1+t2) q1");
  Interpretation swap = swap_interpretation();
  Interpretation id = identity_interpretation(2);
  auto a = pif.insert(lhs, swap);
  auto b = pif.insert(rhs, swap);
  auto c = pif.insert(lhs, id);
  auto d = pif.insert(rhs, id);
  CHECK(a.class_id == b.class_id);
  CHECK(c.class_id != d.class_id);
  CHECK(c.class_id != a.class_id);
}
