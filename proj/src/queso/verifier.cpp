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

#include <algorithm>
#include <map>

namespace queso {

Rational pit_domain_size() {
  mpz_class size = 1;
  size <<= kUnitSlopeBits;
  return Rational(size);
}

PitOutcome pit_check(const CircuitPattern &lhs, const CircuitPattern &rhs,
                     const Interpretation *interp, std::uint64_t seed,
                     int max_qubits) {
  if (lhs.num_qubits != rhs.num_qubits)
    throw UserError("pit_check: circuits have different qubit counts (" +
                    std::to_string(lhs.num_qubits) + " vs " +
                    std::to_string(rhs.num_qubits) + ")");
  if (lhs.used_params() != rhs.used_params())
    throw UserError("pit_check: circuits use different parameter variables");

  FingerprintPoly p1 = fingerprint_poly(lhs, interp, max_qubits);
  FingerprintPoly p2 = fingerprint_poly(rhs, interp, max_qubits);

  std::vector<VarId> vars = p1.variables();
  std::vector<VarId> vars2 = p2.variables();
  vars.insert(vars.end(), vars2.begin(), vars2.end());
  Valuation val = Valuation::sample(seed, std::move(vars));
  val.precompute_powers(32);

  PitOutcome out;
  out.lhs_value = p1.evaluate(val);
  out.rhs_value = p2.evaluate(val);
  out.valuation = std::move(val);
  out.equivalent = (out.lhs_value == out.rhs_value);
  if (out.equivalent) {
    long d = std::max({p1.degree_bound, p2.degree_bound, 1L});
    out.failure_bound = Rational(d) / pit_domain_size();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pif

Pif::Pif(int num_qubits, int num_params, int sym_occurrences,
         int max_sym_arity, std::uint64_t seed)
    : num_qubits_(num_qubits),
      num_params_(num_params),
      sym_occurrences_(sym_occurrences),
      max_sym_arity_(max_sym_arity) {
  // Sampled once here; used for every insert over the data structure's
  // lifetime. Power tables make the hot evaluation path lookup-only.
  valuation_ = Valuation::sample(
      seed, stratum_variables(num_qubits, num_params, sym_occurrences,
                              max_sym_arity));
  valuation_.precompute_powers(32);
}

FieldElement Pif::evaluate_fingerprint(const CircuitPattern &circuit,
                                       const Interpretation *interp,
                                       long *degree_out) const {
  FingerprintPoly poly = fingerprint_poly(circuit, interp, num_qubits_);
  if (degree_out) *degree_out = poly.degree_bound;
  return poly.evaluate(valuation_);
}

Pif::InsertResult Pif::insert(CircuitPattern circuit,
                              std::optional<Interpretation> interp) {
  if (circuit.num_qubits > num_qubits_)
    throw UserError("pif insert: circuit wider than the stratum");
  long degree = 0;
  FieldElement value = evaluate_fingerprint(
      circuit, interp.has_value() ? &*interp : nullptr, &degree);
  return insert_evaluated(std::move(circuit), std::move(interp),
                          std::move(value), degree);
}

Pif::InsertResult Pif::insert_evaluated(CircuitPattern circuit,
                                        std::optional<Interpretation> interp,
                                        FieldElement value,
                                        long degree_bound) {
  max_degree_ = std::max(max_degree_, degree_bound);
  Digest key = value.digest();
  auto &bucket = index_[key];
  for (int id : bucket) {
    if (classes_[id].value == value) {
      pair_count_ += classes_[id].entries.size();
      classes_[id].entries.push_back(
          PifEntry{std::move(circuit), std::move(interp)});
      return {id, false};
    }
    ++digest_collisions_;
  }
  int id = static_cast<int>(classes_.size());
  PifClass cls;
  cls.value = std::move(value);
  cls.key = key;
  cls.entries.push_back(PifEntry{std::move(circuit), std::move(interp)});
  classes_.push_back(std::move(cls));
  bucket.push_back(id);
  return {id, true};
}

Rational Pif::failure_bound() const {
  Rational k(static_cast<unsigned long>(pair_count_));
  return k * Rational(std::max(max_degree_, 1L)) / pit_domain_size();
}

Pif::ReverifyReport Pif::reverify_classes(std::uint64_t fresh_seed) {
  Valuation fresh = Valuation::sample(
      fresh_seed, stratum_variables(num_qubits_, num_params_,
                                    sym_occurrences_, max_sym_arity_));
  fresh.precompute_powers(32);
  ReverifyReport report;
  std::vector<PifClass> rebuilt;
  for (std::size_t cid = 0; cid < classes_.size(); ++cid) {
    PifClass &cls = classes_[cid];
    if (cls.entries.size() <= 1) {
      rebuilt.push_back(std::move(cls));  // vacuously confirmed
      continue;
    }
    // Group entries by their exact value under the fresh valuation.
    std::vector<std::pair<FieldElement, std::vector<PifEntry>>> groups;
    for (PifEntry &e : cls.entries) {
      FingerprintPoly poly = fingerprint_poly(
          e.circuit, e.interp.has_value() ? &*e.interp : nullptr, num_qubits_);
      FieldElement v = poly.evaluate(fresh);
      bool placed = false;
      for (auto &[gv, list] : groups) {
        if (gv == v) {
          list.push_back(std::move(e));
          placed = true;
          break;
        }
      }
      if (!placed) {
        groups.emplace_back(std::move(v), std::vector<PifEntry>{});
        groups.back().second.push_back(std::move(e));
      }
    }
    for (const auto &[gv, list] : groups)
      report.pairs_confirmed += list.size() * (list.size() - 1) / 2;
    if (groups.size() > 1) {
      report.splits += groups.size() - 1;
      report.split_details.push_back(
          "class " + std::to_string(cid) + " split into " +
          std::to_string(groups.size()) + " groups on reverification");
    }
    bool first = true;
    for (auto &[gv, list] : groups) {
      PifClass nc;
      nc.value = first ? cls.value : FieldElement();  // original key kept for
      nc.key = first ? cls.key : Digest{};            // the surviving group
      nc.entries = std::move(list);
      rebuilt.push_back(std::move(nc));
      first = false;
    }
  }
  if (report.splits > 0) {
    classes_ = std::move(rebuilt);
    index_.clear();  // digests of split-off groups are no longer meaningful
    pair_count_ = 0;
    for (const PifClass &cls : classes_)
      pair_count_ += cls.entries.size() * (cls.entries.size() - 1) / 2;
  } else {
    classes_ = std::move(rebuilt);
  }
  return report;
}

void Pif::dump(std::ostream &os) const {
  os << "queso-pif 1\n";
  os << "qubits " << num_qubits_ << "\n";
  os << "classes " << classes_.size() << "\n";
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    os << "class " << i << " size " << classes_[i].entries.size() << " key "
       << classes_[i].key.hex() << "\n";
    for (const PifEntry &e : classes_[i].entries) {
      os << "  " << e.circuit.to_text();
      if (e.interp.has_value()) os << " [" << e.interp->to_string() << "]";
      os << "\n";
    }
  }
}

void Pif::force_merge(int class_a, int class_b) {
  if (class_a == class_b) return;
  PifClass &a = classes_[class_a];
  PifClass &b = classes_[class_b];
  for (PifEntry &e : b.entries) {
    pair_count_ += a.entries.size();
    a.entries.push_back(std::move(e));
  }
  b.entries.clear();
}

}  // namespace queso
