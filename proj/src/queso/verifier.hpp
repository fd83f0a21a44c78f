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

#include <optional>
#include <ostream>
#include <unordered_map>

#include "queso/polyrep.hpp"

namespace queso {

/**
 * Result of one randomized identity test. `equivalent == false` comes with
 * the distinguishing valuation and both exact values: a reproducible
 * witness. `equivalent == true` carries the Schwartz-Zippel failure bound
 * d / |R|.
 */
struct PitOutcome {
  bool equivalent = false;
  Rational failure_bound = 0;
  Valuation valuation;
  FieldElement lhs_value;
  FieldElement rhs_value;
};

/// |R| = 2^62 (unit-circle slope domain; the general-variable domain is
/// larger, so this is the binding size for the bound).
Rational pit_domain_size();

/**
 * Randomized equivalence check of two patterns over the same wires and the
 * same parameter variables (one shared interpretation for symbolic gates).
 * A False verdict is definite for the fingerprint polynomials; a True
 * verdict fails with probability at most d / |R|.
 */
PitOutcome pit_check(const CircuitPattern &lhs, const CircuitPattern &rhs,
                     const Interpretation *interp, std::uint64_t seed,
                     int max_qubits = 7);

// ---------------------------------------------------------------------------
// Polynomial identity filter.

struct PifEntry {
  CircuitPattern circuit;
  std::optional<Interpretation> interp;
};

struct PifClass {
  FieldElement value;  // shared exact evaluation at the fixed valuation
  Digest key;
  std::vector<PifEntry> entries;
};

/**
 * Groups circuits into equivalence classes by one fixed random valuation,
 * sampled once at construction and used for every insert. Two circuits land
 * in the same class iff their fingerprints evaluate to the same exact field
 * value (digest buckets are disambiguated by exact comparison, so digest
 * collisions cannot merge classes). After k pairs have been deduced with
 * polynomials of degree at most d, the probability that any deduced pair is
 * wrong is at most k*d/|R|.
 */
class Pif {
 public:
  Pif(int num_qubits, int num_params, int sym_occurrences, int max_sym_arity,
      std::uint64_t seed);

  struct InsertResult {
    int class_id = -1;
    bool new_class = false;
  };

  InsertResult insert(CircuitPattern circuit,
                      std::optional<Interpretation> interp);
  /// Insert with a fingerprint evaluated elsewhere (parallel pipelines).
  InsertResult insert_evaluated(CircuitPattern circuit,
                                std::optional<Interpretation> interp,
                                FieldElement value, long degree_bound);

  FieldElement evaluate_fingerprint(const CircuitPattern &circuit,
                                    const Interpretation *interp,
                                    long *degree_out) const;

  int num_qubits() const { return num_qubits_; }
  const Valuation &valuation() const { return valuation_; }
  const std::vector<PifClass> &classes() const { return classes_; }
  std::uint64_t pair_count() const { return pair_count_; }
  long max_degree() const { return max_degree_; }
  /// Theoretical bound k*d/|R| on the probability of any false merge.
  Rational failure_bound() const;
  /// Digest-bucket collisions disambiguated by exact value (audit counter).
  std::uint64_t digest_collisions() const { return digest_collisions_; }

  struct ReverifyReport {
    std::uint64_t pairs_confirmed = 0;
    std::uint64_t splits = 0;
    std::vector<std::string> split_details;
  };
  /// Re-evaluates every class member at a freshly sampled valuation; any
  /// disagreement splits the class (and is reported).
  ReverifyReport reverify_classes(std::uint64_t fresh_seed);

  /// Versioned text dump of all classes, for debugging.
  void dump(std::ostream &os) const;

  /// Merges two classes unconditionally. Test/debug hook for auditing the
  /// reverification path; never called by synthesis.
  void force_merge(int class_a, int class_b);

 private:
  int num_qubits_;
  int num_params_;
  int sym_occurrences_;
  int max_sym_arity_;
  Valuation valuation_;
  std::vector<PifClass> classes_;
  std::unordered_map<Digest, std::vector<int>, DigestHash> index_;
  std::uint64_t pair_count_ = 0;
  long max_degree_ = 0;
  std::uint64_t digest_collisions_ = 0;
};

}  // namespace queso
