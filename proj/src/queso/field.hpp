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

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "queso/common.hpp"

namespace queso {

/// Arbitrary-precision rational, always in canonical reduced form.
using Rational = mpq_class;

Rational make_rational(long num, unsigned long den = 1);
/// Parses "p", "-p", "p/q". Throws UserError on malformed input.
Rational parse_rational(const std::string &text);
std::string rational_to_string(const Rational &q);

/**
 * Exact element of Q(i)[sqrt(2)]:
 *
 *   value = (a + b*i) + (c + d*i) * sqrt(2)
 *
 * The representation is unique: equality is componentwise. All amplitude
 * arithmetic in verification runs on this type; no floating point.
 */
class FieldElement {
 public:
  FieldElement() = default;  // zero
  FieldElement(Rational a, Rational b, Rational c, Rational d);

  static FieldElement zero() { return FieldElement(); }
  static FieldElement one();
  static FieldElement imag_unit();
  static FieldElement from_rational(const Rational &q);
  /// e^{i k pi / 4}; defined for any integer k (period 8).
  static FieldElement quarter_pi_phase(long k);
  /// (sqrt 2)^k for any integer k.
  static FieldElement sqrt2_power(long k);

  const Rational &a() const { return a_; }
  const Rational &b() const { return b_; }
  const Rational &c() const { return c_; }
  const Rational &d() const { return d_; }

  bool is_zero() const;
  bool is_one() const;
  bool operator==(const FieldElement &o) const;
  bool operator!=(const FieldElement &o) const { return !(*this == o); }

  FieldElement operator+(const FieldElement &o) const;
  FieldElement operator-(const FieldElement &o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement &o) const;
  FieldElement &operator+=(const FieldElement &o);
  FieldElement &operator*=(const FieldElement &o);

  /// Multiplicative inverse. Throws UserError("division by zero in field")
  /// on zero input; every nonzero element is invertible.
  FieldElement inverse() const;
  /// Complex conjugate.
  FieldElement conj() const;
  /// |x|^2 as a field element (lies in the real subfield Q[sqrt 2]).
  FieldElement norm_squared() const;

  std::complex<double> to_complex() const;
  std::string to_string() const;

  /// Canonical fixed-width digest: equal values give equal digests, stable
  /// across runs and processes.
  Digest digest() const;

 private:
  // Components of (a_ + b_ i) + (c_ + d_ i) sqrt(2).
  Rational a_ = 0, b_ = 0, c_ = 0, d_ = 0;
};

/// x^n by binary exponentiation; negative n uses the field inverse.
FieldElement field_pow(const FieldElement &x, long n);

/**
 * Rational point on the complex unit circle (c = d = 0 and a^2 + b^2 = 1).
 * The inverse of a unit point is its conjugate.
 */
struct UnitPoint {
  FieldElement value;
};

/// Maps slope r to ((r^2-1)/(1+r^2), 2r/(1+r^2)); injective, total, exact.
UnitPoint unit_from_slope(const Rational &r);

// ---------------------------------------------------------------------------
// Variables and valuations for polynomial identity testing.

enum class VarKind : std::uint8_t {
  UnitAngle = 0,  // u_j = e^{i theta_j / 2}, constrained to the unit circle
  Basis = 1,      // v_{a,b}, fresh variable per (input, output) basis pair
  Phiu = 2,       // phi^u_{g,p}: symbolic amplitude, gate occurrence g, bits p
};

struct VarId {
  VarKind kind = VarKind::UnitAngle;
  std::int32_t a = 0;
  std::int32_t b = 0;

  auto operator<=>(const VarId &) const = default;
  std::string to_string() const;
};

/// Number of distinct slopes used for unit-circle sampling: |R| = 2^62.
constexpr int kUnitSlopeBits = 62;

/**
 * A fixed assignment of field values to variables.
 *
 * Unit-angle variables hold exact unit-circle points; all other variables
 * hold nonzero Gaussian rationals. Immutable after construction; safe to
 * share across threads.
 */
class Valuation {
 public:
  Valuation() = default;

  /**
   * Deterministic sampling: a pure function of (seed, spec). The spec is
   * sorted and deduplicated internally, so callers that agree on the
   * variable set agree on every value.
   */
  static Valuation sample(std::uint64_t seed, std::vector<VarId> spec);

  /// Builds a valuation from explicit entries (used by tests and when
  /// echoing counterexamples).
  static Valuation from_entries(
      std::vector<std::pair<VarId, FieldElement>> entries);

  bool contains(const VarId &id) const;
  /// Throws InternalError when the variable is absent.
  const FieldElement &at(const VarId &id) const;
  /// at(id)^exp; negative exponents are only legal for unit variables and
  /// are evaluated through the exact conjugate inverse.
  FieldElement power(const VarId &id, long exp) const;

  /// Precomputes powers up to |exp| <= max_abs_exp for every variable
  /// (conjugate powers for unit variables). Larger exponents fall back to
  /// binary exponentiation. Read-only afterwards; safe to share.
  void precompute_powers(long max_abs_exp);

  const std::vector<std::pair<VarId, FieldElement>> &entries() const {
    return entries_;
  }

 private:
  std::size_t index_of(const VarId &id) const;  // npos when absent

  std::vector<std::pair<VarId, FieldElement>> entries_;  // sorted by VarId
  // power_table_[i][e] = value_i^e; neg_table_ holds conj powers
  std::vector<std::vector<FieldElement>> power_table_;
  std::vector<std::vector<FieldElement>> neg_power_table_;
};

}  // namespace queso
