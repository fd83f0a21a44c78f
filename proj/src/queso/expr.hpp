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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "queso/field.hpp"

namespace queso {

// ---------------------------------------------------------------------------
// Bit variables.
//
// A boolean expression ranges over three kinds of bits, packed into one id
// space:
//   - circuit input bits (one per wire), ids 0 .. n-1;
//   - gate-local branch bits, ids kBranchBitBase + j (only inside GateDefs);
//   - output bits of uninterpreted state transformers f^u, allocated when a
//     symbolic gate is composed into a path sum.

using BitVar = std::int32_t;

constexpr BitVar kBranchBitBase = 1 << 16;
constexpr BitVar kUappBitBase = 1 << 20;
constexpr int kUappBitStride = 4;

inline BitVar input_bit(int wire) { return wire; }
inline BitVar branch_bit(int j) { return kBranchBitBase + j; }
inline BitVar uapp_bit(int app, int out) {
  return kUappBitBase + app * kUappBitStride + out;
}
inline bool is_input_bit(BitVar v) { return v < kBranchBitBase; }
inline bool is_branch_bit(BitVar v) {
  return v >= kBranchBitBase && v < kUappBitBase;
}
inline bool is_uapp_bit(BitVar v) { return v >= kUappBitBase; }

/**
 * Boolean expression in algebraic normal form: an XOR of AND-monomials over
 * bit variables. The empty monomial is the constant 1; the empty sum is 0.
 * Monomials are kept sorted and deduplicated, so representation is canonical
 * and equality is structural.
 */
class Anf {
 public:
  Anf() = default;  // zero
  static Anf zero() { return Anf(); }
  static Anf one();
  static Anf var(BitVar v);

  bool is_zero() const { return monomials_.empty(); }
  bool is_one() const;
  bool operator==(const Anf &o) const { return monomials_ == o.monomials_; }
  bool operator!=(const Anf &o) const { return !(*this == o); }
  bool operator<(const Anf &o) const { return monomials_ < o.monomials_; }

  Anf operator^(const Anf &o) const;
  Anf operator*(const Anf &o) const;
  Anf negated() const { return *this ^ one(); }

  /// Degree of the highest monomial (0 for constants; -1 for zero).
  int degree() const;
  /// True when every monomial has at most one variable.
  bool is_affine() const { return degree() <= 1; }

  void collect_vars(std::set<BitVar> &out) const;

  /// Substitutes variables; ids absent from the map stay themselves.
  Anf substitute(const std::map<BitVar, Anf> &subst) const;

  template <typename Env>  // Env: bool(BitVar)
  bool evaluate(Env env) const {
    bool acc = false;
    for (const auto &mono : monomials_) {
      bool m = true;
      for (BitVar v : mono) m = m && env(v);
      acc = acc != m;
    }
    return acc;
  }

  const std::vector<std::vector<BitVar>> &monomials() const {
    return monomials_;
  }

  std::string to_string() const;
  void add_to_digest(DigestBuilder &b) const;

 private:
  // Sorted vector of sorted variable vectors; xor semantics.
  std::vector<std::vector<BitVar>> monomials_;

  static Anf from_monomials(std::vector<std::vector<BitVar>> monos);
};

// ---------------------------------------------------------------------------
// Angle expressions.
//
// An angle is a real-valued sum of terms  coeff * base * prod(bits), where
// base is pi or a circuit parameter theta_j, and each bit factor is a 0/1
// integer value of a boolean expression. pi coefficients are restricted to
// quarter-integers and theta coefficients to half-integers so that every
// concrete evaluation stays inside Q(i)[sqrt 2] (after the half-angle
// transformation theta -> u = e^{i theta / 2}).

constexpr int kAnglePi = -1;

struct AngleTerm {
  Rational coeff;
  int sym = kAnglePi;  // kAnglePi or theta index >= 0
  std::vector<Anf> bit_factors;
};

using AngleExpr = std::vector<AngleTerm>;

// ---------------------------------------------------------------------------
// Amplitude expressions: sums of products of an exact field constant, a
// power of sqrt(2), one complex exponential of an angle, and applications of
// uninterpreted amplitude transformers phi^u.

struct PhiuApp {
  int gate_occurrence = 0;  // which symbolic gate instance
  std::vector<Anf> args;    // one boolean expression per gate wire
};

struct AmpTerm {
  FieldElement coeff = FieldElement::one();
  int sqrt2_exp = 0;
  AngleExpr angle;          // exponent of the single ExpI factor
  std::vector<PhiuApp> phiu;
};

/// Sum of products.
using AmpExpr = std::vector<AmpTerm>;

AmpTerm amp_term_mul(const AmpTerm &x, const AmpTerm &y);
AmpExpr amp_mul(const AmpExpr &x, const AmpExpr &y);
AmpExpr amp_substitute(const AmpExpr &e, const std::map<BitVar, Anf> &subst);
AngleExpr angle_substitute(const AngleExpr &e,
                           const std::map<BitVar, Anf> &subst);

// ---------------------------------------------------------------------------
// Prefix expression syntax used by gate-set files (see README for the
// grammar). parse_* throw UserError with a message pointing at the offending
// token.

AmpExpr parse_amp_expr(const std::string &text, int arity, int num_params,
                       int branch_bits);
Anf parse_bit_expr(const std::string &text, int arity, int branch_bits);

}  // namespace queso
