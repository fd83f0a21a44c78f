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

#include "queso/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace queso {

Rational make_rational(long num, unsigned long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string &text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class num(text);
      return Rational(num);
    }
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    if (den == 0) throw UserError("rational with zero denominator: " + text);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument &) {
    throw UserError("malformed rational: " + text);
  }
}

std::string rational_to_string(const Rational &q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

FieldElement FieldElement::one() { return FieldElement(1, 0, 0, 0); }
FieldElement FieldElement::imag_unit() { return FieldElement(0, 1, 0, 0); }

FieldElement FieldElement::from_rational(const Rational &q) {
  return FieldElement(q, 0, 0, 0);
}

FieldElement FieldElement::quarter_pi_phase(long k) {
  long m = ((k % 8) + 8) % 8;
  Rational h = make_rational(1, 2);
  switch (m) {
    case 0: return FieldElement(1, 0, 0, 0);
    case 1: return FieldElement(0, 0, h, h);    // (1+i)/sqrt2
    case 2: return FieldElement(0, 1, 0, 0);
    case 3: return FieldElement(0, 0, -h, h);   // (-1+i)/sqrt2
    case 4: return FieldElement(-1, 0, 0, 0);
    case 5: return FieldElement(0, 0, -h, -h);
    case 6: return FieldElement(0, -1, 0, 0);
    default: return FieldElement(0, 0, h, -h);  // (1-i)/sqrt2
  }
}

FieldElement FieldElement::sqrt2_power(long k) {
  // (sqrt2)^k = 2^q * (sqrt2)^s  with k = 2q + s, s in {0,1}.
  long q = (k >= 0) ? k / 2 : -((-k + 1) / 2);
  long s = k - 2 * q;
  Rational two_q;
  if (q >= 0) {
    mpz_class num = 1;
    num <<= static_cast<unsigned>(q);
    two_q = Rational(num);
  } else {
    mpz_class den = 1;
    den <<= static_cast<unsigned>(-q);
    two_q = Rational(1, den);
    two_q.canonicalize();
  }
  return s == 0 ? FieldElement(two_q, 0, 0, 0) : FieldElement(0, 0, two_q, 0);
}

bool FieldElement::is_zero() const {
  return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0;
}

bool FieldElement::is_one() const {
  return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 0;
}

bool FieldElement::operator==(const FieldElement &o) const {
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

FieldElement FieldElement::operator+(const FieldElement &o) const {
  return FieldElement(a_ + o.a_, b_ + o.b_, c_ + o.c_, d_ + o.d_);
}

FieldElement FieldElement::operator-(const FieldElement &o) const {
  return FieldElement(a_ - o.a_, b_ - o.b_, c_ - o.c_, d_ - o.d_);
}

FieldElement FieldElement::operator-() const {
  return FieldElement(-a_, -b_, -c_, -d_);
}

FieldElement FieldElement::operator*(const FieldElement &o) const {
  // With g0 = a+bi, g1 = c+di over Q(i):
  //   (g0 + g1 rt2)(h0 + h1 rt2) = (g0 h0 + 2 g1 h1) + (g0 h1 + g1 h0) rt2
  const Rational &e = o.a_, &f = o.b_, &g = o.c_, &h = o.d_;
  Rational r0 = a_ * e - b_ * f + 2 * (c_ * g - d_ * h);
  Rational i0 = a_ * f + b_ * e + 2 * (c_ * h + d_ * g);
  Rational r1 = a_ * g - b_ * h + c_ * e - d_ * f;
  Rational i1 = a_ * h + b_ * g + c_ * f + d_ * e;
  return FieldElement(std::move(r0), std::move(i0), std::move(r1),
                      std::move(i1));
}

FieldElement &FieldElement::operator+=(const FieldElement &o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

FieldElement &FieldElement::operator*=(const FieldElement &o) {
  *this = *this * o;
  return *this;
}

FieldElement FieldElement::conj() const {
  return FieldElement(a_, -b_, c_, -d_);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw UserError("division by zero in field");
  // x = g0 + g1 rt2; x * (g0 - g1 rt2) = g0^2 - 2 g1^2 =: n in Q(i).
  // n = 0 forces x = 0 because sqrt2 is not in Q(i).
  Rational n_re = a_ * a_ - b_ * b_ - 2 * (c_ * c_ - d_ * d_);
  Rational n_im = 2 * (a_ * b_ - 2 * c_ * d_);
  // 1/n = conj(n) / |n|^2 over Q(i).
  Rational n_abs2 = n_re * n_re + n_im * n_im;
  if (n_abs2 == 0) throw InternalError("field inverse: zero norm on nonzero element");
  Rational inv_re = n_re / n_abs2;
  Rational inv_im = -n_im / n_abs2;
  // (g0 - g1 rt2) * (inv_re + inv_im i), componentwise over {1, i, rt2, i rt2}.
  Rational ra = a_ * inv_re - b_ * inv_im;
  Rational rb = a_ * inv_im + b_ * inv_re;
  Rational rc = -(c_ * inv_re - d_ * inv_im);
  Rational rd = -(c_ * inv_im + d_ * inv_re);
  return FieldElement(std::move(ra), std::move(rb), std::move(rc),
                      std::move(rd));
}

FieldElement FieldElement::norm_squared() const { return *this * conj(); }

std::complex<double> FieldElement::to_complex() const {
  static const double rt2 = std::sqrt(2.0);
  return {a_.get_d() + c_.get_d() * rt2, b_.get_d() + d_.get_d() * rt2};
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << "(" << a_ << (b_ >= 0 ? "+" : "") << b_ << "i)";
  if (c_ != 0 || d_ != 0)
    os << "+(" << c_ << (d_ >= 0 ? "+" : "") << d_ << "i)rt2";
  return os.str();
}

namespace {
void digest_rational(DigestBuilder &b, const Rational &q) {
  b.add_string(q.get_num().get_str(16));
  b.add_string(q.get_den().get_str(16));
}
}  // namespace

Digest FieldElement::digest() const {
  DigestBuilder b;
  b.add_byte('F');
  digest_rational(b, a_);
  digest_rational(b, b_);
  digest_rational(b, c_);
  digest_rational(b, d_);
  return b.finish();
}

FieldElement field_pow(const FieldElement &x, long n) {
  if (n < 0) return field_pow(x.inverse(), -n);
  FieldElement acc = FieldElement::one();
  FieldElement base = x;
  unsigned long e = static_cast<unsigned long>(n);
  while (e != 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

UnitPoint unit_from_slope(const Rational &r) {
  Rational r2 = r * r;
  Rational den = 1 + r2;
  Rational re = (r2 - 1) / den;
  Rational im = (2 * r) / den;
  return UnitPoint{FieldElement(std::move(re), std::move(im), 0, 0)};
}

// ---------------------------------------------------------------------------
// Valuation

std::string VarId::to_string() const {
  switch (kind) {
    case VarKind::UnitAngle: return "u" + std::to_string(a);
    case VarKind::Basis:
      return "v[" + std::to_string(a) + "," + std::to_string(b) + "]";
    case VarKind::Phiu:
      return "phi^u" + std::to_string(a) + "(" + std::to_string(b) + ")";
  }
  return "?";
}

Valuation Valuation::sample(std::uint64_t seed, std::vector<VarId> spec) {
  std::sort(spec.begin(), spec.end());
  spec.erase(std::unique(spec.begin(), spec.end()), spec.end());
  Rng rng(seed);
  Valuation val;
  val.entries_.reserve(spec.size());
  for (const VarId &id : spec) {
    FieldElement value;
    if (id.kind == VarKind::UnitAngle) {
      // Slope drawn uniformly from 1..2^62; each slope is a distinct exact
      // point on the unit circle.
      std::uint64_t raw =
          (rng.next_u64() & ((1ULL << kUnitSlopeBits) - 1)) + 1;
      mpz_class slope;
      mpz_import(slope.get_mpz_t(), 1, 1, sizeof(raw), 0, 0, &raw);
      value = unit_from_slope(Rational(slope)).value;
    } else {
      // Nonzero Gaussian rational with 32-bit numerators/denominators.
      for (;;) {
        auto draw_part = [&rng]() {
          std::int64_t num =
              static_cast<std::int64_t>(rng.next_below(1ULL << 32)) -
              (1LL << 31);
          std::uint64_t den = rng.next_below(1ULL << 32) + 1;
          Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
          q.canonicalize();
          return q;
        };
        Rational re = draw_part();
        Rational im = draw_part();
        if (re == 0 && im == 0) continue;
        value = FieldElement(std::move(re), std::move(im), 0, 0);
        break;
      }
    }
    val.entries_.emplace_back(id, std::move(value));
  }
  return val;
}

Valuation Valuation::from_entries(
    std::vector<std::pair<VarId, FieldElement>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  Valuation val;
  val.entries_ = std::move(entries);
  return val;
}

std::size_t Valuation::index_of(const VarId &id) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const auto &e, const VarId &v) { return e.first < v; });
  if (it == entries_.end() || !(it->first == id))
    return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - entries_.begin());
}

bool Valuation::contains(const VarId &id) const {
  return index_of(id) != static_cast<std::size_t>(-1);
}

const FieldElement &Valuation::at(const VarId &id) const {
  std::size_t i = index_of(id);
  if (i == static_cast<std::size_t>(-1))
    throw InternalError("valuation missing variable " + id.to_string());
  return entries_[i].second;
}

void Valuation::precompute_powers(long max_abs_exp) {
  power_table_.assign(entries_.size(), {});
  neg_power_table_.assign(entries_.size(), {});
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto &pos = power_table_[i];
    pos.reserve(max_abs_exp + 1);
    pos.push_back(FieldElement::one());
    for (long e = 1; e <= max_abs_exp; ++e)
      pos.push_back(pos.back() * entries_[i].second);
    if (entries_[i].first.kind == VarKind::UnitAngle) {
      auto &neg = neg_power_table_[i];
      FieldElement conj = entries_[i].second.conj();
      neg.reserve(max_abs_exp + 1);
      neg.push_back(FieldElement::one());
      for (long e = 1; e <= max_abs_exp; ++e)
        neg.push_back(neg.back() * conj);
    }
  }
}

FieldElement Valuation::power(const VarId &id, long exp) const {
  std::size_t i = index_of(id);
  if (i == static_cast<std::size_t>(-1))
    throw InternalError("valuation missing variable " + id.to_string());
  if (exp < 0 && id.kind != VarKind::UnitAngle)
    throw InternalError("negative exponent on non-unit variable " +
                        id.to_string());
  if (i < power_table_.size()) {
    if (exp >= 0 && exp < static_cast<long>(power_table_[i].size()))
      return power_table_[i][exp];
    if (exp < 0 && -exp < static_cast<long>(neg_power_table_[i].size()))
      return neg_power_table_[i][-exp];
  }
  const FieldElement &v = entries_[i].second;
  if (exp >= 0) return field_pow(v, exp);
  // On the unit circle the inverse is the conjugate; stay exact and cheap.
  return field_pow(v.conj(), -exp);
}

}  // namespace queso
