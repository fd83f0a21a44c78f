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

#include "queso/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace queso {

// ---------------------------------------------------------------------------
// Anf

Anf Anf::one() {
  Anf a;
  a.monomials_.push_back({});
  return a;
}

Anf Anf::var(BitVar v) {
  Anf a;
  a.monomials_.push_back({v});
  return a;
}

bool Anf::is_one() const {
  return monomials_.size() == 1 && monomials_[0].empty();
}

Anf Anf::from_monomials(std::vector<std::vector<BitVar>> monos) {
  std::sort(monos.begin(), monos.end());
  // xor semantics: drop pairs of equal monomials
  std::vector<std::vector<BitVar>> out;
  for (std::size_t i = 0; i < monos.size();) {
    std::size_t j = i;
    while (j < monos.size() && monos[j] == monos[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(monos[i]);
    i = j;
  }
  Anf a;
  a.monomials_ = std::move(out);
  return a;
}

Anf Anf::operator^(const Anf &o) const {
  std::vector<std::vector<BitVar>> all = monomials_;
  all.insert(all.end(), o.monomials_.begin(), o.monomials_.end());
  return from_monomials(std::move(all));
}

Anf Anf::operator*(const Anf &o) const {
  std::vector<std::vector<BitVar>> all;
  all.reserve(monomials_.size() * o.monomials_.size());
  for (const auto &m1 : monomials_) {
    for (const auto &m2 : o.monomials_) {
      std::vector<BitVar> merged;
      merged.reserve(m1.size() + m2.size());
      std::set_union(m1.begin(), m1.end(), m2.begin(), m2.end(),
                     std::back_inserter(merged));
      all.push_back(std::move(merged));
    }
  }
  return from_monomials(std::move(all));
}

int Anf::degree() const {
  if (monomials_.empty()) return -1;
  int d = 0;
  for (const auto &m : monomials_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

void Anf::collect_vars(std::set<BitVar> &out) const {
  for (const auto &m : monomials_)
    for (BitVar v : m) out.insert(v);
}

Anf Anf::substitute(const std::map<BitVar, Anf> &subst) const {
  Anf acc = Anf::zero();
  for (const auto &mono : monomials_) {
    Anf prod = Anf::one();
    for (BitVar v : mono) {
      auto it = subst.find(v);
      prod = prod * (it != subst.end() ? it->second : Anf::var(v));
      if (prod.is_zero()) break;
    }
    acc = acc ^ prod;
  }
  return acc;
}

std::string Anf::to_string() const {
  if (monomials_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &m : monomials_) {
    if (!first) os << "^";
    first = false;
    if (m.empty()) {
      os << "1";
      continue;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) os << ".";
      os << "b" << m[i];
    }
  }
  return os.str();
}

void Anf::add_to_digest(DigestBuilder &b) const {
  b.add_u64(monomials_.size());
  for (const auto &m : monomials_) {
    b.add_u64(m.size());
    for (BitVar v : m) b.add_i64(v);
  }
}

// ---------------------------------------------------------------------------
// Amplitude algebra

AmpTerm amp_term_mul(const AmpTerm &x, const AmpTerm &y) {
  AmpTerm out;
  out.coeff = x.coeff * y.coeff;
  out.sqrt2_exp = x.sqrt2_exp + y.sqrt2_exp;
  out.angle = x.angle;
  out.angle.insert(out.angle.end(), y.angle.begin(), y.angle.end());
  out.phiu = x.phiu;
  out.phiu.insert(out.phiu.end(), y.phiu.begin(), y.phiu.end());
  return out;
}

AmpExpr amp_mul(const AmpExpr &x, const AmpExpr &y) {
  AmpExpr out;
  out.reserve(x.size() * y.size());
  for (const auto &tx : x)
    for (const auto &ty : y) out.push_back(amp_term_mul(tx, ty));
  return out;
}

AngleExpr angle_substitute(const AngleExpr &e,
                           const std::map<BitVar, Anf> &subst) {
  AngleExpr out;
  out.reserve(e.size());
  for (const AngleTerm &t : e) {
    AngleTerm nt;
    nt.coeff = t.coeff;
    nt.sym = t.sym;
    nt.bit_factors.reserve(t.bit_factors.size());
    for (const Anf &f : t.bit_factors)
      nt.bit_factors.push_back(f.substitute(subst));
    out.push_back(std::move(nt));
  }
  return out;
}

AmpExpr amp_substitute(const AmpExpr &e, const std::map<BitVar, Anf> &subst) {
  AmpExpr out;
  out.reserve(e.size());
  for (const AmpTerm &t : e) {
    AmpTerm nt;
    nt.coeff = t.coeff;
    nt.sqrt2_exp = t.sqrt2_exp;
    nt.angle = angle_substitute(t.angle, subst);
    nt.phiu.reserve(t.phiu.size());
    for (const PhiuApp &app : t.phiu) {
      PhiuApp na;
      na.gate_occurrence = app.gate_occurrence;
      na.args.reserve(app.args.size());
      for (const Anf &a : app.args) na.args.push_back(a.substitute(subst));
      nt.phiu.push_back(std::move(na));
    }
    out.push_back(std::move(nt));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Prefix expression parser.
//
// amplitude ::= sum | prod | atom
// sum       ::= (+ e e ...)
// prod      ::= (* e e ...)
// atom      ::= RATIONAL | i | (rt2 INT) | (expi angle)
// angle     ::= aterm | (+ aterm ...)
// aterm     ::= SYMBOL | (* RATIONAL? SYMBOL bit ...)     SYMBOL: pi | tK
// bit       ::= xK | yK | 0 | 1 | (xor bit ...) | (and bit ...) | (not bit)

namespace {

struct Tok {
  enum Kind { LParen, RParen, Sym, End } kind;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string &s) : s_(s) {}
  Tok next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ >= s_.size()) return {Tok::End, ""};
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      return {Tok::LParen, "("};
    }
    if (c == ')') {
      ++pos_;
      return {Tok::RParen, ")"};
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    return {Tok::Sym, s_.substr(start, pos_ - start)};
  }
  Tok peek() {
    std::size_t save = pos_;
    Tok t = next();
    pos_ = save;
    return t;
  }

 private:
  const std::string &s_;
  std::size_t pos_ = 0;
};

bool is_rational_token(const std::string &t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-') ? 1 : 0;
  if (i >= t.size()) return false;
  bool seen_slash = false;
  for (; i < t.size(); ++i) {
    if (t[i] == '/' && !seen_slash && i + 1 < t.size()) {
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  }
  return true;
}

class ExprParser {
 public:
  ExprParser(const std::string &text, int arity, int num_params,
             int branch_bits)
      : lex_(text), arity_(arity), num_params_(num_params),
        branch_bits_(branch_bits) {}

  AmpExpr parse_amplitude() {
    AmpExpr e = parse_amp();
    expect_end();
    return e;
  }

  Anf parse_bit_top() {
    Anf a = parse_bit(lex_.next());
    expect_end();
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string &msg) {
    throw UserError("expression syntax error: " + msg);
  }

  void expect_end() {
    if (lex_.next().kind != Tok::End) fail("trailing tokens");
  }

  BitVar bit_var(const std::string &t) {
    if (t.size() >= 2 && (t[0] == 'x' || t[0] == 'y')) {
      int idx = 0;
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) fail("bad bit " + t);
        idx = idx * 10 + (t[i] - '0');
      }
      if (t[0] == 'x') {
        if (idx >= arity_) fail("input bit out of range: " + t);
        return input_bit(idx);
      }
      if (idx >= branch_bits_) fail("branch bit out of range: " + t);
      return branch_bit(idx);
    }
    fail("expected bit variable, got " + t);
  }

  Anf parse_bit(Tok t) {
    if (t.kind == Tok::Sym) {
      if (t.text == "0") return Anf::zero();
      if (t.text == "1") return Anf::one();
      return Anf::var(bit_var(t.text));
    }
    if (t.kind != Tok::LParen) fail("expected bit expression");
    Tok op = lex_.next();
    if (op.kind != Tok::Sym) fail("expected operator");
    std::vector<Anf> args;
    while (lex_.peek().kind != Tok::RParen) {
      if (lex_.peek().kind == Tok::End) fail("unclosed (");
      args.push_back(parse_bit(lex_.next()));
    }
    lex_.next();  // ')'
    if (op.text == "xor") {
      Anf acc = Anf::zero();
      for (const Anf &a : args) acc = acc ^ a;
      return acc;
    }
    if (op.text == "and") {
      Anf acc = Anf::one();
      for (const Anf &a : args) acc = acc * a;
      return acc;
    }
    if (op.text == "not") {
      if (args.size() != 1) fail("not takes one argument");
      return args[0].negated();
    }
    fail("unknown bit operator " + op.text);
  }

  int angle_symbol(const std::string &t) {
    if (t == "pi") return kAnglePi;
    if (t.size() >= 2 && t[0] == 't') {
      int idx = std::stoi(t.substr(1));
      if (idx < 1 || idx > num_params_)
        fail("parameter out of range: " + t);
      return idx - 1;  // t1 is theta index 0
    }
    fail("expected pi or parameter, got " + t);
  }

  AngleTerm parse_angle_term(Tok t) {
    AngleTerm term;
    term.coeff = 1;
    if (t.kind == Tok::Sym) {
      term.sym = angle_symbol(t.text);
      return term;
    }
    if (t.kind != Tok::LParen) fail("expected angle term");
    Tok op = lex_.next();
    if (op.kind != Tok::Sym || op.text != "*") fail("angle term must be (* ...)");
    bool have_sym = false;
    while (lex_.peek().kind != Tok::RParen) {
      Tok a = lex_.peek();
      if (a.kind == Tok::End) fail("unclosed (");
      if (a.kind == Tok::Sym && is_rational_token(a.text)) {
        lex_.next();
        term.coeff *= parse_rational(a.text);
        continue;
      }
      if (a.kind == Tok::Sym && (a.text == "pi" || a.text[0] == 't') &&
          !have_sym && a.text != "t" &&
          (a.text == "pi" || std::isdigit(static_cast<unsigned char>(a.text[1])))) {
        lex_.next();
        term.sym = angle_symbol(a.text);
        have_sym = true;
        continue;
      }
      term.bit_factors.push_back(parse_bit(lex_.next()));
    }
    lex_.next();  // ')'
    if (!have_sym) fail("angle term needs pi or a parameter");
    return term;
  }

  AngleExpr parse_angle(Tok t) {
    if (t.kind == Tok::LParen) {
      Tok op = lex_.peek();
      if (op.kind == Tok::Sym && op.text == "+") {
        lex_.next();  // '+'
        AngleExpr e;
        while (lex_.peek().kind != Tok::RParen) {
          if (lex_.peek().kind == Tok::End) fail("unclosed (");
          e.push_back(parse_angle_term(lex_.next()));
        }
        lex_.next();  // ')'
        return e;
      }
    }
    return {parse_angle_term(t)};
  }

  AmpExpr parse_amp() { return parse_amp_node(lex_.next()); }

  AmpExpr parse_amp_node(Tok t) {
    if (t.kind == Tok::Sym) {
      AmpTerm term;
      if (is_rational_token(t.text)) {
        term.coeff = FieldElement::from_rational(parse_rational(t.text));
      } else if (t.text == "i") {
        term.coeff = FieldElement::imag_unit();
      } else {
        fail("unexpected amplitude atom " + t.text);
      }
      return {term};
    }
    if (t.kind != Tok::LParen) fail("expected amplitude expression");
    Tok op = lex_.next();
    if (op.kind != Tok::Sym) fail("expected operator");
    if (op.text == "+") {
      AmpExpr sum;
      while (lex_.peek().kind != Tok::RParen) {
        if (lex_.peek().kind == Tok::End) fail("unclosed (");
        AmpExpr part = parse_amp_node(lex_.next());
        sum.insert(sum.end(), part.begin(), part.end());
      }
      lex_.next();
      return sum;
    }
    if (op.text == "*") {
      AmpExpr prod = {AmpTerm{}};
      while (lex_.peek().kind != Tok::RParen) {
        if (lex_.peek().kind == Tok::End) fail("unclosed (");
        prod = amp_mul(prod, parse_amp_node(lex_.next()));
      }
      lex_.next();
      return prod;
    }
    if (op.text == "rt2") {
      Tok k = lex_.next();
      if (k.kind != Tok::Sym || !is_rational_token(k.text))
        fail("rt2 takes an integer exponent");
      if (lex_.next().kind != Tok::RParen) fail("rt2 takes one argument");
      AmpTerm term;
      term.sqrt2_exp = std::stoi(k.text);
      return {term};
    }
    if (op.text == "expi") {
      AngleExpr angle = parse_angle(lex_.next());
      if (lex_.next().kind != Tok::RParen) fail("expi takes one argument");
      AmpTerm term;
      term.angle = std::move(angle);
      return {term};
    }
    fail("unknown amplitude operator " + op.text);
  }

  Lexer lex_;
  int arity_;
  int num_params_;
  int branch_bits_;
};

}  // namespace

AmpExpr parse_amp_expr(const std::string &text, int arity, int num_params,
                       int branch_bits) {
  ExprParser p(text, arity, num_params, branch_bits);
  return p.parse_amplitude();
}

Anf parse_bit_expr(const std::string &text, int arity, int branch_bits) {
  ExprParser p(text, arity, 0, branch_bits);
  return p.parse_bit_top();
}

}  // namespace queso
