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

#include "queso/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace queso {

namespace {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind = End;
  std::string text;
  int line = 1;
  int col = 1;
};

class QasmLexer {
 public:
  explicit QasmLexer(const std::string &src) : src_(src) {}

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        t.text += advance();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      t.kind = Token::Number;
      bool seen_e = false;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '.') {
          t.text += advance();
        } else if ((d == 'e' || d == 'E') && !seen_e) {
          seen_e = true;
          t.text += advance();
          if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
            t.text += advance();
        } else {
          break;
        }
      }
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      t.kind = Token::Punct;
      t.text = "->";
      advance();
      advance();
      return t;
    }
    t.kind = Token::Punct;
    t.text = advance();
    return t;
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws_and_comments() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_])))
        advance();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      return;
    }
  }

  const std::string &src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class QasmParser {
 public:
  QasmParser(const std::string &src, const GateSet &gs) : lex_(src), gs_(gs) {
    advance();
  }

  ConcreteCircuit parse() {
    expect_ident("OPENQASM");
    expect_number();  // version, e.g. 2.0
    expect_punct(";");
    while (cur_.kind != Token::End) parse_statement();
    if (!saw_qreg_) fail("missing qreg declaration");
    return std::move(circ_);
  }

 private:
  [[noreturn]] void fail(const std::string &msg) {
    throw QasmError(msg, cur_.line, cur_.col);
  }

  void advance() { cur_ = lex_.next(); }

  void expect_punct(const std::string &p) {
    if (cur_.kind != Token::Punct || cur_.text != p)
      fail("expected '" + p + "', got '" + cur_.text + "'");
    advance();
  }

  std::string expect_ident(const char *what = nullptr) {
    if (cur_.kind != Token::Ident)
      fail(std::string("expected ") + (what ? what : "identifier"));
    if (what && cur_.text != what)
      fail(std::string("expected ") + what + ", got '" + cur_.text + "'");
    std::string t = cur_.text;
    advance();
    return t;
  }

  double expect_number() {
    if (cur_.kind != Token::Number) fail("expected number");
    double v = std::stod(cur_.text);
    advance();
    return v;
  }

  int expect_index() {
    expect_punct("[");
    if (cur_.kind != Token::Number) fail("expected index");
    int idx = std::stoi(cur_.text);
    advance();
    expect_punct("]");
    return idx;
  }

  void parse_statement() {
    if (cur_.kind == Token::Ident && cur_.text == "include") {
      advance();
      if (cur_.kind != Token::Punct || cur_.text != "\"")
        fail("expected include filename");
      // consume "...": tokens until closing quote
      advance();
      while (!(cur_.kind == Token::Punct && cur_.text == "\"")) {
        if (cur_.kind == Token::End) fail("unterminated include");
        advance();
      }
      advance();
      expect_punct(";");
      return;
    }
    if (cur_.kind == Token::Ident && cur_.text == "qreg") {
      advance();
      if (saw_qreg_) fail("multiple qreg declarations are not supported");
      saw_qreg_ = true;
      circ_.qreg_name = expect_ident();
      circ_.num_qubits = expect_index();
      expect_punct(";");
      return;
    }
    if (cur_.kind == Token::Ident && cur_.text == "creg") {
      advance();
      circ_.creg_name = expect_ident();
      circ_.num_clbits = expect_index();
      expect_punct(";");
      return;
    }
    if (cur_.kind == Token::Ident && cur_.text == "barrier") {
      advance();
      GateInstance g;
      g.fence = FenceKind::Barrier;
      g.qubits = parse_qubit_list(/*allow_whole_reg=*/true);
      expect_punct(";");
      circ_.gates.push_back(std::move(g));
      return;
    }
    if (cur_.kind == Token::Ident && cur_.text == "measure") {
      advance();
      GateInstance g;
      g.fence = FenceKind::Measure;
      g.qubits.push_back(parse_single_qubit());
      expect_punct("->");
      expect_ident();
      g.measure_target = expect_index();
      expect_punct(";");
      circ_.gates.push_back(std::move(g));
      return;
    }
    if (cur_.kind != Token::Ident) fail("expected statement");
    // gate application
    Token name_tok = cur_;
    std::string name = expect_ident();
    std::vector<double> angles;
    if (cur_.kind == Token::Punct && cur_.text == "(") {
      advance();
      if (!(cur_.kind == Token::Punct && cur_.text == ")")) {
        angles.push_back(parse_angle_expr());
        while (cur_.kind == Token::Punct && cur_.text == ",") {
          advance();
          angles.push_back(parse_angle_expr());
        }
      }
      expect_punct(")");
    }
    const GateDef *def = gs_.resolve_qasm(name, angles);
    if (!def)
      throw QasmError("gate '" + name + "' with " +
                          std::to_string(angles.size()) +
                          " angle(s) is not in gate set '" + gs_.name + "'",
                      name_tok.line, name_tok.col);
    GateInstance g;
    g.def = def;
    if (def->fixed_angle_pi.has_value()) angles.clear();
    g.angles = std::move(angles);
    g.qubits = parse_qubit_list(false);
    if (static_cast<int>(g.qubits.size()) != def->arity)
      fail("gate " + name + " expects " + std::to_string(def->arity) +
           " qubit argument(s)");
    for (std::size_t i = 0; i < g.qubits.size(); ++i)
      for (std::size_t j = i + 1; j < g.qubits.size(); ++j)
        if (g.qubits[i] == g.qubits[j]) fail("repeated qubit argument");
    expect_punct(";");
    circ_.gates.push_back(std::move(g));
  }

  int parse_single_qubit() {
    std::string reg = expect_ident();
    if (reg != circ_.qreg_name) fail("unknown register " + reg);
    int idx = expect_index();
    if (idx < 0 || idx >= circ_.num_qubits) fail("qubit index out of range");
    return idx;
  }

  std::vector<int> parse_qubit_list(bool allow_whole_reg) {
    std::vector<int> out;
    for (;;) {
      std::string reg = expect_ident();
      if (reg != circ_.qreg_name) fail("unknown register " + reg);
      if (cur_.kind == Token::Punct && cur_.text == "[") {
        int idx = expect_index();
        if (idx < 0 || idx >= circ_.num_qubits) fail("qubit index out of range");
        out.push_back(idx);
      } else if (allow_whole_reg) {
        for (int i = 0; i < circ_.num_qubits; ++i) out.push_back(i);
      } else {
        fail("expected qubit index");
      }
      if (cur_.kind == Token::Punct && cur_.text == ",") {
        advance();
        continue;
      }
      return out;
    }
  }

  // angle := sum of products with numbers, pi, parens, unary minus
  double parse_angle_expr() { return parse_sum(); }

  double parse_sum() {
    double v = parse_product();
    while (cur_.kind == Token::Punct && (cur_.text == "+" || cur_.text == "-")) {
      bool plus = cur_.text == "+";
      advance();
      double r = parse_product();
      v = plus ? v + r : v - r;
    }
    return v;
  }

  double parse_product() {
    double v = parse_unary();
    while (cur_.kind == Token::Punct && (cur_.text == "*" || cur_.text == "/")) {
      bool mul = cur_.text == "*";
      advance();
      double r = parse_unary();
      v = mul ? v * r : v / r;
    }
    return v;
  }

  double parse_unary() {
    if (cur_.kind == Token::Punct && cur_.text == "-") {
      advance();
      return -parse_unary();
    }
    if (cur_.kind == Token::Punct && cur_.text == "+") {
      advance();
      return parse_unary();
    }
    if (cur_.kind == Token::Punct && cur_.text == "(") {
      advance();
      double v = parse_sum();
      expect_punct(")");
      return v;
    }
    if (cur_.kind == Token::Ident && cur_.text == "pi") {
      advance();
      return M_PI;
    }
    if (cur_.kind == Token::Number) return expect_number();
    fail("expected angle expression");
  }

  QasmLexer lex_;
  const GateSet &gs_;
  Token cur_;
  ConcreteCircuit circ_;
  bool saw_qreg_ = false;
};

}  // namespace

ConcreteCircuit parse_qasm(const std::string &text, const GateSet &gs) {
  QasmParser p(text, gs);
  return p.parse();
}

ConcreteCircuit parse_qasm_file(const std::string &path, const GateSet &gs) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_qasm(ss.str(), gs);
}

std::string emit_qasm(const ConcreteCircuit &c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg " << c.qreg_name << "[" << c.num_qubits << "];\n";
  if (c.num_clbits > 0)
    os << "creg " << c.creg_name << "[" << c.num_clbits << "];\n";
  char buf[64];
  for (const GateInstance &g : c.gates) {
    if (g.fence == FenceKind::Barrier) {
      os << "barrier";
      for (std::size_t i = 0; i < g.qubits.size(); ++i)
        os << (i ? "," : " ") << c.qreg_name << "[" << g.qubits[i] << "]";
      os << ";\n";
      continue;
    }
    if (g.fence == FenceKind::Measure) {
      os << "measure " << c.qreg_name << "[" << g.qubits[0] << "] -> "
         << c.creg_name << "[" << g.measure_target << "];\n";
      continue;
    }
    os << g.def->qasm_name;
    if (g.def->fixed_angle_pi.has_value()) {
      const Rational &f = *g.def->fixed_angle_pi;
      os << "(";
      if (f < 0) os << "-";
      Rational a = f < 0 ? Rational(-f) : f;
      if (a.get_num() != 1) os << a.get_num().get_str() << "*";
      os << "pi";
      if (a.get_den() != 1) os << "/" << a.get_den().get_str();
      os << ")";
    } else if (!g.angles.empty()) {
      os << "(";
      for (std::size_t i = 0; i < g.angles.size(); ++i) {
        if (i) os << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", g.angles[i]);
        os << buf;
      }
      os << ")";
    }
    for (std::size_t i = 0; i < g.qubits.size(); ++i)
      os << (i ? "," : " ") << c.qreg_name << "[" << g.qubits[i] << "]";
    os << ";\n";
  }
  return os.str();
}

}  // namespace queso
