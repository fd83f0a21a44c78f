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

#include "queso/rulefile.hpp"

#include <fstream>
#include <sstream>

namespace queso {

std::string rules_to_text(const std::vector<RewriteRule> &rules,
                          const std::string &gate_set_name) {
  std::ostringstream os;
  os << "queso-rules 1\n";
  os << "gateset " << gate_set_name << "\n";
  os << "rules " << rules.size() << "\n";
  for (const RewriteRule &r : rules) {
    os << "rule " << (r.symbolic ? "symbolic" : "plain") << " "
       << (r.size_preserving ? "preserving" : "reducing") << "\n";
    if (r.symbolic) os << "interp: " << r.interp.to_string() << "\n";
    os << "lhs: " << r.lhs.to_text() << "\n";
    os << "rhs: " << r.rhs.to_text() << "\n";
  }
  return os.str();
}

namespace {

Interpretation parse_interp(const std::string &text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw UserError("malformed interpretation: " + text);
  Interpretation interp;
  interp.arity = std::stoi(text.substr(0, colon));
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    interp.table.push_back(
        static_cast<std::uint8_t>(std::stoi(rest.substr(pos, comma - pos))));
    pos = comma + 1;
  }
  if (static_cast<int>(interp.table.size()) != (1 << interp.arity))
    throw UserError("interpretation table size mismatch: " + text);
  std::vector<bool> hit(interp.table.size(), false);
  for (std::uint8_t v : interp.table) {
    if (v >= interp.table.size() || hit[v])
      throw UserError("interpretation is not a bijection: " + text);
    hit[v] = true;
  }
  return interp;
}

std::string strip(const std::string &s) {
  auto l = s.find_first_not_of(" \t\r");
  if (l == std::string::npos) return "";
  auto r = s.find_last_not_of(" \t\r");
  return s.substr(l, r - l + 1);
}

}  // namespace

std::vector<RewriteRule> rules_from_text(const std::string &text,
                                         const GateSet &gs) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || strip(line) != "queso-rules 1")
    throw UserError("rule file: unknown format/version (expected queso-rules 1)");
  if (!std::getline(is, line) || line.rfind("gateset ", 0) != 0)
    throw UserError("rule file: missing gateset header");
  std::string name = strip(line.substr(8));
  if (name != gs.name)
    throw UserError("rule file is for gate set '" + name +
                    "' but the active gate set is '" + gs.name + "'");
  if (!std::getline(is, line) || line.rfind("rules ", 0) != 0)
    throw UserError("rule file: missing rules count");
  std::size_t count = std::stoul(strip(line.substr(6)));

  std::vector<RewriteRule> rules;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(is, line) || line.rfind("rule ", 0) != 0)
      throw UserError("rule file: truncated at rule " + std::to_string(i));
    std::istringstream head(line.substr(5));
    std::string kind, klass;
    head >> kind >> klass;
    RewriteRule r;
    r.gate_set = gs.name;
    r.symbolic = (kind == "symbolic");
    if (!r.symbolic && kind != "plain")
      throw UserError("rule file: bad rule kind " + kind);
    r.size_preserving = (klass == "preserving");
    if (r.symbolic) {
      if (!std::getline(is, line) || line.rfind("interp: ", 0) != 0)
        throw UserError("rule file: symbolic rule missing interpretation");
      r.interp = parse_interp(strip(line.substr(8)));
    }
    if (!std::getline(is, line) || line.rfind("lhs: ", 0) != 0)
      throw UserError("rule file: missing lhs");
    r.lhs = parse_pattern(strip(line.substr(5)), gs);
    if (!std::getline(is, line) || line.rfind("rhs: ", 0) != 0)
      throw UserError("rule file: missing rhs");
    r.rhs = parse_pattern(strip(line.substr(5)), gs);
    // symbolic rules share one wire namespace: widen to the larger side
    int width = std::max(r.lhs.num_qubits, r.rhs.num_qubits);
    r.lhs.num_qubits = width;
    r.rhs.num_qubits = width;
    int params = std::max(r.lhs.num_params, r.rhs.num_params);
    r.lhs.num_params = params;
    r.rhs.num_params = params;
    rules.push_back(std::move(r));
  }
  return rules;
}

void save_rules(const std::vector<RewriteRule> &rules,
                const std::string &gate_set_name, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UserError("cannot write " + path);
  out << rules_to_text(rules, gate_set_name);
}

std::vector<RewriteRule> load_rules(const std::string &path,
                                    const GateSet &gs) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open rule file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return rules_from_text(ss.str(), gs);
}

}  // namespace queso
