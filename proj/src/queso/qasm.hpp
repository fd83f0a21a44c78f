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

#include "queso/circuit.hpp"

namespace queso {

/// Parse error with position information.
class QasmError : public UserError {
 public:
  QasmError(const std::string &msg, int line, int col)
      : UserError("qasm:" + std::to_string(line) + ":" + std::to_string(col) +
                  ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

/**
 * OpenQASM 2.0 subset: one qreg, optional cregs, applications of gates from
 * the active gate set, barriers, and trailing measurements. Angle
 * expressions support numbers, pi, + - * / and parentheses. Unknown gates,
 * syntax errors, and multiple qregs raise QasmError with line/column.
 */
ConcreteCircuit parse_qasm(const std::string &text, const GateSet &gs);
ConcreteCircuit parse_qasm_file(const std::string &path, const GateSet &gs);

/// Emits a circuit such that parse_qasm(emit_qasm(c)) is structurally equal
/// to c. Angles are printed with 17 significant digits.
std::string emit_qasm(const ConcreteCircuit &c);

}  // namespace queso
