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

#include "queso/synth.hpp"

namespace queso {

/// Versioned, self-describing text serialization of a rule list. Loading
/// verifies the format version and that the embedded gate-set id matches
/// the gate set in hand; rule order is preserved exactly.
std::string rules_to_text(const std::vector<RewriteRule> &rules,
                          const std::string &gate_set_name);
std::vector<RewriteRule> rules_from_text(const std::string &text,
                                         const GateSet &gs);

void save_rules(const std::vector<RewriteRule> &rules,
                const std::string &gate_set_name, const std::string &path);
std::vector<RewriteRule> load_rules(const std::string &path,
                                    const GateSet &gs);

}  // namespace queso
