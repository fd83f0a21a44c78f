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

#include <map>
#include <set>

#include "queso/circuit.hpp"

namespace queso {

/**
 * Static error model: per-gate-class success probabilities. Virtual gates
 * (software phase rotations) contribute a factor of exactly 1.
 */
struct DeviceModel {
  std::string name;
  double fidelity_1q = -1;  // negative = unset
  double fidelity_2q = -1;
  std::set<std::string> virtual_gates;           // by gate name
  std::map<std::string, double> gate_overrides;  // by gate name

  /// Fidelity factor of one gate; throws UserError for an unclassified
  /// gate (no override and no default for its wire count).
  double gate_fidelity(const GateInstance &g) const;
};

/// Product over gates of (1 - error rate); fences are free; the empty
/// circuit has fidelity exactly 1.
double circuit_fidelity(const ConcreteCircuit &c, const DeviceModel &model);

/// JSON loader, schema "queso.device.v1".
DeviceModel load_device(const std::string &json_text);
DeviceModel load_device_file(const std::string &path);

/// Built-in models: "ibm-toronto", "rigetti-aspen11", "ionq-aria".
const std::vector<std::string> &builtin_device_names();
DeviceModel builtin_device(const std::string &name);
std::string builtin_device_json(const std::string &name);

}  // namespace queso
