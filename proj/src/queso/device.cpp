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

#include "queso/device.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace queso {

double DeviceModel::gate_fidelity(const GateInstance &g) const {
  if (g.is_fence()) return 1.0;
  const std::string &name = g.def->name;
  if (virtual_gates.count(name)) return 1.0;
  auto it = gate_overrides.find(name);
  if (it != gate_overrides.end()) return it->second;
  double f = g.def->arity == 1 ? fidelity_1q : fidelity_2q;
  if (f < 0)
    throw UserError("device model '" + name + "' does not classify gate " +
                    name);
  return f;
}

double circuit_fidelity(const ConcreteCircuit &c, const DeviceModel &model) {
  double f = 1.0;
  for (const GateInstance &g : c.gates) f *= model.gate_fidelity(g);
  return f;
}

DeviceModel load_device(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw UserError(std::string("device file is not valid JSON: ") + e.what());
  }
  if (j.value("schema", "") != "queso.device.v1")
    throw UserError("device file schema must be queso.device.v1");
  DeviceModel m;
  m.name = j.at("name").get<std::string>();
  if (j.contains("fidelity_1q")) m.fidelity_1q = j.at("fidelity_1q").get<double>();
  if (j.contains("fidelity_2q")) m.fidelity_2q = j.at("fidelity_2q").get<double>();
  if (j.contains("virtual"))
    for (const auto &v : j.at("virtual"))
      m.virtual_gates.insert(v.get<std::string>());
  if (j.contains("gates"))
    for (auto it = j.at("gates").begin(); it != j.at("gates").end(); ++it)
      m.gate_overrides[it.key()] = it.value().get<double>();
  for (const auto &[k, v] : m.gate_overrides)
    if (v < 0.0 || v > 1.0)
      throw UserError("device fidelity out of [0,1] for gate " + k);
  return m;
}

DeviceModel load_device_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open device file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_device(ss.str());
}

namespace {

// Success probabilities published for the three reference devices; phase
// rotations are implemented in software on all of them.
const char *kToronto = R"JSON({
  "schema": "queso.device.v1",
  "name": "ibm-toronto",
  "fidelity_1q": 0.999606,
  "fidelity_2q": 0.98719,
  "virtual": ["rz", "u1"]
})JSON";

const char *kAspen11 = R"JSON({
  "schema": "queso.device.v1",
  "name": "rigetti-aspen11",
  "fidelity_1q": 0.998,
  "fidelity_2q": 0.902,
  "virtual": ["rz"]
})JSON";

const char *kAria = R"JSON({
  "schema": "queso.device.v1",
  "name": "ionq-aria",
  "fidelity_1q": 0.9995,
  "fidelity_2q": 0.996,
  "virtual": ["rz"]
})JSON";

}  // namespace

const std::vector<std::string> &builtin_device_names() {
  static const std::vector<std::string> names = {"ibm-toronto",
                                                 "rigetti-aspen11", "ionq-aria"};
  return names;
}

std::string builtin_device_json(const std::string &name) {
  if (name == "ibm-toronto") return kToronto;
  if (name == "rigetti-aspen11") return kAspen11;
  if (name == "ionq-aria") return kAria;
  throw UserError("unknown built-in device model: " + name);
}

DeviceModel builtin_device(const std::string &name) {
  return load_device(builtin_device_json(name));
}

}  // namespace queso
