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
//
// Guards the shipped data/ files against drifting from the built-in
// definitions they mirror.

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "queso/device.hpp"
#include "queso/gateset.hpp"

using namespace queso;

namespace {
std::string slurp(const std::string &path) {
  std::ifstream in(QUESO_SOURCE_DIR + ("/" + path), std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("shipped gate-set files match the built-ins") {
  for (const std::string &name : builtin_gateset_names()) {
    std::string file = slurp("data/gatesets/" + name + ".json");
    GateSet from_file = load_gateset(file);
    GateSet builtin = builtin_gateset(name);
    CHECK(from_file.name == builtin.name);
    REQUIRE(from_file.gates.size() == builtin.gates.size());
    for (std::size_t i = 0; i < builtin.gates.size(); ++i) {
      CHECK(from_file.gates[i].name == builtin.gates[i].name);
      CHECK(from_file.gates[i].arity == builtin.gates[i].arity);
      CHECK(from_file.gates[i].state == builtin.gates[i].state);
      CHECK(from_file.gates[i].branch_bits == builtin.gates[i].branch_bits);
    }
    CHECK(from_file.synth_params == builtin.synth_params);
  }
}

TEST_CASE("shipped device files match the built-ins") {
  for (const std::string &name : builtin_device_names()) {
    DeviceModel from_file = load_device(slurp("data/devices/" + name + ".json"));
    DeviceModel builtin = builtin_device(name);
    CHECK(from_file.name == builtin.name);
    CHECK(from_file.fidelity_1q == builtin.fidelity_1q);
    CHECK(from_file.fidelity_2q == builtin.fidelity_2q);
    CHECK(from_file.virtual_gates == builtin.virtual_gates);
  }
}
