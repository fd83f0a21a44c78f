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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string &args) {
  std::string cmd = std::string(QUESO_BIN) + " " + args + " 2>&1";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof(buf), pipe)) out += buf;
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string tmp_path(const std::string &name) {
  return std::string("cli_tmp_") + name;
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("synth is deterministic and honors --max-size 0") {
  std::string rules = tmp_path("a.rules");
  std::string manifest = tmp_path("a.manifest.json");
  auto r1 = run("synth --gateset nam --max-qubits 2 --max-size 2 --seed 7 "
                "--jobs 1 --out " + rules + " --manifest " + manifest);
  CHECK(r1.exit_code == 0);
  std::string bytes1 = read_file(rules);

  auto r2 = run("synth --gateset nam --max-qubits 2 --max-size 2 --seed 7 "
                "--jobs 2 --out " + rules + " --manifest " + manifest);
  CHECK(r2.exit_code == 0);
  CHECK(read_file(rules) == bytes1);  // byte-identical across job counts

  // rerunning from the manifest snapshot reproduces the output exactly
  auto r3 = run("synth --config " + manifest + " --out " + rules);
  CHECK(r3.exit_code == 0);
  CHECK(read_file(rules) == bytes1);

  std::string empty_rules = tmp_path("empty.rules");
  auto r4 = run("synth --gateset nam --max-qubits 2 --max-size 0 --seed 7 "
                "--json --out " + empty_rules + " --manifest " + manifest);
  CHECK(r4.exit_code == 0);
  auto j = nlohmann::json::parse(r4.output);
  CHECK(j["rules"] == 0);
}

TEST_CASE("optimize reports costs and respects gate-set identity") {
  std::string rules = tmp_path("b.rules");
  std::string manifest = tmp_path("b.manifest.json");
  auto synth = run("synth --gateset nam --max-qubits 2 --max-size 3 --seed 7 "
                   "--out " + rules + " --manifest " + manifest);
  REQUIRE(synth.exit_code == 0);

  write_file(tmp_path("hh.qasm"),
             "OPENQASM 2.0;\nqreg q[1];\nh q[0];\nh q[0];\n");
  auto opt = run("optimize --gateset nam --rules " + rules + " --circuit " +
                 tmp_path("hh.qasm") + " --out " + tmp_path("hh_opt.qasm") +
                 " --json --manifest " + manifest);
  CHECK(opt.exit_code == 0);
  auto j = nlohmann::json::parse(opt.output);
  CHECK(j["gates_before"] == 2);
  CHECK(j["gates_after"] == 0);

  // wrong gate set: the rule file embeds its gate-set id
  auto wrong = run("optimize --gateset ibm --rules " + rules + " --circuit " +
                   tmp_path("hh.qasm") + " --out " + tmp_path("no.qasm") +
                   " --manifest " + manifest);
  CHECK(wrong.exit_code == 1);
  CHECK(wrong.output.find("gate set") != std::string::npos);
}

TEST_CASE("optimize honors a tiny timeout without crashing") {
  std::string rules = tmp_path("c.rules");
  std::string manifest = tmp_path("c.manifest.json");
  REQUIRE(run("synth --gateset nam --max-qubits 1 --max-size 2 --seed 7 "
              "--no-symbolic --out " + rules + " --manifest " + manifest)
              .exit_code == 0);
  std::string body = "OPENQASM 2.0;\nqreg q[1];\n";
  for (int i = 0; i < 40; ++i) body += "rz(0.01) q[0];\n";
  write_file(tmp_path("long.qasm"), body);
  auto opt = run("optimize --gateset nam --rules " + rules + " --circuit " +
                 tmp_path("long.qasm") + " --out " + tmp_path("long_opt.qasm") +
                 " --timeout 1 --json --manifest " + manifest);
  CHECK(opt.exit_code == 0);
  auto j = nlohmann::json::parse(opt.output);
  CHECK(j["gates_after"] <= j["gates_before"]);
}

TEST_CASE("verify prints verdicts for the reference pairs") {
  write_file(tmp_path("v_hh.qasm"),
             "OPENQASM 2.0;\nqreg q[1];\nh q[0];\nh q[0];\n");
  write_file(tmp_path("v_id.qasm"), "OPENQASM 2.0;\nqreg q[1];\n");
  write_file(tmp_path("v_h.qasm"), "OPENQASM 2.0;\nqreg q[1];\nh q[0];\n");
  write_file(tmp_path("v_x.qasm"), "OPENQASM 2.0;\nqreg q[1];\nx q[0];\n");
  // Fig 1b pair
  write_file(tmp_path("v_cxx.qasm"),
             "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\nx q[0];\nx q[1];\n");
  write_file(tmp_path("v_xcx.qasm"),
             "OPENQASM 2.0;\nqreg q[2];\nx q[0];\ncx q[0],q[1];\n");
  std::string manifest = " --manifest " + tmp_path("v.manifest.json");

  auto eq = run("verify --gateset nam --json " + tmp_path("v_hh.qasm") + " " +
                tmp_path("v_id.qasm") + manifest);
  CHECK(eq.exit_code == 0);
  CHECK(nlohmann::json::parse(eq.output)["equivalent"] == true);

  auto ne = run("verify --gateset nam --json " + tmp_path("v_h.qasm") + " " +
                tmp_path("v_x.qasm") + manifest);
  CHECK(ne.exit_code == 0);
  CHECK(nlohmann::json::parse(ne.output)["equivalent"] == false);

  auto fig1b = run("verify --gateset nam --json " + tmp_path("v_cxx.qasm") +
                   " " + tmp_path("v_xcx.qasm") + manifest);
  CHECK(fig1b.exit_code == 0);
  CHECK(nlohmann::json::parse(fig1b.output)["equivalent"] == true);

  // qubit count mismatch is a user error
  auto bad = run("verify --gateset nam " + tmp_path("v_hh.qasm") + " " +
                 tmp_path("v_cxx.qasm") + manifest);
  CHECK(bad.exit_code == 1);
}

TEST_CASE("fidelity subcommand uses the built-in device models") {
  write_file(tmp_path("f.qasm"), "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\n");
  auto f = run("fidelity --gateset nam --device ibm-toronto --json " +
               tmp_path("f.qasm") + " --manifest " + tmp_path("f.manifest.json"));
  CHECK(f.exit_code == 0);
  auto j = nlohmann::json::parse(f.output);
  CHECK(j["fidelity"] == 0.98719);
}

TEST_CASE("bad flags and unreadable files fail cleanly") {
  CHECK(run("synth --gateset nosuchset --out x.rules --manifest m.json")
            .exit_code == 1);
  CHECK(run("optimize --rules missing.rules --circuit missing.qasm "
            "--manifest m2.json").exit_code == 1);
  CHECK(run("frobnicate").exit_code != 0);
}
