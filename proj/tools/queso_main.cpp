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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "queso/device.hpp"
#include "queso/optimizer.hpp"
#include "queso/qasm.hpp"
#include "queso/rulefile.hpp"
#include "queso/synth.hpp"
#include "queso/verifier.hpp"

namespace {

using nlohmann::json;
using namespace queso;

struct CommonFlags {
  std::string gateset = "nam";
  std::uint64_t seed = 12345;
  int jobs = 0;  // 0 = auto
  bool emit_json = false;
  std::string config_path;
  std::string manifest_path;
};

GateSet resolve_gateset(const std::string &name_or_path) {
  for (const std::string &n : builtin_gateset_names())
    if (n == name_or_path) return builtin_gateset(n);
  return load_gateset_file(name_or_path);
}

DeviceModel resolve_device(const std::string &name_or_path) {
  for (const std::string &n : builtin_device_names())
    if (n == name_or_path) return builtin_device(n);
  return load_device_file(name_or_path);
}

int effective_jobs(int flag) { return flag > 0 ? flag : default_jobs(); }

// Config-file defaults: `--config file.json` loads the "flags" object of a
// manifest (or a plain flag map) before argv is parsed, so command-line
// flags take precedence over the file, which takes precedence over
// defaults.
json load_config_defaults(int argc, char **argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw UserError(std::string("cannot open config ") + argv[i + 1]);
      json j = json::parse(in, nullptr, true);
      return j.contains("flags") ? j.at("flags") : j;
    }
  }
  return json::object();
}

template <typename T>
void from_config(const json &cfg, const char *key, T &value) {
  if (cfg.contains(key) && !cfg.at(key).is_null()) value = cfg.at(key).get<T>();
}

void write_manifest(const CommonFlags &common, const std::string &command,
                    const json &flags, const json &outputs,
                    const json &results, double elapsed) {
  json m;
  m["schema"] = "queso.manifest.v1";
  m["version"] = kVersion;
  m["command"] = command;
  m["flags"] = flags;
  m["outputs"] = outputs;
  m["results"] = results;
  m["timings"] = {{"elapsed_seconds", elapsed}};
  std::string path = common.manifest_path;
  if (path.empty()) path = "queso-" + command + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UserError("cannot write manifest " + path);
  out << m.dump(2) << "\n";
}

void add_common(CLI::App *cmd, CommonFlags &common) {
  cmd->add_option("--gateset", common.gateset,
                  "gate set: nam|ibm|rigetti|ion or a JSON file");
  cmd->add_option("--seed", common.seed, "seed for all randomized pieces");
  cmd->add_option("--jobs", common.jobs, "worker threads (0 = all cores)");
  cmd->add_flag("--json", common.emit_json, "machine-readable stdout");
  cmd->add_option("--config", common.config_path,
                  "JSON file with flag defaults (a manifest works)");
  cmd->add_option("--manifest", common.manifest_path,
                  "manifest output path (default: queso-<cmd>.manifest.json)");
}

int cmd_synth(const CommonFlags &common, int max_qubits, int max_size,
              bool no_symbolic, int sym_qubits, int sym_size, double timeout,
              const std::string &out_path) {
  auto t0 = std::chrono::steady_clock::now();
  GateSet gs = resolve_gateset(common.gateset);
  SynthConfig cfg;
  cfg.gate_set = &gs;
  cfg.max_qubits = max_qubits;
  cfg.max_size = max_size;
  cfg.symbolic = !no_symbolic;
  cfg.symbolic_max_qubits = sym_qubits;
  cfg.symbolic_max_size = sym_size;
  cfg.seed = common.seed;
  cfg.jobs = effective_jobs(common.jobs);
  cfg.timeout_seconds = timeout;

  SynthResult result = synth_eq(cfg);
  auto rules = prune_rules(extract_rules(result, cfg));
  save_rules(rules, gs.name, out_path);

  int symbolic = 0;
  for (const RewriteRule &r : rules)
    if (r.symbolic) ++symbolic;
  Rational bound = 0;
  std::uint64_t pairs = 0;
  for (const Pif &pif : result.pifs) {
    bound += pif.failure_bound();
    pairs += pif.pair_count();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json flags = {{"gateset", common.gateset},
                {"max_qubits", max_qubits},
                {"max_size", max_size},
                {"no_symbolic", no_symbolic},
                {"symbolic_max_qubits", sym_qubits},
                {"symbolic_max_size", sym_size},
                {"timeout", timeout},
                {"seed", common.seed},
                {"out", out_path}};
  json results = {{"rules", rules.size()},
                  {"symbolic_rules", symbolic},
                  {"equivalence_pairs", pairs},
                  {"failure_bound", bound.get_d()},
                  {"timed_out", result.stats.timed_out}};
  write_manifest(common, "synth", flags, {{"rules", out_path}}, results,
                 elapsed);
  if (common.emit_json) {
    std::cout << results.dump() << "\n";
  } else {
    std::printf("synthesized %zu rules (%d symbolic) in %.2fs\n", rules.size(),
                symbolic, elapsed);
    std::printf("equivalence pairs: %llu, failure bound: %.3g\n",
                (unsigned long long)pairs, bound.get_d());
    std::printf("rules written to %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_optimize(const CommonFlags &common, const std::string &rules_path,
                 const std::string &circuit_path, const std::string &out_path,
                 int queue_size, double timeout, const std::string &cost_name,
                 const std::string &device_name) {
  auto t0 = std::chrono::steady_clock::now();
  GateSet gs = resolve_gateset(common.gateset);
  auto rules = load_rules(rules_path, gs);
  ConcreteCircuit circuit = parse_qasm_file(circuit_path, gs);

  BeamConfig cfg;
  cfg.queue_capacity = queue_size;
  cfg.timeout_seconds = timeout;
  cfg.cost = cost_kind_from_string(cost_name);
  cfg.seed = common.seed;
  cfg.jobs = effective_jobs(common.jobs);

  BeamStats stats;
  ConcreteCircuit best = max_beam(circuit, rules, cfg, &stats);
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UserError("cannot write " + out_path);
    out << emit_qasm(best);
  }

  json results = {{"cost_before", stats.initial_cost},
                  {"cost_after", stats.final_cost},
                  {"gates_before", circuit.gate_count()},
                  {"gates_after", best.gate_count()},
                  {"timed_out", stats.timed_out}};
  if (!device_name.empty()) {
    DeviceModel model = resolve_device(device_name);
    results["fidelity_before"] = circuit_fidelity(circuit, model);
    results["fidelity_after"] = circuit_fidelity(best, model);
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json flags = {{"gateset", common.gateset}, {"rules", rules_path},
                {"circuit", circuit_path},   {"out", out_path},
                {"queue_size", queue_size},  {"timeout", timeout},
                {"cost", cost_name},         {"device", device_name},
                {"seed", common.seed}};
  write_manifest(common, "optimize", flags, {{"circuit", out_path}}, results,
                 elapsed);
  if (common.emit_json) {
    std::cout << results.dump() << "\n";
  } else {
    std::printf("cost (%s): %d -> %d; gates: %d -> %d\n", cost_name.c_str(),
                stats.initial_cost, stats.final_cost, circuit.gate_count(),
                best.gate_count());
    if (results.contains("fidelity_before"))
      std::printf("fidelity: %.6f -> %.6f\n",
                  results["fidelity_before"].get<double>(),
                  results["fidelity_after"].get<double>());
    std::printf("optimized circuit written to %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_verify(const CommonFlags &common, const std::string &a_path,
               const std::string &b_path) {
  auto t0 = std::chrono::steady_clock::now();
  GateSet gs = resolve_gateset(common.gateset);
  ConcreteCircuit a = parse_qasm_file(a_path, gs);
  ConcreteCircuit b = parse_qasm_file(b_path, gs);
  if (a.num_qubits != b.num_qubits)
    throw UserError("circuits have different qubit counts");

  std::map<std::int64_t, int> angle_vars;  // shared across both circuits
  CircuitPattern pa = lift_to_pattern(a, angle_vars);
  CircuitPattern pb = lift_to_pattern(b, angle_vars);
  int params = std::max(pa.num_params, pb.num_params);
  pa.num_params = pb.num_params = params;

  PitOutcome out = pit_check(pa, pb, nullptr, common.seed, a.num_qubits);
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json results = {{"equivalent", out.equivalent}};
  if (out.equivalent) results["failure_bound"] = out.failure_bound.get_d();
  json flags = {{"gateset", common.gateset},
                {"a", a_path},
                {"b", b_path},
                {"seed", common.seed}};
  write_manifest(common, "verify", flags, json::object(), results, elapsed);
  if (common.emit_json) {
    std::cout << results.dump() << "\n";
    return 0;
  }
  if (out.equivalent) {
    std::printf("equivalent (failure probability <= %.3g)\n",
                out.failure_bound.get_d());
  } else {
    std::printf("counterexample found; distinguishing valuation:\n");
    for (const auto &[var, value] : out.valuation.entries())
      std::printf("  %s = %s\n", var.to_string().c_str(),
                  value.to_string().c_str());
    std::printf("lhs value: %s\nrhs value: %s\n",
                out.lhs_value.to_string().c_str(),
                out.rhs_value.to_string().c_str());
  }
  return 0;
}

int cmd_fidelity(const CommonFlags &common, const std::string &circuit_path,
                 const std::string &device_name) {
  GateSet gs = resolve_gateset(common.gateset);
  ConcreteCircuit c = parse_qasm_file(circuit_path, gs);
  DeviceModel model = resolve_device(device_name);
  double f = circuit_fidelity(c, model);
  json results = {{"fidelity", f},
                  {"gates", c.gate_count()},
                  {"two_qubit_gates", circuit_cost(c, CostKind::TwoQubitGates)}};
  json flags = {{"gateset", common.gateset},
                {"circuit", circuit_path},
                {"device", device_name}};
  write_manifest(common, "fidelity", flags, json::object(), results, 0.0);
  if (common.emit_json)
    std::cout << results.dump() << "\n";
  else
    std::printf("fidelity on %s: %.6f\n", model.name.c_str(), f);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"queso: synthesize and apply verified circuit rewrite rules"};
  app.require_subcommand(1);

  json cfg_defaults;
  try {
    cfg_defaults = load_config_defaults(argc, argv);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  CommonFlags common;
  from_config(cfg_defaults, "gateset", common.gateset);
  from_config(cfg_defaults, "seed", common.seed);

  // synth
  int max_qubits = 3, max_size = 4, sym_qubits = 2, sym_size = 3;
  bool no_symbolic = false;
  double synth_timeout = 0;
  std::string rules_out = "rules.queso";
  from_config(cfg_defaults, "max_qubits", max_qubits);
  from_config(cfg_defaults, "max_size", max_size);
  from_config(cfg_defaults, "no_symbolic", no_symbolic);
  from_config(cfg_defaults, "symbolic_max_qubits", sym_qubits);
  from_config(cfg_defaults, "symbolic_max_size", sym_size);
  from_config(cfg_defaults, "timeout", synth_timeout);
  from_config(cfg_defaults, "out", rules_out);
  CLI::App *synth = app.add_subcommand("synth", "synthesize rewrite rules");
  add_common(synth, common);
  synth->add_option("--max-qubits", max_qubits, "wires per rule (default 3)");
  synth->add_option("--max-size", max_size, "gates per side (default 4)");
  synth->add_flag("--no-symbolic", no_symbolic, "skip symbolic rules");
  synth->add_option("--symbolic-max-qubits", sym_qubits,
                    "wires per symbolic rule (default 2)");
  synth->add_option("--symbolic-max-size", sym_size,
                    "gates per symbolic side (default 3)");
  synth->add_option("--timeout", synth_timeout,
                    "synthesis budget in seconds (0 = none)");
  synth->add_option("--out", rules_out, "rule file to write");

  // optimize
  std::string rules_path, circuit_path, circuit_out = "optimized.qasm";
  std::string cost_name = "total", device_name;
  int queue_size = 8000;
  double opt_timeout = 3600;
  from_config(cfg_defaults, "rules", rules_path);
  from_config(cfg_defaults, "circuit", circuit_path);
  from_config(cfg_defaults, "queue_size", queue_size);
  from_config(cfg_defaults, "cost", cost_name);
  from_config(cfg_defaults, "device", device_name);
  CLI::App *optimize = app.add_subcommand("optimize", "minimize a circuit");
  add_common(optimize, common);
  optimize->add_option("--rules", rules_path, "rule file");
  optimize->add_option("--circuit", circuit_path, ".qasm input");
  optimize->add_option("--out", circuit_out, ".qasm output");
  optimize->add_option("--queue-size", queue_size,
                       "beam queue capacity (default 8000)");
  optimize->add_option("--timeout", opt_timeout,
                       "search budget in seconds (default 3600)");
  optimize->add_option("--cost", cost_name, "total|2q|no-rz");
  optimize->add_option("--device", device_name,
                       "device model for fidelity reporting");

  // verify
  std::string verify_a, verify_b;
  CLI::App *verify = app.add_subcommand("verify", "check circuit equivalence");
  add_common(verify, common);
  verify->add_option("a", verify_a, "first .qasm file");
  verify->add_option("b", verify_b, "second .qasm file");

  // fidelity
  std::string fid_circuit, fid_device = "ibm-toronto";
  CLI::App *fidelity = app.add_subcommand("fidelity", "estimate fidelity");
  add_common(fidelity, common);
  fidelity->add_option("circuit", fid_circuit, ".qasm file");
  fidelity->add_option("--device", fid_device, "device model");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed())
      return cmd_synth(common, max_qubits, max_size, no_symbolic, sym_qubits,
                       sym_size, synth_timeout, rules_out);
    if (optimize->parsed()) {
      if (rules_path.empty() || circuit_path.empty())
        throw UserError("optimize needs --rules and --circuit");
      return cmd_optimize(common, rules_path, circuit_path, circuit_out,
                          queue_size, opt_timeout, cost_name, device_name);
    }
    if (verify->parsed()) {
      if (verify_a.empty() || verify_b.empty())
        throw UserError("verify needs two .qasm files");
      return cmd_verify(common, verify_a, verify_b);
    }
    if (fidelity->parsed()) {
      if (fid_circuit.empty()) throw UserError("fidelity needs a .qasm file");
      return cmd_fidelity(common, fid_circuit, fid_device);
    }
  } catch (const UserError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 1;
}
