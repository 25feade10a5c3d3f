/*
   Copyright 2026 The elop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "elop/runner.hpp"
#include "elop/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

struct CommonArgs {
  std::string scenario_path;
  std::string mode;
  std::string out_dir;
  std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("scenario", args.scenario_path, "scenario config file")->required();
  cmd->add_option("--mode", args.mode, "override the scalar mode (exact|float)")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--out", args.out_dir, "override the report output directory");
  cmd->add_option("--format", args.formats, "report formats (json|csv|table)")
      ->check(CLI::IsMember({"json", "csv", "table"}));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

elop::ScenarioConfig load(const CommonArgs& args) {
  std::optional<elop::scalar_mode> mode;
  if (args.mode == "exact") mode = elop::scalar_mode::exact;
  if (args.mode == "float") mode = elop::scalar_mode::floating;
  elop::ScenarioConfig cfg = elop::parse_config(read_file(args.scenario_path), mode);
  if (!args.formats.empty()) cfg.formats = args.formats;
  return cfg;
}

int execute(const CommonArgs& args, const std::optional<std::string>& kind) {
  elop::ScenarioConfig cfg;
  try {
    cfg = load(args);
  } catch (const elop::parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  try {
    const std::optional<std::string> out =
        args.out_dir.empty() ? std::nullopt : std::optional<std::string>(args.out_dir);
    const elop::RunOutcome outcome = elop::run_scenario(cfg, kind, out);
    for (const auto& [stem, verdict] : outcome.results) {
      std::cout << stem << ": " << verdict << "\n";
    }
    std::cout << outcome.executed << " run(s), " << outcome.written.size() << " report file(s)";
    if (outcome.errored > 0) std::cout << ", " << outcome.errored << " errored";
    std::cout << "\n";
    return outcome.errored == 0 ? kExitOk : kExitRuntimeError;
  } catch (const elop::configuration_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elementary-operator dynamics laboratory"};
  app.require_subcommand(1);

  CommonArgs validate_args, check_args, witness_args, orbit_args, norms_args;
  CLI::App* validate = app.add_subcommand("validate", "parse and validate a scenario config");
  add_common(validate, validate_args);
  CLI::App* check = app.add_subcommand("check", "run the scenario's criterion checks");
  add_common(check, check_args);
  CLI::App* witness = app.add_subcommand("witness", "run the scenario's witness constructions");
  add_common(witness, witness_args);
  CLI::App* orbit = app.add_subcommand("orbit", "run the scenario's orbit diagnostics");
  add_common(orbit, orbit_args);
  CLI::App* norms = app.add_subcommand("norms", "emit raw compression-norm tables");
  add_common(norms, norms_args);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    try {
      const elop::ScenarioConfig cfg = load(validate_args);
      std::cout << "scenario '" << cfg.name << "': " << cfg.operators.size() << " operator(s), "
                << cfg.runs.size() << " run(s), mode " << elop::to_string(cfg.mode) << "\n";
      return kExitOk;
    } catch (const elop::parse_error& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfigError;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitRuntimeError;
    }
  }
  if (check->parsed()) return execute(check_args, "criterion");
  if (witness->parsed()) return execute(witness_args, "witness");
  if (orbit->parsed()) return execute(orbit_args, "orbit");
  if (norms->parsed()) return execute(norms_args, "norms");
  return kExitConfigError;
}
