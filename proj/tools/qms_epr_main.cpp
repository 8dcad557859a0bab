// Copyright 2026 the qms-epr authors
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
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qmsepr/config.hpp"
#include "qmsepr/run.hpp"

namespace {

// Surface exit-2 diagnostics on stderr so CSV consumers see them too;
// the JSON output format already carries them in metadata.
void report_failure(const std::string& metadata_json) {
  try {
    const nlohmann::json meta = nlohmann::json::parse(metadata_json);
    if (meta.contains("error")) {
      std::cerr << "numerical failure: " << meta["error"].get<std::string>();
      if (meta.contains("invariance_residual")) {
        std::cerr << " (invariance residual " << meta["invariance_residual"].get<double>() << ")";
      }
      std::cerr << "\n";
      return;
    }
    if (meta.contains("required_failures") && !meta["required_failures"].empty()) {
      std::cerr << "verification failed:";
      for (const auto& name : meta["required_failures"]) {
        std::cerr << " " << name.get<std::string>();
      }
      std::cerr << "\n";
      return;
    }
  } catch (const nlohmann::json::exception&) {
  }
  std::cerr << "numerical failure\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy production toolkit for quantum Markov semigroups"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  double t0 = 0.0;
  int levels = 0;
  unsigned seed = 0;
  CLI::Option* cmd_opt =
      app.add_option("command", command, "epr | relent | choi | check-sqdb | verify")
          ->check(CLI::IsMember({"epr", "relent", "choi", "check-sqdb", "check_sqdb", "verify"}));
  app.add_option("--config", config_path, "experiment configuration file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::Option* out_opt = app.add_option("--out", out_path, "output file (default stdout)");
  CLI::Option* fmt_opt = app.add_option("--format", format, "output format")
                             ->check(CLI::IsMember({"csv", "json"}));
  CLI::Option* t0_opt = app.add_option("--t0", t0, "largest time of the geometric grid");
  CLI::Option* lv_opt = app.add_option("--levels", levels, "number of geometric grid points");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "seed for randomized checks");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.fail() && !in.eof()) {
    std::cerr << "cannot read " << config_path << "\n";
    return qmsepr::kExitValidation;
  }

  qmsepr::CliOverrides overrides;
  if (cmd_opt->count() > 0) overrides.command = command;
  if (t0_opt->count() > 0) overrides.t0 = t0;
  if (lv_opt->count() > 0) overrides.levels = levels;
  if (seed_opt->count() > 0) overrides.seed = seed;
  if (fmt_opt->count() > 0) overrides.format = format;
  if (out_opt->count() > 0) overrides.out_path = out_path;

  qmsepr::RunResult result;
  qmsepr::OutputSpec output;
  try {
    const qmsepr::ExperimentConfig config =
        qmsepr::parse_config_with_overrides(buffer.str(), overrides);
    output = config.output;
    result = qmsepr::run(config);
  } catch (const qmsepr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return qmsepr::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qmsepr::kExitNumerical;
  }

  const std::string text = output.format == qmsepr::OutputFormat::csv
                               ? qmsepr::to_csv(result.table)
                               : qmsepr::to_json(result.table);
  if (output.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output.path);
    out << text;
    if (!out) {
      std::cerr << "cannot write " << output.path << "\n";
      return qmsepr::kExitValidation;
    }
  }
  if (result.exit_code != qmsepr::kExitOk) {
    report_failure(result.table.metadata_json);
  }
  return result.exit_code;
}
