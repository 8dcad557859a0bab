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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qmsepr/channels.hpp"
#include "qmsepr/circulant.hpp"

namespace qmsepr {

// Configuration errors carry the dotted path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct CirculantModel {
  Index p = 1;
  Index q = 1;
  std::vector<double> alpha;
};

struct GkslModel {
  ComplexMatrix H;
  std::vector<ComplexMatrix> lindblad_ops;
  std::optional<ComplexMatrix> rho;  // found from the generator kernel when absent
};

enum class Command { epr, relent, choi, check_sqdb, verify };

std::string command_name(Command c);
Command command_from_name(const std::string& name);  // throws ConfigError

// Either a geometric grid t0 * 2^-k, k = 0..levels-1, or explicit points.
struct TGrid {
  double t0 = 1e-2;
  int levels = 6;
  std::vector<double> points;  // wins over (t0, levels) when nonempty

  std::vector<double> values() const;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path;  // empty = stdout
};

struct ExperimentConfig {
  std::variant<CirculantModel, GkslModel> model;
  Command command = Command::epr;
  TGrid t_grid;
  OutputSpec output;
  unsigned seed = 1;
};

// Parse a JSON experiment description.  Complex entries are [re, im]
// pairs, matrices nested arrays of them.  Throws ConfigError with the
// path of the first offending field.
ExperimentConfig parse_config(const std::string& text);

// Canonical JSON echo; parse(emit_config(c)) reproduces c.
std::string emit_config(const ExperimentConfig& config);

// Command-line overrides applied on top of the config document.
struct CliOverrides {
  std::optional<std::string> command;
  std::optional<double> t0;
  std::optional<int> levels;
  std::optional<unsigned> seed;
  std::optional<std::string> format;
  std::optional<std::string> out_path;
};

ExperimentConfig parse_config_with_overrides(const std::string& text, const CliOverrides& o);

}  // namespace qmsepr
