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

#include <string>
#include <variant>
#include <vector>

#include "qmsepr/config.hpp"

namespace qmsepr {

using Cell = std::variant<double, long long, bool, std::string>;

struct Column {
  std::string name;
  std::vector<Cell> values;
};

// A rectangular result set plus metadata (config echo, version string,
// headline tolerances).  Serialization is deterministic: fixed column
// order, fixed summation orders upstream, shortest-round-trip doubles in
// JSON and 17 significant digits in CSV.  +infinity prints as "inf" in
// CSV and as the tagged string "inf" in JSON.
struct ResultTable {
  std::vector<Column> columns;
  std::string metadata_json;  // serialized object, embedded verbatim in to_json
};

std::string to_csv(const ResultTable& table);
std::string to_json(const ResultTable& table);

// Exit codes: 0 success (infinite rates are in-band results), 1 validation
// failure, 2 numerical failure (e.g. the supplied state is not invariant).
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

struct RunResult {
  ResultTable table;
  int exit_code = kExitOk;
};

// Dispatch a parsed config: epr (closed form when circulant, plus the
// slope and flip-pair estimates), relent (S(t) over the grid), choi
// (Choi-state spectra over the grid), check-sqdb (detailed-balance
// residuals), verify (property-suite summary).
RunResult run(const ExperimentConfig& config);

}  // namespace qmsepr
