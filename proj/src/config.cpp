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

#include "qmsepr/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace qmsepr {

namespace {

using nlohmann::ordered_json;

ordered_json parse_text(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("<document>", "not valid JSON");
  return doc;
}

void reject_unknown_keys(const ordered_json& obj, const std::string& path,
                         const std::set<std::string>& known) {
  for (const auto& [key, _] : obj.items())
    if (!known.count(key)) throw ConfigError(path + "." + key, "unknown field");
}

double number_at(const ordered_json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

Index count_at(const ordered_json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw ConfigError(path, "expected a positive integer");
  return static_cast<Index>(j.get<long long>());
}

Complex complex_at(const ordered_json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(path, "expected a complex entry [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ComplexMatrix matrix_at(const ordered_json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty matrix");
  const Index rows = static_cast<Index>(j.size());
  ComplexMatrix m;
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != rows)
      throw ConfigError(path, "matrix must be square");
    if (r == 0) m = ComplexMatrix(rows, rows);
    for (Index c = 0; c < rows; ++c)
      m(r, c) = complex_at(row[static_cast<std::size_t>(c)],
                           path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < m.cols(); ++c)
      row.push_back(ordered_json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CirculantModel parse_circulant(const ordered_json& j) {
  const std::string path = "model.circulant";
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown_keys(j, path, {"p", "q", "alpha"});
  if (!j.contains("p") || !j.contains("alpha"))
    throw ConfigError(path, "fields p and alpha are required");

  CirculantModel model;
  model.p = count_at(j["p"], path + ".p");
  model.q = j.contains("q") ? count_at(j["q"], path + ".q") : 1;
  if (!j["alpha"].is_array()) throw ConfigError(path + ".alpha", "expected an array");
  for (std::size_t i = 0; i < j["alpha"].size(); ++i)
    model.alpha.push_back(number_at(j["alpha"][i], path + ".alpha[" + std::to_string(i) + "]"));

  try {
    CirculantSpec{model.p, model.q, model.alpha}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ".alpha", e.what());
  }
  return model;
}

GkslModel parse_gksl(const ordered_json& j) {
  const std::string path = "model.gksl";
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown_keys(j, path, {"H", "lindblad_ops", "rho"});
  if (!j.contains("H")) throw ConfigError(path + ".H", "field is required");

  GkslModel model;
  model.H = matrix_at(j["H"], path + ".H");
  const double scale = std::max(1.0, model.H.cwiseAbs().maxCoeff());
  if ((model.H - model.H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ConfigError(path + ".H", "H is not Hermitian");

  if (j.contains("lindblad_ops")) {
    if (!j["lindblad_ops"].is_array())
      throw ConfigError(path + ".lindblad_ops", "expected an array of matrices");
    for (std::size_t k = 0; k < j["lindblad_ops"].size(); ++k) {
      const std::string lp = path + ".lindblad_ops[" + std::to_string(k) + "]";
      ComplexMatrix l = matrix_at(j["lindblad_ops"][k], lp);
      if (l.rows() != model.H.rows()) throw ConfigError(lp, "dimension differs from H");
      model.lindblad_ops.push_back(std::move(l));
    }
  }

  if (j.contains("rho")) {
    ComplexMatrix rho = matrix_at(j["rho"], path + ".rho");
    if (rho.rows() != model.H.rows()) throw ConfigError(path + ".rho", "dimension differs from H");
    try {
      make_density(rho);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path + ".rho", e.what());
    }
    model.rho = std::move(rho);
  }
  return model;
}

TGrid parse_t_grid(const ordered_json& j) {
  TGrid grid;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const double t = number_at(j[i], "t_grid[" + std::to_string(i) + "]");
      if (t < 0.0) throw ConfigError("t_grid[" + std::to_string(i) + "]", "times must be >= 0");
      grid.points.push_back(t);
    }
    if (grid.points.empty()) throw ConfigError("t_grid", "explicit grid must be nonempty");
    return grid;
  }
  if (!j.is_object()) throw ConfigError("t_grid", "expected an object {t0, levels} or an array");
  reject_unknown_keys(j, "t_grid", {"t0", "levels"});
  if (j.contains("t0")) {
    grid.t0 = number_at(j["t0"], "t_grid.t0");
    if (grid.t0 <= 0.0) throw ConfigError("t_grid.t0", "must be positive");
  }
  if (j.contains("levels")) {
    grid.levels = static_cast<int>(count_at(j["levels"], "t_grid.levels"));
  }
  return grid;
}

OutputSpec parse_output(const ordered_json& j) {
  OutputSpec out;
  if (!j.is_object()) throw ConfigError("output", "expected an object");
  reject_unknown_keys(j, "output", {"format", "path"});
  if (j.contains("format")) {
    const std::string f = j["format"].is_string() ? j["format"].get<std::string>() : "";
    if (f == "csv")
      out.format = OutputFormat::csv;
    else if (f == "json")
      out.format = OutputFormat::json;
    else
      throw ConfigError("output.format", "expected \"csv\" or \"json\"");
  }
  if (j.contains("path")) {
    if (!j["path"].is_string()) throw ConfigError("output.path", "expected a string");
    out.path = j["path"].get<std::string>();
  }
  return out;
}

ExperimentConfig parse_document(const ordered_json& doc) {
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  reject_unknown_keys(doc, "<document>",
                      {"model", "command", "t_grid", "output", "seed"});
  if (!doc.contains("model")) throw ConfigError("model", "field is required");
  const auto& model = doc["model"];
  if (!model.is_object()) throw ConfigError("model", "expected an object");
  reject_unknown_keys(model, "model", {"circulant", "gksl"});
  if (model.size() != 1)
    throw ConfigError("model", "exactly one of circulant or gksl is required");

  ExperimentConfig config;
  if (model.contains("circulant"))
    config.model = parse_circulant(model["circulant"]);
  else
    config.model = parse_gksl(model["gksl"]);

  if (!doc.contains("command")) throw ConfigError("command", "field is required");
  if (!doc["command"].is_string()) throw ConfigError("command", "expected a string");
  config.command = command_from_name(doc["command"].get<std::string>());

  if (doc.contains("t_grid")) config.t_grid = parse_t_grid(doc["t_grid"]);
  if (doc.contains("output")) config.output = parse_output(doc["output"]);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0)
      throw ConfigError("seed", "expected a nonnegative integer");
    config.seed = static_cast<unsigned>(doc["seed"].get<long long>());
  }
  return config;
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::epr: return "epr";
    case Command::relent: return "relent";
    case Command::choi: return "choi";
    case Command::check_sqdb: return "check-sqdb";
    case Command::verify: return "verify";
  }
  return "epr";
}

Command command_from_name(const std::string& name) {
  if (name == "epr") return Command::epr;
  if (name == "relent") return Command::relent;
  if (name == "choi") return Command::choi;
  if (name == "check-sqdb" || name == "check_sqdb") return Command::check_sqdb;
  if (name == "verify") return Command::verify;
  throw ConfigError("command", "unknown command \"" + name + "\"");
}

std::vector<double> TGrid::values() const {
  if (!points.empty()) return points;
  std::vector<double> out(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) out[static_cast<std::size_t>(k)] = t0 * std::pow(2.0, -k);
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  return parse_document(parse_text(text));
}

std::string emit_config(const ExperimentConfig& config) {
  ordered_json doc;
  ordered_json model;
  if (const auto* circ = std::get_if<CirculantModel>(&config.model)) {
    model["circulant"] = {{"p", circ->p}, {"q", circ->q}, {"alpha", circ->alpha}};
  } else {
    const auto& gksl = std::get<GkslModel>(config.model);
    ordered_json g;
    g["H"] = matrix_to_json(gksl.H);
    ordered_json ops = ordered_json::array();
    for (const auto& l : gksl.lindblad_ops) ops.push_back(matrix_to_json(l));
    g["lindblad_ops"] = std::move(ops);
    if (gksl.rho) g["rho"] = matrix_to_json(*gksl.rho);
    model["gksl"] = std::move(g);
  }
  doc["model"] = std::move(model);
  doc["command"] = command_name(config.command);
  if (config.t_grid.points.empty())
    doc["t_grid"] = {{"t0", config.t_grid.t0}, {"levels", config.t_grid.levels}};
  else
    doc["t_grid"] = config.t_grid.points;
  doc["output"] = {{"format", config.output.format == OutputFormat::csv ? "csv" : "json"},
                   {"path", config.output.path}};
  doc["seed"] = config.seed;
  return doc.dump(2);
}

ExperimentConfig parse_config_with_overrides(const std::string& text, const CliOverrides& o) {
  ordered_json doc = parse_text(text);
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  if (o.command) doc["command"] = *o.command;
  if (o.t0 || o.levels) {
    ordered_json grid =
        doc.contains("t_grid") && doc["t_grid"].is_object() ? doc["t_grid"] : ordered_json::object();
    if (o.t0) grid["t0"] = *o.t0;
    if (o.levels) grid["levels"] = *o.levels;
    doc["t_grid"] = std::move(grid);  // overrides force the geometric form
  }
  if (o.seed) doc["seed"] = *o.seed;
  if (o.format || o.out_path) {
    ordered_json out =
        doc.contains("output") && doc["output"].is_object() ? doc["output"] : ordered_json::object();
    if (o.format) out["format"] = *o.format;
    if (o.out_path) out["path"] = *o.out_path;
    doc["output"] = std::move(out);
  }
  return parse_document(doc);
}

}  // namespace qmsepr
