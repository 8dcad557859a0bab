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
#include "qmsepr/run.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmsepr/channels.hpp"
#include "qmsepr/choi.hpp"
#include "qmsepr/circulant.hpp"
#include "qmsepr/density.hpp"
#include "qmsepr/epr.hpp"
#include "qmsepr/linalg.hpp"
#include "qmsepr/parallel.hpp"

namespace qmsepr {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

std::string double_to_csv(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_to_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return double_to_csv(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      cell);
}

ordered_json cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (std::isnan(v)) return "nan";
          if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
          return v;
        } else {
          return v;
        }
      },
      cell);
}

Column real_column(std::string name, const std::vector<double>& values) {
  Column c{std::move(name), {}};
  c.values.reserve(values.size());
  for (double v : values) c.values.emplace_back(v);
  return c;
}

Column repeat_real(std::string name, double value, std::size_t n) {
  Column c{std::move(name), {}};
  c.values.assign(n, Cell(value));
  return c;
}

Column repeat_bool(std::string name, bool value, std::size_t n) {
  Column c{std::move(name), {}};
  c.values.assign(n, Cell(value));
  return c;
}

ordered_json base_metadata(const ExperimentConfig& config) {
  ordered_json meta;
  meta["version"] = kVersion;
  meta["command"] = command_name(config.command);
  meta["config"] = ordered_json::parse(emit_config(config));
  ordered_json tol;
  tol["invariance"] = 1e-8;
  tol["identity_residual"] = 1e-10;
  tol["entropy_cross_check"] = 1e-8;
  tol["entropy_basis"] = 1e-7;
  meta["tolerances"] = tol;
  return meta;
}

// Internal signal for exit-code-2 conditions; never escapes run().
struct NumericalFailure {
  std::string message;
  double invariance_residual = 0.0;
  bool has_residual = false;
};

struct Realized {
  Semigroup sg;
  DensityMatrix rho;
  std::optional<CirculantSpec> circulant;
};

// Unique invariant state from the kernel of the predual generator.
DensityMatrix invariant_state(const ComplexMatrix& gen) {
  Eigen::JacobiSVD<ComplexMatrix> svd(gen, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const Index n = sv.size();
  const double threshold = 1e-10 * std::max(n > 0 ? sv(0) : 0.0, 1.0);
  Index null_count = 0;
  for (Index i = 0; i < n; ++i) {
    if (sv(i) <= threshold) ++null_count;
  }
  if (null_count == 0) {
    throw NumericalFailure{"generator has no invariant state (trivial kernel)"};
  }
  if (null_count > 1) {
    throw NumericalFailure{"invariant state is not unique (generator kernel dimension " +
                           std::to_string(null_count) + ")"};
  }
  ComplexMatrix candidate = unvec(svd.matrixV().col(n - 1));
  candidate = ComplexMatrix(0.5 * (candidate + candidate.adjoint()));
  const double tr = candidate.trace().real();
  if (std::abs(tr) < 1e-10) {
    throw NumericalFailure{"generator kernel element is traceless, no invariant state"};
  }
  candidate /= tr;
  const EigDecomposition eig = hermitian_eig(candidate);
  RealVector lam = eig.eigenvalues;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -1e-10) {
      throw NumericalFailure{"invariant state has a negative eigenvalue"};
    }
    lam(i) = std::max(lam(i), 0.0);
  }
  lam /= lam.sum();
  const ComplexMatrix rebuilt =
      eig.eigenvectors * lam.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  return make_density(rebuilt);
}

Realized realize(const ExperimentConfig& config, bool hard_invariance_gate) {
  if (std::holds_alternative<CirculantModel>(config.model)) {
    const CirculantModel& m = std::get<CirculantModel>(config.model);
    CirculantSpec spec{m.p, m.q, m.alpha};
    spec.validate();
    Semigroup sg = circulant_generator(spec);
    const double d = static_cast<double>(spec.dim());
    DensityMatrix rho = make_density(ComplexMatrix::Identity(spec.dim(), spec.dim()) / d);
    return Realized{std::move(sg), std::move(rho), std::move(spec)};
  }
  const GkslModel& m = std::get<GkslModel>(config.model);
  const GkslGenerator gen = make_gksl(m.H, m.lindblad_ops);
  Semigroup sg = make_semigroup(gen);
  std::optional<DensityMatrix> rho;
  if (m.rho.has_value()) {
    rho.emplace(make_density(*m.rho));
  } else {
    rho.emplace(invariant_state(sg.generator_super_predual));
  }
  if (!is_faithful(*rho)) {
    throw NumericalFailure{"reference state is not faithful"};
  }
  if (hard_invariance_gate) {
    const std::vector<double> ts = config.t_grid.values();
    const double residual = check_invariant(sg, *rho, ts);
    if (residual > 1e-8) {
      throw NumericalFailure{"reference state is not invariant under the semigroup", residual,
                             true};
    }
  }
  return Realized{std::move(sg), std::move(*rho), std::nullopt};
}

ResultTable run_epr(const Realized& r, const ExperimentConfig& config) {
  if (!config.t_grid.points.empty()) {
    throw ConfigError("t_grid", "command epr needs a geometric grid (t0, levels)");
  }
  const EprEstimate slope = epr_slope(r.sg, r.rho, config.t_grid.t0, config.t_grid.levels);
  const EprEstimate fr = fr_epr(r.sg, r.rho, config.t_grid.t0, config.t_grid.levels);
  const std::size_t n = slope.t_grid.size();
  std::vector<double> s_over_t(n);
  for (std::size_t i = 0; i < n; ++i) s_over_t[i] = slope.raw_S[i] / slope.t_grid[i];
  ResultTable table;
  table.columns.push_back(real_column("t", slope.t_grid));
  table.columns.push_back(real_column("S", slope.raw_S));
  table.columns.push_back(real_column("S_over_t", s_over_t));
  if (r.circulant.has_value()) {
    table.columns.push_back(repeat_real("epr_closed", closed_form_epr(*r.circulant).value, n));
  }
  table.columns.push_back(repeat_real("epr_slope", slope.value, n));
  table.columns.push_back(repeat_real("extrapolation_error", slope.extrapolation_error, n));
  table.columns.push_back(repeat_real("fr_epr", fr.value, n));
  return table;
}

ResultTable run_relent(const Realized& r, const ExperimentConfig& config) {
  const std::vector<double> ts = config.t_grid.values();
  std::vector<double> entropy(ts.size());
  parallel_for_index(ts.size(),
                     [&](std::size_t i) { entropy[i] = relent_semigroup(r.sg, r.rho, ts[i]); });
  std::vector<double> s_over_t(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) s_over_t[i] = entropy[i] / ts[i];
  ResultTable table;
  table.columns.push_back(real_column("t", ts));
  table.columns.push_back(real_column("S", entropy));
  table.columns.push_back(real_column("S_over_t", s_over_t));
  return table;
}

ResultTable run_choi(const Realized& r, const ExperimentConfig& config) {
  const std::vector<double> ts = config.t_grid.values();
  const Index d2 = r.sg.dim * r.sg.dim;
  std::vector<RealVector> spectra(ts.size());
  parallel_for_index(ts.size(), [&](std::size_t i) {
    const ChoiState state = r.circulant.has_value()
                                ? circulant_choi(*r.circulant, ts[i])
                                : choi_state(semigroup_map(r.sg, ts[i]), r.rho);
    spectra[i] = hermitian_eig(state.matrix).eigenvalues;
  });
  Column t_col{"t", {}};
  Column idx_col{"index", {}};
  Column eig_col{"eigenvalue", {}};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (Index k = 0; k < d2; ++k) {
      t_col.values.emplace_back(ts[i]);
      idx_col.values.emplace_back(static_cast<long long>(k));
      eig_col.values.emplace_back(spectra[i](k));
    }
  }
  ResultTable table;
  table.columns.push_back(std::move(t_col));
  table.columns.push_back(std::move(idx_col));
  table.columns.push_back(std::move(eig_col));
  return table;
}

ResultTable run_check_sqdb(const Realized& r, const ExperimentConfig& config) {
  const std::vector<double> ts = config.t_grid.values();
  const SqdbReport report = check_theta_sqdb(r.sg, r.rho, ts);
  ResultTable table;
  table.columns.push_back(real_column("t", ts));
  table.columns.push_back(real_column("residual", report.residuals));
  table.columns.push_back(repeat_bool("holds", report.holds, ts.size()));
  table.columns.push_back(repeat_real("max_residual", report.max_residual, ts.size()));
  return table;
}

ComplexMatrix random_matrix(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return m;
}

ComplexMatrix random_unitary(Index d, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(d, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    const Complex rii = rmat(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= mag > 0 ? rii / mag : Complex(1.0, 0.0);
  }
  return q;
}

struct VerifyRow {
  std::string property;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool required = true;
};

ResultTable run_verify(const Realized& r, const ExperimentConfig& config, ordered_json& meta,
                       int& exit_code) {
  const std::vector<double> ts = config.t_grid.values();
  const double t_probe = *std::max_element(ts.begin(), ts.end());
  if (t_probe <= 0.0) {
    throw ConfigError("t_grid", "command verify needs a positive time point");
  }
  std::mt19937_64 rng(config.seed);
  std::vector<VerifyRow> rows;
  const auto add = [&rows](std::string name, double residual, double threshold, bool required) {
    rows.push_back(VerifyRow{std::move(name), residual, threshold, residual <= threshold, required});
  };

  add("invariance_residual", check_invariant(r.sg, r.rho, ts), 1e-8, true);

  const Index d = r.sg.dim;
  const ChannelRep map_t = semigroup_map(r.sg, t_probe);
  const ChannelRep map_dual = map_t.to_side(Side::dual);
  const ChoiState j_fwd = choi_state(map_t, r.rho);

  add("choi_trace", std::abs(j_fwd.trace - map_t.apply(r.rho.matrix()).trace().real()), 1e-10,
      true);
  {
    const EigDecomposition eig = hermitian_eig(j_fwd.matrix);
    const double lam_min = eig.eigenvalues(eig.eigenvalues.size() - 1);
    add("choi_psd", std::max(0.0, -lam_min), 1e-11, true);
  }

  const ComplexMatrix& basis1 = r.rho.eig().eigenvectors;
  const ComplexMatrix half = r.rho.power(0.5);
  const auto duality_residual = [&](double s) {
    const ChannelRep adj = s_adjoint(map_t, r.rho, s);
    const ComplexMatrix rho_s = r.rho.power(s);
    const ComplexMatrix rho_1s = r.rho.power(1.0 - s);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      ComplexMatrix x = random_matrix(d, rng);
      x /= x.norm();
      ComplexMatrix y = random_matrix(d, rng);
      y /= y.norm();
      const Complex lhs = (rho_s * x * rho_1s * map_dual.apply(y)).trace();
      const Complex rhs = (rho_s * adj.apply(x) * rho_1s * y).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
  };
  add("duality_s_0", duality_residual(0.0), 1e-10, true);
  add("duality_s_quarter", duality_residual(0.25), 1e-10, true);
  add("duality_s_half", duality_residual(0.5), 1e-10, true);
  {
    const ChannelRep adj_theta = theta_kms_adjoint(map_t, r.rho);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      ComplexMatrix x = random_matrix(d, rng);
      x /= x.norm();
      ComplexMatrix y = random_matrix(d, rng);
      y /= y.norm();
      const ComplexMatrix xs = x.adjoint();
      const Complex lhs =
          (half * theta_conjugate(xs, basis1) * half * map_dual.apply(y)).trace();
      const Complex rhs =
          (half * theta_conjugate(adj_theta.apply(xs), basis1) * half * y).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    add("duality_theta", worst, 1e-10, true);
  }

  const Semigroup adj_sg = theta_kms_adjoint(r.sg, r.rho);
  const ChoiState j_bwd = choi_state(semigroup_map(adj_sg, t_probe), r.rho);
  add("flip_adjoint", trace_norm(j_bwd.matrix - flip_conjugate(j_fwd.matrix)), 1e-10, true);
  {
    const ComplexMatrix omega = omega_rho(r.rho).matrix;
    add("flip_tensor",
        trace_norm(apply_first(map_t, omega) - flip_conjugate(apply_second(map_t, omega))), 1e-10,
        true);
  }
  {
    const ComplexMatrix u = random_unitary(d, rng);
    const ChoiState j_rot = choi_in_basis(map_t, r.rho, u);
    const ComplexMatrix w1 = basis1 * basis1.transpose();
    const ComplexMatrix basis2 = u * basis1;
    const ComplexMatrix w2 = basis2 * basis2.transpose();
    const ComplexMatrix g = w2 * w1.adjoint();
    const ComplexMatrix g_one = kron(g, ComplexMatrix::Identity(d, d));
    add("basis_covariance", trace_norm(j_rot.matrix - g_one * j_fwd.matrix * g_one.adjoint()),
        1e-10, true);
  }
  {
    // Rotating the basis changes only the omega construction; the forward
    // map and its adjoint stay fixed.
    const double s_default = relative_entropy_psd(j_fwd.matrix, j_bwd.matrix).value;
    const ComplexMatrix u = random_unitary(d, rng);
    const ChannelRep adj_map = semigroup_map(adj_sg, t_probe);
    const ChoiState j_fwd_rot = choi_in_basis(map_t, r.rho, u);
    const ChoiState j_bwd_rot = choi_in_basis(adj_map, r.rho, u);
    const double s_rot = relative_entropy_psd(j_fwd_rot.matrix, j_bwd_rot.matrix).value;
    const bool both_inf = std::isinf(s_default) && std::isinf(s_rot);
    add("entropy_basis_invariance", both_inf ? 0.0 : std::abs(s_default - s_rot), 1e-7, true);
    if (std::isfinite(s_default)) {
      add("entropy_symmetric_formula",
          std::abs(s_default - symmetric_formula_entropy(j_fwd.matrix, j_bwd.matrix)), 1e-8, true);
    }
  }

  if (r.circulant.has_value()) {
    const CirculantSpec& spec = *r.circulant;
    {
      const std::vector<ComplexVector> us = u_basis(spec.p, spec.q);
      double worst = 0.0;
      for (std::size_t a = 0; a < us.size(); ++a) {
        for (std::size_t b = 0; b < us.size(); ++b) {
          const Complex ip = us[a].dot(us[b]);
          worst = std::max(worst, std::abs(ip - Complex(a == b ? 1.0 : 0.0, 0.0)));
        }
      }
      add("u_basis_orthonormal", worst, 1e-12, true);
    }
    {
      const Index n = spec.dim();
      ComplexMatrix qmat = ComplexMatrix::Zero(n, n);
      for (Index a = 0; a < n; ++a) {
        const Index m = a / spec.q;
        const Index mn = a % spec.q;
        for (Index b = 0; b < n; ++b) {
          qmat(a, b) = spec.alpha_at(m - b / spec.q, mn - b % spec.q);
        }
        qmat(a, a) -= 1.0;
      }
      const CirculantSpectrum spectrum = circulant_spectrum(spec);
      const ComplexMatrix exp_q = expm(t_probe * qmat);
      const double scale = static_cast<double>(n);
      double worst = 0.0;
      for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
          const Complex predicted =
              spectrum.phi(a / spec.q - b / spec.q, a % spec.q - b % spec.q, t_probe) / scale;
          worst = std::max(worst, std::abs(exp_q(a, b) - predicted));
        }
      }
      add("spectrum_vs_expm", worst, 1e-10, true);
    }
    add("fast_dense_agreement", trace_norm(circulant_choi(spec, t_probe).matrix - j_fwd.matrix),
        1e-9, true);
  }

  try {
    const SqdbReport report = check_theta_sqdb(r.sg, r.rho, ts);
    rows.push_back(VerifyRow{"theta_sqdb_holds", report.max_residual, 1e-8, report.holds, false});
  } catch (const std::invalid_argument&) {
    rows.push_back(VerifyRow{"theta_sqdb_holds", std::numeric_limits<double>::infinity(), 1e-8,
                             false, false});
  }
  {
    const ParityReport report = is_parity_preserving(r.sg, r.rho, ts);
    rows.push_back(
        VerifyRow{"parity_preserving", report.max_residual, 1e-8, report.preserving, false});
  }

  ordered_json failures = ordered_json::array();
  for (const VerifyRow& row : rows) {
    if (row.required && !row.pass) {
      failures.push_back(row.property);
      exit_code = kExitNumerical;
    }
  }
  meta["required_failures"] = failures;

  Column prop{"property", {}};
  Column resid{"residual", {}};
  Column thr{"threshold", {}};
  Column pass{"pass", {}};
  Column req{"required", {}};
  for (const VerifyRow& row : rows) {
    prop.values.emplace_back(row.property);
    resid.values.emplace_back(row.residual);
    thr.values.emplace_back(row.threshold);
    pass.values.emplace_back(row.pass);
    req.values.emplace_back(row.required);
  }
  ResultTable table;
  table.columns.push_back(std::move(prop));
  table.columns.push_back(std::move(resid));
  table.columns.push_back(std::move(thr));
  table.columns.push_back(std::move(pass));
  table.columns.push_back(std::move(req));
  return table;
}

}  // namespace

std::string to_csv(const ResultTable& table) {
  std::string out;
  std::size_t rows = 0;
  for (const Column& c : table.columns) rows = std::max(rows, c.values.size());
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += table.columns[i].name;
  }
  out += '\n';
  for (std::size_t rr = 0; rr < rows; ++rr) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i > 0) out += ',';
      const std::vector<Cell>& values = table.columns[i].values;
      if (rr < values.size()) out += cell_to_csv(values[rr]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ResultTable& table) {
  ordered_json doc;
  doc["metadata"] = table.metadata_json.empty() ? ordered_json(nullptr)
                                                : ordered_json::parse(table.metadata_json);
  doc["columns"] = ordered_json::array();
  for (const Column& c : table.columns) {
    ordered_json col;
    col["name"] = c.name;
    ordered_json values = ordered_json::array();
    for (const Cell& v : c.values) values.push_back(cell_to_json(v));
    col["values"] = std::move(values);
    doc["columns"].push_back(std::move(col));
  }
  return doc.dump(2) + "\n";
}

RunResult run(const ExperimentConfig& config) {
  ordered_json meta = base_metadata(config);
  RunResult result;
  try {
    Realized r = realize(config, config.command != Command::verify);
    switch (config.command) {
      case Command::epr:
        result.table = run_epr(r, config);
        break;
      case Command::relent:
        result.table = run_relent(r, config);
        break;
      case Command::choi:
        result.table = run_choi(r, config);
        break;
      case Command::check_sqdb:
        result.table = run_check_sqdb(r, config);
        break;
      case Command::verify:
        result.table = run_verify(r, config, meta, result.exit_code);
        break;
    }
  } catch (const NumericalFailure& failure) {
    meta["error"] = failure.message;
    if (failure.has_residual) meta["invariance_residual"] = failure.invariance_residual;
    result.table.columns.clear();
    result.exit_code = kExitNumerical;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    meta["error"] = e.what();
    result.table.columns.clear();
    result.exit_code = kExitNumerical;
  } catch (const std::domain_error& e) {
    meta["error"] = e.what();
    result.table.columns.clear();
    result.exit_code = kExitNumerical;
  }
  result.table.metadata_json = meta.dump();
  return result;
}

}  // namespace qmsepr
