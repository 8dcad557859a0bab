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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qmsepr/channels.hpp"
#include "qmsepr/choi.hpp"
#include "qmsepr/circulant.hpp"
#include "qmsepr/config.hpp"
#include "qmsepr/density.hpp"
#include "qmsepr/epr.hpp"
#include "qmsepr/linalg.hpp"
#include "qmsepr/run.hpp"

namespace py = pybind11;
using namespace qmsepr;

namespace {

Side side_from_name(const std::string& name) {
  if (name == "dual") return Side::dual;
  if (name == "predual") return Side::predual;
  throw std::invalid_argument("side must be \"dual\" or \"predual\"");
}

CirculantSpec make_circulant(Index p, Index q, std::vector<double> alpha) {
  CirculantSpec spec;
  spec.p = p;
  spec.q = q;
  spec.alpha = std::move(alpha);
  spec.validate();
  return spec;
}

py::dict estimate_to_dict(const EprEstimate& est) {
  py::dict d;
  d["value"] = est.value;
  switch (est.method) {
    case EprMethod::closed_form:
      d["method"] = "closed_form";
      break;
    case EprMethod::generator_limit:
      d["method"] = "generator_limit";
      break;
    case EprMethod::slope_fit:
      d["method"] = "slope_fit";
      break;
  }
  d["t_grid"] = est.t_grid;
  d["raw_S"] = est.raw_S;
  d["extrapolation_error"] = est.extrapolation_error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropy production of quantum Markov semigroups on matrix algebras";
  m.attr("__version__") = "1.0.0";

  m.def("relative_entropy",
        [](const ComplexMatrix& eta, const ComplexMatrix& sigma) {
          const RelEntropyResult r = relative_entropy(make_density(eta), make_density(sigma));
          py::dict d;
          d["value"] = r.value;
          d["support_dim"] = r.support_dim;
          d["kernel_ok"] = r.kernel_ok;
          return d;
        },
        py::arg("eta"), py::arg("sigma"),
        "Von Neumann relative entropy S(eta, sigma) of two density matrices.");

  m.def("relative_entropy_psd",
        [](const ComplexMatrix& a, const ComplexMatrix& b) {
          const RelEntropyResult r = relative_entropy_psd(a, b);
          py::dict d;
          d["value"] = r.value;
          d["support_dim"] = r.support_dim;
          d["kernel_ok"] = r.kernel_ok;
          return d;
        },
        py::arg("a"), py::arg("b"),
        "Relative entropy of positive semidefinite matrices without trace normalization.");

  m.def("omega", [](const ComplexMatrix& rho) { return omega_rho(make_density(rho)).matrix; },
        py::arg("rho"),
        "Rank-one purification projector used as the reference Choi state.");

  m.def("choi_state",
        [](const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho) {
          const ChoiState j =
              choi_state(ChannelRep::from_kraus(kraus, Side::predual), make_density(rho));
          return py::make_tuple(j.matrix, j.trace);
        },
        py::arg("kraus"), py::arg("rho"),
        "Choi state of the map s -> sum K s K* relative to rho; returns (matrix, trace).");

  m.def("kraus_to_super",
        [](const std::vector<ComplexMatrix>& kraus, const std::string& side) {
          return ChannelRep::from_kraus(kraus, side_from_name(side)).super();
        },
        py::arg("kraus"), py::arg("side"),
        "Vectorized superoperator of a Kraus family on the requested side.");

  m.def("gksl_super",
        [](const ComplexMatrix& h, const std::vector<ComplexMatrix>& lindblad_ops,
           const std::string& side) { return gksl_super(make_gksl(h, lindblad_ops), side_from_name(side)); },
        py::arg("H"), py::arg("lindblad_ops"), py::arg("side"),
        "Superoperator of the Lindblad-form generator on the requested side.");

  m.def("semigroup_map_super",
        [](const ComplexMatrix& generator_super_predual, double t) {
          return semigroup_map(make_semigroup_from_predual(generator_super_predual), t).super();
        },
        py::arg("generator_super_predual"), py::arg("t"),
        "Predual superoperator of exp(t L_*).");

  m.def("s_adjoint_super",
        [](const ComplexMatrix& super, const std::string& side, const ComplexMatrix& rho,
           double s) {
          const ChannelRep ch = ChannelRep::from_super(super, side_from_name(side));
          return s_adjoint(ch, make_density(rho), s).super();
        },
        py::arg("super"), py::arg("side"), py::arg("rho"), py::arg("s"),
        "Dual-side superoperator of the s-interpolated adjoint with respect to rho.");

  m.def("theta_kms_adjoint_super",
        [](const ComplexMatrix& super, const std::string& side, const ComplexMatrix& rho) {
          const ChannelRep ch = ChannelRep::from_super(super, side_from_name(side));
          return theta_kms_adjoint(ch, make_density(rho)).super();
        },
        py::arg("super"), py::arg("side"), py::arg("rho"),
        "Dual-side superoperator of the reversing-adjoint map with respect to rho.");

  m.def("relent_semigroup",
        [](const ComplexMatrix& generator_super_predual, const ComplexMatrix& rho, double t) {
          return relent_semigroup(make_semigroup_from_predual(generator_super_predual),
                                  make_density(rho), t);
        },
        py::arg("generator_super_predual"), py::arg("rho"), py::arg("t"),
        "Relative entropy between the forward and reversed Choi states at time t.");

  m.def("epr_slope",
        [](const ComplexMatrix& generator_super_predual, const ComplexMatrix& rho, double t0,
           int levels) {
          return estimate_to_dict(epr_slope(make_semigroup_from_predual(generator_super_predual),
                                            make_density(rho), t0, levels));
        },
        py::arg("generator_super_predual"), py::arg("rho"), py::arg("t0") = 1e-2,
        py::arg("levels") = 6,
        "Entropy production rate as the extrapolated slope of S(t) at small t.");

  m.def("fr_epr",
        [](const ComplexMatrix& generator_super_predual, const ComplexMatrix& rho, double t0,
           int levels) {
          return estimate_to_dict(fr_epr(make_semigroup_from_predual(generator_super_predual),
                                         make_density(rho), t0, levels));
        },
        py::arg("generator_super_predual"), py::arg("rho"), py::arg("t0") = 1e-2,
        py::arg("levels") = 6,
        "Slope estimate on the flip-defined forward/backward density pair.");

  m.def("check_theta_sqdb",
        [](const ComplexMatrix& generator_super_predual, const ComplexMatrix& rho,
           const std::vector<double>& t_samples) {
          const SqdbReport r = check_theta_sqdb(make_semigroup_from_predual(generator_super_predual),
                                                make_density(rho), t_samples);
          py::dict d;
          d["holds"] = r.holds;
          d["max_residual"] = r.max_residual;
          d["residuals"] = r.residuals;
          return d;
        },
        py::arg("generator_super_predual"), py::arg("rho"), py::arg("t_samples"),
        "Detailed-balance residuals of the semigroup against its reversing adjoint.");

  m.def("circulant_generator_super",
        [](Index p, Index q, const std::vector<double>& alpha) {
          return circulant_generator(make_circulant(p, q, alpha)).generator_super_predual;
        },
        py::arg("p"), py::arg("q"), py::arg("alpha"),
        "Predual generator superoperator of the jump semigroup on Z_p x Z_q.");

  m.def("circulant_choi",
        [](Index p, Index q, const std::vector<double>& alpha, double t) {
          return circulant_choi(make_circulant(p, q, alpha), t).matrix;
        },
        py::arg("p"), py::arg("q"), py::arg("alpha"), py::arg("t"),
        "Choi state of the circulant semigroup assembled from its spectrum.");

  m.def("closed_form_epr",
        [](Index p, Index q, const std::vector<double>& alpha) {
          return closed_form_epr(make_circulant(p, q, alpha)).value;
        },
        py::arg("p"), py::arg("q"), py::arg("alpha"),
        "Closed-form entropy production rate of a circulant jump distribution.");

  m.def("run_config",
        [](const std::string& text) {
          const ExperimentConfig config = parse_config(text);
          const RunResult result = run(config);
          const std::string payload = config.output.format == OutputFormat::csv
                                          ? to_csv(result.table)
                                          : to_json(result.table);
          return py::make_tuple(payload, result.exit_code);
        },
        py::arg("text"),
        "Run a JSON experiment description; returns (serialized table, exit code).");
}
