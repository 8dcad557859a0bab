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

// End-to-end acceptance suite.  Each criterion prints one [PASS]/[FAIL]
// line; the process exits with the number of failed criteria.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmsepr/channels.hpp"
#include "qmsepr/choi.hpp"
#include "qmsepr/circulant.hpp"
#include "qmsepr/density.hpp"
#include "qmsepr/epr.hpp"
#include "qmsepr/linalg.hpp"
#include "support/test_helpers.hpp"

using namespace qmsepr;
using testing::random_circulant;
using testing::random_cp_kraus;
using testing::random_cptp_kraus;
using testing::random_faithful_density;
using testing::random_gksl;
using testing::random_matrix;
using testing::random_symmetric_circulant;
using testing::random_unitary;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

DensityMatrix uniform_state(Index d) {
  return make_density(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

// Shapes with p*q <= 12 on which the pairing m -> p - m moves at least one
// index, so generic draws have a nonzero rate.
constexpr std::array<std::pair<Index, Index>, 12> kShapes = {{{3, 1},
                                                              {4, 1},
                                                              {5, 1},
                                                              {6, 1},
                                                              {7, 1},
                                                              {3, 2},
                                                              {4, 2},
                                                              {5, 2},
                                                              {2, 3},
                                                              {2, 5},
                                                              {3, 3},
                                                              {4, 3}}};

CirculantSpec draw_spec(Index p, Index q, std::mt19937_64& rng) {
  for (int tries = 0; tries < 100; ++tries) {
    const CirculantSpec spec = random_circulant(p, q, 0.05, rng);
    const double closed = closed_form_epr(spec).value;
    if (std::isfinite(closed) && closed > 1e-3) return spec;
  }
  throw std::runtime_error("no usable jump distribution after 100 draws");
}

Outcome criterion_rate_oracle() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  const int total = 24;
  for (int k = 0; k < total; ++k) {
    const auto [p, q] = kShapes[static_cast<std::size_t>(k) % kShapes.size()];
    const CirculantSpec spec = draw_spec(p, q, rng);
    const double closed = closed_form_epr(spec).value;
    const EprEstimate slope = epr_slope(circulant_generator(spec), uniform_state(spec.dim()));
    worst = std::max(worst, std::abs(slope.value - closed) / closed);
  }
  return {worst <= 5e-3,
          fmt("%d random jump specs, worst relative error %.2e (limit 5.0e-03)", total, worst)};
}

Outcome criterion_symmetric_balance() {
  std::mt19937_64 rng(1002);
  double worst_s = 0.0;
  double worst_rate = 0.0;
  const std::array<std::pair<Index, Index>, 4> shapes = {{{3, 1}, {4, 1}, {5, 1}, {3, 2}}};
  for (const auto& [p, q] : shapes) {
    const CirculantSpec spec = random_symmetric_circulant(p, q, rng);
    const Semigroup sg = circulant_generator(spec);
    const DensityMatrix rho = uniform_state(spec.dim());
    for (const double t : {0.01, 0.1, 1.0}) {
      worst_s = std::max(worst_s, std::abs(relent_semigroup(sg, rho, t)));
    }
    worst_rate = std::max(worst_rate, std::abs(epr_slope(sg, rho).value));
    if (closed_form_epr(spec).value != 0.0) {
      return {false, "closed form is nonzero on a symmetric spec"};
    }
  }
  return {worst_s <= 1e-9 && worst_rate <= 1e-8,
          fmt("worst S(t) %.2e (limit 1e-09), worst rate %.2e (limit 1e-08)", worst_s,
              worst_rate)};
}

Outcome criterion_trace_identity() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  int count = 0;
  for (Index d = 2; d <= 4; ++d) {
    for (int k = 0; k < 34; ++k) {
      const ChannelRep ch = ChannelRep::from_kraus(random_cp_kraus(d, 3, rng), Side::predual);
      const DensityMatrix rho = random_faithful_density(d, rng);
      const ChoiState j = choi_state(ch, rho);
      const double expected = ch.apply(rho.matrix()).trace().real();
      worst = std::max(worst, std::abs(j.trace - expected));
      ++count;
    }
  }
  return {worst <= 1e-10, fmt("%d random CP maps, worst |tr J - tr of image| %.2e", count, worst)};
}

Outcome criterion_flip_identities() {
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  for (Index d = 2; d <= 4; ++d) {
    for (int k = 0; k < 4; ++k) {
      const ChannelRep ch = ChannelRep::from_kraus(random_cptp_kraus(d, 3, rng), Side::predual);
      const DensityMatrix rho = random_faithful_density(d, rng);
      const ChannelRep reversed = theta_kms_adjoint(ch, rho).to_side(Side::predual);
      const ComplexMatrix j_fwd = choi_state(ch, rho).matrix;
      const ComplexMatrix j_rev = choi_state(reversed, rho).matrix;
      worst = std::max(worst, trace_norm(j_rev - flip_conjugate(j_fwd)));

      const ComplexMatrix omega = omega_rho(rho).matrix;
      worst = std::max(
          worst, trace_norm(apply_first(ch, omega) - flip_conjugate(apply_second(ch, omega))));
    }
  }
  return {worst <= 1e-10, fmt("worst trace-norm residual %.2e (limit 1e-10)", worst)};
}

Outcome criterion_basis_invariance() {
  std::mt19937_64 rng(1005);
  double worst_cov = 0.0;
  double worst_ent = 0.0;
  for (Index d = 2; d <= 3; ++d) {
    for (int k = 0; k < 4; ++k) {
      const Semigroup sg = make_semigroup(random_gksl(d, 2, rng));
      const DensityMatrix rho = random_faithful_density(d, rng);
      const double t = 0.8;
      const ChannelRep fwd = semigroup_map(sg, t);
      const ChannelRep bwd = theta_kms_adjoint(fwd, rho).to_side(Side::predual);
      const ComplexMatrix u = random_unitary(d, rng);

      const ChoiState base = choi_state(fwd, rho);
      const ChoiState rot = choi_in_basis(fwd, rho, u);
      const ComplexMatrix w1 = base.basis * base.basis.transpose();
      const ComplexMatrix w2 = rot.basis * rot.basis.transpose();
      const ComplexMatrix g_one = kron(w2 * w1.adjoint(), ComplexMatrix::Identity(d, d));
      worst_cov =
          std::max(worst_cov, trace_norm(rot.matrix - g_one * base.matrix * g_one.adjoint()));

      const double s_default =
          relative_entropy_psd(base.matrix, choi_state(bwd, rho).matrix).value;
      const double s_rot =
          relative_entropy_psd(rot.matrix, choi_in_basis(bwd, rho, u).matrix).value;
      const bool both_inf = std::isinf(s_default) && std::isinf(s_rot);
      worst_ent = std::max(worst_ent, both_inf ? 0.0 : std::abs(s_default - s_rot));
    }
  }
  return {worst_cov <= 1e-10 && worst_ent <= 1e-7,
          fmt("worst covariance residual %.2e (limit 1e-10), entropy shift %.2e (limit 1e-07)",
              worst_cov, worst_ent)};
}

Outcome criterion_choi_spectrum() {
  std::mt19937_64 rng(1006);
  std::vector<CirculantSpec> specs;
  {
    CirculantSpec ref;
    ref.p = 3;
    ref.q = 1;
    ref.alpha = {0.0, 0.7, 0.3};
    specs.push_back(ref);
    specs.push_back(draw_spec(3, 2, rng));
  }
  double worst_eig = 0.0;
  double worst_ortho = 0.0;
  for (const CirculantSpec& spec : specs) {
    const Index n = spec.dim();
    const Semigroup sg = circulant_generator(spec);
    const CirculantSpectrum spectrum = circulant_spectrum(spec);
    const DensityMatrix rho = uniform_state(n);

    const std::vector<ComplexVector> us = u_basis(spec.p, spec.q);
    for (std::size_t a = 0; a < us.size(); ++a) {
      for (std::size_t b = 0; b < us.size(); ++b) {
        const Complex ip = us[a].dot(us[b]);
        worst_ortho = std::max(worst_ortho, std::abs(ip - Complex(a == b ? 1.0 : 0.0, 0.0)));
      }
    }

    for (const double t : {0.1, 1.0}) {
      const ChoiState dense = choi_state(semigroup_map(sg, t), rho);
      const EigDecomposition eig = hermitian_eig(dense.matrix);
      std::vector<double> weights(static_cast<std::size_t>(n * n), 0.0);
      for (Index m = 0; m < spec.p; ++m) {
        for (Index l = 0; l < spec.q; ++l) {
          weights[static_cast<std::size_t>(m * spec.q + l)] =
              (spectrum.phi(m, l, t) / static_cast<double>(n)).real();
        }
      }
      std::sort(weights.begin(), weights.end(), [](double a, double b) { return a > b; });
      for (Index i = 0; i < n * n; ++i) {
        worst_eig = std::max(worst_eig,
                             std::abs(eig.eigenvalues(i) - weights[static_cast<std::size_t>(i)]));
      }
    }
  }
  return {worst_eig <= 1e-10 && worst_ortho <= 1e-12,
          fmt("worst eigenvalue gap %.2e (limit 1e-10), orthonormality %.2e (limit 1e-12)",
              worst_eig, worst_ortho)};
}

Outcome criterion_duality() {
  std::mt19937_64 rng(1007);
  double worst = 0.0;

  const auto probe = [&rng, &worst](const ChannelRep& map_t, const DensityMatrix& rho) {
    const Index d = map_t.dim();
    const ChannelRep dual = map_t.to_side(Side::dual);
    const ComplexMatrix& basis = rho.eig().eigenvectors;
    const ComplexMatrix half = rho.power(0.5);

    for (const double s : {0.0, 0.25, 0.5}) {
      const ChannelRep adj = s_adjoint(map_t, rho, s);
      const ComplexMatrix rho_s = rho.power(s);
      const ComplexMatrix rho_1s = rho.power(1.0 - s);
      for (int k = 0; k < 100; ++k) {
        ComplexMatrix x = random_matrix(d, rng);
        x /= x.norm();
        ComplexMatrix y = random_matrix(d, rng);
        y /= y.norm();
        const Complex lhs = (rho_s * x * rho_1s * dual.apply(y)).trace();
        const Complex rhs = (rho_s * adj.apply(x) * rho_1s * y).trace();
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }

    const ChannelRep adj_theta = theta_kms_adjoint(map_t, rho);
    for (int k = 0; k < 100; ++k) {
      ComplexMatrix x = random_matrix(d, rng);
      x /= x.norm();
      ComplexMatrix y = random_matrix(d, rng);
      y /= y.norm();
      const ComplexMatrix xs = x.adjoint();
      const Complex lhs = (half * theta_conjugate(xs, basis) * half * dual.apply(y)).trace();
      const Complex rhs = (half * theta_conjugate(adj_theta.apply(xs), basis) * half * y).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  };

  const Semigroup gksl_sg = make_semigroup(random_gksl(3, 2, rng));
  probe(semigroup_map(gksl_sg, 0.4), random_faithful_density(3, rng));

  CirculantSpec spec;
  spec.p = 3;
  spec.q = 1;
  spec.alpha = {0.0, 0.7, 0.3};
  probe(semigroup_map(circulant_generator(spec), 0.7), uniform_state(3));

  return {worst <= 1e-10, fmt("2 channels, 100 pairs per relation, worst residual %.2e", worst)};
}

Outcome criterion_circulant_invariance() {
  std::mt19937_64 rng(1008);
  std::vector<CirculantSpec> specs;
  {
    CirculantSpec ref;
    ref.p = 3;
    ref.q = 1;
    ref.alpha = {0.0, 0.7, 0.3};
    specs.push_back(ref);
    specs.push_back(draw_spec(3, 2, rng));
    specs.push_back(draw_spec(4, 3, rng));
  }
  double worst = 0.0;
  for (const CirculantSpec& spec : specs) {
    const Semigroup sg = circulant_generator(spec);
    const ComplexMatrix uniform =
        ComplexMatrix::Identity(spec.dim(), spec.dim()) / static_cast<double>(spec.dim());
    for (const double t : {0.1, 1.0, 10.0}) {
      worst = std::max(worst, trace_norm(semigroup_map(sg, t).apply(uniform) - uniform));
    }
  }
  return {worst <= 1e-10, fmt("worst trace-norm drift %.2e (limit 1e-10)", worst)};
}

Outcome criterion_flip_rate_equivalence() {
  std::mt19937_64 rng(1009);
  const std::array<std::pair<Index, Index>, 6> shapes = {
      {{3, 1}, {4, 1}, {5, 1}, {3, 2}, {2, 3}, {3, 3}}};
  double worst = 0.0;
  for (const auto& [p, q] : shapes) {
    const CirculantSpec spec = draw_spec(p, q, rng);
    const Semigroup sg = circulant_generator(spec);
    const DensityMatrix rho = uniform_state(spec.dim());
    if (!is_parity_preserving(sg, rho, std::vector<double>{0.1, 1.0}).preserving) {
      return {false, fmt("shape (%lld, %lld) unexpectedly breaks parity", static_cast<long long>(p),
                         static_cast<long long>(q))};
    }
    const double slope = epr_slope(sg, rho).value;
    const double flip = fr_epr(sg, rho).value;
    worst = std::max(worst, std::abs(slope - flip));
  }
  return {worst <= 1e-6, fmt("6 parity-preserving specs, worst |difference| %.2e (limit 1e-06)",
                             worst)};
}

Outcome criterion_zero_alpha_cli() {
  CirculantSpec spec;
  spec.p = 3;
  spec.q = 1;
  spec.alpha = {0.0, 0.0, 1.0};
  if (!std::isinf(closed_form_epr(spec).value)) {
    return {false, "closed form failed to diverge on a one-sided zero"};
  }

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path cfg = dir / "qmsepr-acceptance-zero-alpha.json";
  const fs::path out = dir / "qmsepr-acceptance-zero-alpha.csv";
  {
    std::ofstream f(cfg);
    f << R"({
  "model": {"circulant": {"p": 3, "q": 1, "alpha": [0.0, 0.0, 1.0]}},
  "command": "epr",
  "t_grid": {"t0": 0.01, "levels": 6},
  "output": {"format": "csv"}
})";
  }
  std::error_code ec;
  fs::remove(out, ec);

  const std::string cmd =
      std::string("\"") + QMS_EPR_BIN + "\" --config \"" + cfg.string() + "\" --out \"" +
      out.string() + "\"";
  const int rc = std::system(cmd.c_str());
  if (rc != 0) {
    return {false, fmt("CLI exited with status %d instead of 0", rc)};
  }

  std::ifstream f(out);
  if (!f) return {false, "CLI produced no output file"};
  std::stringstream buffer;
  buffer << f.rdbuf();
  const std::string csv = buffer.str();
  if (csv.find("epr_closed") == std::string::npos) {
    return {false, "CSV is missing the closed-form column"};
  }
  if (csv.find("inf") == std::string::npos) {
    return {false, "CSV does not flag the infinite rate"};
  }
  return {true, "closed form diverges, CLI prints \"inf\" and exits 0"};
}

int report(int id, const char* label, const Outcome& outcome) {
  std::printf("[%s] criterion %d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL", id, label,
              outcome.detail.c_str());
  std::fflush(stdout);
  return outcome.pass ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  failures += report(1, "slope estimate matches the circulant closed form",
                     criterion_rate_oracle());
  failures += report(2, "symmetric jump rates give detailed balance and zero rate",
                     criterion_symmetric_balance());
  failures += report(3, "choi trace equals the trace of the mapped reference state",
                     criterion_trace_identity());
  failures += report(4, "flip conjugation exchanges forward and reversed choi states",
                     criterion_flip_identities());
  failures += report(5, "basis rotations act covariantly and leave the entropy fixed",
                     criterion_basis_invariance());
  failures += report(6, "circulant choi spectrum matches the dft weights",
                     criterion_choi_spectrum());
  failures += report(7, "interpolated and reversing-adjoint dualities hold",
                     criterion_duality());
  failures += report(8, "the uniform state is invariant for circulant dynamics",
                     criterion_circulant_invariance());
  failures += report(9, "flip-form and adjoint-form rates agree under parity",
                     criterion_flip_rate_equivalence());
  failures += report(10, "a one-sided zero jump rate is flagged as infinite",
                     criterion_zero_alpha_cli());

  if (failures == 0) {
    std::printf("all 10 criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", failures);
  }
  return failures;
}
