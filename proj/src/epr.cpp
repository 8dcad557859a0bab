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

#include "qmsepr/epr.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "qmsepr/parallel.hpp"

namespace qmsepr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared slope machinery: S(t_k) on the geometric grid, one Richardson
// pass on the finite suffix of S(t_k)/t_k.
EprEstimate slope_estimate(const std::function<double(double)>& entropy_at, double t0,
                           int levels) {
  if (t0 <= 0.0) throw std::invalid_argument("epr_slope: t0 must be positive");
  if (levels < 1) throw std::invalid_argument("epr_slope: need at least one level");

  EprEstimate est;
  est.method = EprMethod::slope_fit;
  est.t_grid.resize(levels);
  est.raw_S.resize(levels);
  for (int k = 0; k < levels; ++k) est.t_grid[k] = t0 * std::pow(2.0, -k);
  parallel_for_index(levels, [&](std::size_t k) { est.raw_S[k] = entropy_at(est.t_grid[k]); });

  // Keep the longest suffix of finite values; a kernel obstruction that
  // persists down the grid leaves fewer than two and makes the rate +inf.
  int first_finite = levels;
  for (int k = levels - 1; k >= 0 && std::isfinite(est.raw_S[k]); --k) first_finite = k;
  const int n = levels - first_finite;
  if (n < 1) {
    est.value = kInf;
    est.extrapolation_error = kInf;
    return est;
  }

  std::vector<double> ratio(n);
  for (int k = 0; k < n; ++k)
    ratio[k] = est.raw_S[first_finite + k] / est.t_grid[first_finite + k];
  if (n == 1) {
    est.value = ratio[0];
    est.extrapolation_error = kInf;
    return est;
  }

  std::vector<double> extrapolated(n - 1);
  for (int k = 0; k + 1 < n; ++k) extrapolated[k] = 2.0 * ratio[k + 1] - ratio[k];
  est.value = extrapolated.back();
  est.extrapolation_error = extrapolated.size() >= 2
                                ? std::abs(extrapolated.back() - extrapolated[extrapolated.size() - 2])
                                : std::abs(extrapolated.back() - ratio.back());
  return est;
}

}  // namespace

double relent_semigroup(const Semigroup& sg, const DensityMatrix& rho, double t) {
  const Semigroup adjoint = theta_kms_adjoint(sg, rho);
  const ComplexMatrix j_fwd = choi_state(semigroup_map(sg, t), rho).matrix;
  const ComplexMatrix j_bwd = choi_state(semigroup_map(adjoint, t), rho).matrix;
  return relative_entropy_psd(j_fwd, j_bwd).value;
}

double symmetric_formula_entropy(const ComplexMatrix& j_fwd, const ComplexMatrix& j_bwd) {
  const ComplexMatrix log_fwd = herm_func(j_fwd, HermFunc::log);
  const ComplexMatrix log_bwd = herm_func(j_bwd, HermFunc::log);
  return 0.5 * ((j_fwd - j_bwd) * (log_fwd - log_bwd)).trace().real();
}

ChoiGenerator choi_generator(const Semigroup& sg, const DensityMatrix& rho) {
  const ChannelRep gen = ChannelRep::from_super(sg.generator_super_predual, Side::predual);
  ComplexMatrix m = apply_second(gen, omega_rho(rho).matrix);
  m = (m + m.adjoint()) / 2.0;
  return ChoiGenerator{m, m.trace().real()};
}

EprEstimate epr_slope(const Semigroup& sg, const DensityMatrix& rho, double t0, int levels) {
  const Semigroup adjoint = theta_kms_adjoint(sg, rho);
  const ChoiState omega = omega_rho(rho);
  auto entropy_at = [&](double t) {
    const ChannelRep fwd = semigroup_map(sg, t);
    const ChannelRep bwd = semigroup_map(adjoint, t);
    const ComplexMatrix j_fwd = apply_second(fwd, omega.matrix);
    const ComplexMatrix j_bwd = apply_second(bwd, omega.matrix);
    return relative_entropy_psd(j_fwd, j_bwd).value;
  };
  return slope_estimate(entropy_at, t0, levels);
}

EprEstimate fr_epr(const Semigroup& sg, const DensityMatrix& rho, double t0, int levels) {
  const ChoiState omega = omega_rho(rho);
  auto entropy_at = [&](double t) {
    const ChannelRep map_t = semigroup_map(sg, t);
    const ComplexMatrix fwd = apply_second(map_t, omega.matrix);
    const ComplexMatrix bwd = apply_first(map_t, omega.matrix);
    return relative_entropy_psd(fwd, bwd).value;
  };
  return slope_estimate(entropy_at, t0, levels);
}

ParityReport is_parity_preserving(const Semigroup& sg, const DensityMatrix& rho,
                                  std::span<const double> t_samples) {
  const Index d = sg.dim;
  const ComplexMatrix basis = rho.eig().eigenvectors;

  // Fixed probe family for reproducible residuals.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<ComplexMatrix> probes;
  for (int n = 0; n < 6; ++n) {
    ComplexMatrix a(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    probes.push_back(a / std::max(1.0, a.norm()));
  }

  ParityReport report;
  for (const double t : t_samples) {
    const ComplexMatrix dual_t = semigroup_map(sg, t).to_side(Side::dual).super();
    const ChannelRep dual = ChannelRep::from_super(dual_t, Side::dual);
    for (const auto& a : probes) {
      const ComplexMatrix lhs = theta_conjugate(dual.apply(a), basis);
      const ComplexMatrix rhs = dual.apply(theta_conjugate(a, basis));
      report.max_residual = std::max(report.max_residual, (lhs - rhs).norm());
    }
  }
  report.preserving = report.max_residual <= 1e-8;
  return report;
}

}  // namespace qmsepr
