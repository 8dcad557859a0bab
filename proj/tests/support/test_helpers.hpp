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
#include <cmath>
#include <random>
#include <vector>

#include "qmsepr/channels.hpp"
#include "qmsepr/circulant.hpp"
#include "qmsepr/density.hpp"
#include "qmsepr/linalg.hpp"

namespace qmsepr::testing {

inline ComplexMatrix random_matrix(Index d, std::mt19937_64& rng) {
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

inline ComplexMatrix random_hermitian(Index d, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(d, rng);
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_unitary(Index d, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(d, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= mag > 0 ? rii / mag : Complex(1.0, 0.0);
  }
  return q;
}

// Strictly positive spectrum by construction.
inline DensityMatrix random_faithful_density(Index d, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(d, rng);
  ComplexMatrix m = a * a.adjoint() + 0.2 * ComplexMatrix::Identity(d, d);
  m /= m.trace().real();
  return make_density(m);
}

// Completely positive, generally not trace preserving.
inline std::vector<ComplexMatrix> random_cp_kraus(Index d, int n_ops, std::mt19937_64& rng) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(n_ops));
  for (int k = 0; k < n_ops; ++k) {
    kraus.push_back(0.6 * random_matrix(d, rng));
  }
  return kraus;
}

// Trace preserving by right-multiplying with (sum K*K)^{-1/2}.
inline std::vector<ComplexMatrix> random_cptp_kraus(Index d, int n_ops, std::mt19937_64& rng) {
  std::vector<ComplexMatrix> kraus = random_cp_kraus(d, n_ops, rng);
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& k : kraus) s += k.adjoint() * k;
  const EigDecomposition eig = hermitian_eig(s);
  const ComplexMatrix inv_sqrt = eig.eigenvectors *
                                 eig.eigenvalues.cwiseInverse().cwiseSqrt().cast<Complex>().asDiagonal() *
                                 eig.eigenvectors.adjoint();
  for (ComplexMatrix& k : kraus) k = k * inv_sqrt;
  return kraus;
}

inline GkslGenerator random_gksl(Index d, int n_ops, std::mt19937_64& rng) {
  const ComplexMatrix h = random_hermitian(d, rng);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(n_ops));
  for (int k = 0; k < n_ops; ++k) ops.push_back(0.7 * random_matrix(d, rng));
  return make_gksl(h, ops);
}

// Jump weights with every off-origin entry at least alpha_min.
inline CirculantSpec random_circulant(Index p, Index q, double alpha_min, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(1.0, 2.0);
  const Index n = p * q;
  std::vector<double> raw(static_cast<std::size_t>(n), 0.0);
  double sum = 0.0;
  for (Index i = 1; i < n; ++i) {
    raw[static_cast<std::size_t>(i)] = unif(rng);
    sum += raw[static_cast<std::size_t>(i)];
  }
  const double free_mass = 1.0 - alpha_min * static_cast<double>(n - 1);
  std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
  for (Index i = 1; i < n; ++i) {
    alpha[static_cast<std::size_t>(i)] = alpha_min + free_mass * raw[static_cast<std::size_t>(i)] / sum;
  }
  return CirculantSpec{p, q, std::move(alpha)};
}

// alpha(m, n) = alpha(p - m, q - n) exactly.
inline CirculantSpec random_symmetric_circulant(Index p, Index q, std::mt19937_64& rng) {
  CirculantSpec spec = random_circulant(p, q, 0.01, rng);
  std::vector<double> sym(spec.alpha.size(), 0.0);
  double total = 0.0;
  for (Index m = 0; m < p; ++m) {
    for (Index n = 0; n < q; ++n) {
      if (m == 0 && n == 0) continue;
      const double v = 0.5 * (spec.alpha_at(m, n) + spec.alpha_at(p - m, q - n));
      sym[static_cast<std::size_t>(m * q + n)] = v;
      total += v;
    }
  }
  for (double& v : sym) v /= total;
  return CirculantSpec{p, q, std::move(sym)};
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qmsepr::testing
