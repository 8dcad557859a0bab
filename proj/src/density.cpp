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

#include "qmsepr/density.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmsepr {

namespace {

constexpr double kFaithfulTol = 1e-10;
constexpr double kKernelMassTol = 1e-9;

RelEntropyResult relent_from_eigs(const EigDecomposition& eta_eig, const ComplexMatrix& eta,
                                  const EigDecomposition& sigma_eig) {
  const Index d = eta_eig.eigenvalues.size();
  if (sigma_eig.eigenvalues.size() != d)
    throw std::invalid_argument("relative_entropy: dimension mismatch");

  RelEntropyResult out;

  // Kernel of sigma, scale-relative.
  const double sigma_top = sigma_eig.eigenvalues.size() ? sigma_eig.eigenvalues.maxCoeff() : 0.0;
  const double sigma_clip = 1e-12 * std::max(sigma_top, 0.0);
  double kernel_mass = 0.0;
  double eta_log_sigma = 0.0;
  for (Index j = 0; j < d; ++j) {
    const double s = sigma_eig.eigenvalues(j);
    const ComplexVector w = sigma_eig.eigenvectors.col(j);
    const double mass = std::real(w.dot(eta * w));  // <w, eta w>
    if (s <= sigma_clip) {
      kernel_mass += mass;
    } else {
      ++out.support_dim;
      eta_log_sigma += mass * std::log(s);
    }
  }
  if (kernel_mass > kKernelMassTol) {
    out.value = std::numeric_limits<double>::infinity();
    out.kernel_ok = false;
    return out;
  }

  double eta_log_eta = 0.0;  // 0 log 0 = 0
  const double eta_clip = clip_tolerance(eta_eig.eigenvalues);
  for (Index i = 0; i < d; ++i) {
    const double lam = eta_eig.eigenvalues(i);
    if (lam > eta_clip) eta_log_eta += lam * std::log(lam);
  }

  out.value = std::max(0.0, eta_log_eta - eta_log_sigma);
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("make_density: matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("make_density: matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10)
    throw std::invalid_argument("make_density: trace is not 1");
  eig_ = hermitian_eig(m);
  if (eig_.eigenvalues.minCoeff() < -1e-12)
    throw std::invalid_argument("make_density: spectrum has a negative eigenvalue");
  matrix_ = (m + m.adjoint()) / 2.0;
}

ComplexMatrix DensityMatrix::power(double s) const {
  const double clip = clip_tolerance(eig_.eigenvalues);
  RealVector mapped(dim());
  for (Index i = 0; i < dim(); ++i) {
    const double lam = eig_.eigenvalues(i);
    if (lam <= clip) {
      if (s < 0.0)
        throw std::domain_error("DensityMatrix::power: negative power of a non-faithful state");
      mapped(i) = s == 0.0 ? 1.0 : 0.0;
    } else {
      mapped(i) = std::pow(lam, s);
    }
  }
  return eig_.eigenvectors * mapped.asDiagonal() * eig_.eigenvectors.adjoint();
}

DensityMatrix make_density(const ComplexMatrix& m) { return DensityMatrix(m); }

bool is_faithful(const DensityMatrix& rho) {
  return rho.eig().eigenvalues.minCoeff() > kFaithfulTol;
}

ComplexMatrix sqrt_density(const DensityMatrix& rho) { return herm_func(rho.eig(), HermFunc::sqrt); }

RelEntropyResult relative_entropy(const DensityMatrix& eta, const DensityMatrix& sigma) {
  return relent_from_eigs(eta.eig(), eta.matrix(), sigma.eig());
}

RelEntropyResult relative_entropy_psd(const ComplexMatrix& eta, const ComplexMatrix& sigma) {
  return relent_from_eigs(hermitian_eig(eta), (eta + eta.adjoint()) / 2.0, hermitian_eig(sigma));
}

}  // namespace qmsepr
