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

#include "qmsepr/linalg.hpp"

namespace qmsepr {

// A validated density matrix: Hermitian (1e-12), unit trace (1e-10),
// spectrum >= -1e-12.  The eigendecomposition is computed once at
// construction and shared read-only afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return matrix_; }
  const EigDecomposition& eig() const { return eig_; }
  Index dim() const { return matrix_.rows(); }

  // rho^s on the support; negative exponents require a faithful state.
  ComplexMatrix power(double s) const;

 private:
  ComplexMatrix matrix_;
  EigDecomposition eig_;
};

DensityMatrix make_density(const ComplexMatrix& m);

// True iff the smallest eigenvalue exceeds 1e-10.
bool is_faithful(const DensityMatrix& rho);

// PSD square root, result^2 = rho up to 1e-11.
ComplexMatrix sqrt_density(const DensityMatrix& rho);

struct RelEntropyResult {
  double value = 0.0;      // +infinity when the kernel inclusion fails
  Index support_dim = 0;   // dimension of the support of sigma
  bool kernel_ok = true;   // eta carried no mass on ker(sigma)
};

// Von Neumann relative entropy S(eta, sigma) = tr(eta log eta - eta log sigma),
// natural logarithm, computed over the support of sigma.  Eigenvalues of
// sigma at or below 1e-12 times its largest eigenvalue count as kernel;
// if eta has more than 1e-9 mass there the result is +infinity.
RelEntropyResult relative_entropy(const DensityMatrix& eta, const DensityMatrix& sigma);

// Same quantity for raw Hermitian PSD inputs (used on Choi states, whose
// spectra may carry roundoff of order 1e-11 that make_density would reject).
RelEntropyResult relative_entropy_psd(const ComplexMatrix& eta, const ComplexMatrix& sigma);

}  // namespace qmsepr
