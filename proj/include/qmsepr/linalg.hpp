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

#include <Eigen/Dense>
#include <complex>

namespace qmsepr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Tensor-product bookkeeping is row-major everywhere: the basis vector
// e_i (x) e_j of C^{d1} (x) C^{d2} sits at index i*d2 + j.  All modules
// share this convention.
enum class TensorFactor { first, second };

enum class HermFunc { log, sqrt, exp };

// Eigendecomposition of a Hermitian matrix with deterministic output:
// eigenvalues sorted descending, each eigenvector rescaled so that its
// first component of magnitude above 1e-12 is real and positive.
struct EigDecomposition {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // unitary, one eigenvector per column
};

// Kronecker product of square matrices, (A kron B)[i*db+k, j*db+l] = A(i,j)B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace over one tensor factor of a matrix on h (x) h.  dim must be a
// perfect square.  tr(partial_trace(M, .)) = tr(M).
ComplexMatrix partial_trace(const ComplexMatrix& m, TensorFactor which);

// The flip (swap) operator F on C^d (x) C^d, F(u (x) v) = v (x) u.
ComplexMatrix flip_matrix(Index d);

// F * M * F for M on h (x) h; an involution that sends A (x) B to B (x) A.
ComplexMatrix flip_conjugate(const ComplexMatrix& m);

// The reversing operation Theta(x) = theta x* theta, where theta is the
// antiunitary conjugation fixing the given orthonormal basis (columns of
// `basis`).  In that basis this is plain transposition; as an operator on
// matrices it is linear, anti-multiplicative and involutive.
ComplexMatrix theta_conjugate(const ComplexMatrix& x, const ComplexMatrix& basis);

// The d^2 x d^2 matrix implementing theta_conjugate(., basis) on
// column-stacked vectorizations.  Hermitian, unitary, involutive.
ComplexMatrix theta_superoperator(const ComplexMatrix& basis);

EigDecomposition hermitian_eig(const ComplexMatrix& a);

// Scale-relative clip threshold for PSD domain checks:
// 1e-12 * max(largest eigenvalue, 1).
double clip_tolerance(const RealVector& eigenvalues);

// f applied on the spectrum of a Hermitian matrix.  For log the
// eigenvalues at or below the clip threshold are excluded from the
// support (0 log 0 = 0); sqrt clamps roundoff-negative eigenvalues to 0.
// Negative eigenvalues beyond the clip threshold are a domain error for
// log and sqrt.
ComplexMatrix herm_func(const ComplexMatrix& a, HermFunc f);
ComplexMatrix herm_func(const EigDecomposition& eig, HermFunc f);

// Matrix exponential by scaling and squaring with a high-order Pade
// approximant; valid for non-normal input (superoperators usually are).
ComplexMatrix expm(const ComplexMatrix& a);

// Unitary DFT matrix F_p with entries omega^{kl}/sqrt(p), omega = e^{2 pi i/p}.
ComplexMatrix dft_matrix(Index p);

// Column-stacking vectorization and its inverse, the convention behind
// every superoperator in this library: vec(AXB) = (B^T kron A) vec(X).
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v);

// Trace norm (sum of singular values).
double trace_norm(const ComplexMatrix& a);

}  // namespace qmsepr
