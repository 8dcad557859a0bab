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

#include "qmsepr/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace qmsepr {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

// Side length d of a matrix living on h (x) h, erroring unless dim = d^2.
Index tensor_side(const ComplexMatrix& m, const char* who) {
  require_square(m, who);
  const Index dim = m.rows();
  const Index d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dim))));
  if (d * d != dim)
    throw std::invalid_argument(std::string(who) + ": dimension is not a perfect square");
  return d;
}

void require_unitary(const ComplexMatrix& u, const char* who) {
  require_square(u, who);
  const Index d = u.rows();
  const double err = (u.adjoint() * u - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > 1e-10)
    throw std::invalid_argument(std::string(who) + ": basis/operator is not unitary");
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "kron");
  require_square(b, "kron");
  const Index da = a.rows(), db = b.rows();
  ComplexMatrix out(da * db, da * db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, TensorFactor which) {
  const Index d = tensor_side(m, "partial_trace");
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  if (which == TensorFactor::first) {
    // out(k,l) = sum_i M[(i,k),(i,l)]
    for (Index i = 0; i < d; ++i) out += m.block(i * d, i * d, d, d);
  } else {
    // out(i,j) = sum_k M[(i,k),(j,k)]
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) out(i, j) = m.block(i * d, j * d, d, d).trace();
  }
  return out;
}

ComplexMatrix flip_matrix(Index d) {
  if (d < 1) throw std::invalid_argument("flip_matrix: dimension must be positive");
  ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  return f;
}

ComplexMatrix flip_conjugate(const ComplexMatrix& m) {
  const Index d = tensor_side(m, "flip_conjugate");
  ComplexMatrix out(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) out(j * d + i, l * d + k) = m(i * d + j, k * d + l);
  return out;
}

ComplexMatrix theta_conjugate(const ComplexMatrix& x, const ComplexMatrix& basis) {
  require_square(x, "theta_conjugate");
  require_unitary(basis, "theta_conjugate");
  if (x.rows() != basis.rows())
    throw std::invalid_argument("theta_conjugate: dimension mismatch with basis");
  // With theta(w) = W conj(w), W = V V^T (V = basis columns), the map
  // theta x* theta works out to W x^T W*.
  const ComplexMatrix w = basis * basis.transpose();
  return w * x.transpose() * w.adjoint();
}

ComplexMatrix theta_superoperator(const ComplexMatrix& basis) {
  require_unitary(basis, "theta_superoperator");
  const Index d = basis.rows();
  const ComplexMatrix w = basis * basis.transpose();
  // vec(W x^T W*) = (conj(W) kron W) K vec(x), K the vec-transposition matrix.
  ComplexMatrix k = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) k(j + i * d, i + j * d) = 1.0;
  return kron(w.conjugate(), w) * k;
}

EigDecomposition hermitian_eig(const ComplexMatrix& a) {
  require_square(a, "hermitian_eig");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((a + a.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");

  const Index d = a.rows();
  EigDecomposition out;
  out.eigenvalues = RealVector(d);
  out.eigenvectors = ComplexMatrix(d, d);
  // Eigen returns ascending order; flip to descending and fix the phase of
  // each eigenvector so results are reproducible across runs.
  for (Index c = 0; c < d; ++c) {
    out.eigenvalues(c) = solver.eigenvalues()(d - 1 - c);
    ComplexVector v = solver.eigenvectors().col(d - 1 - c);
    for (Index r = 0; r < d; ++r) {
      if (std::abs(v(r)) > 1e-12) {
        v *= std::conj(v(r)) / std::abs(v(r));
        break;
      }
    }
    out.eigenvectors.col(c) = v;
  }
  return out;
}

double clip_tolerance(const RealVector& eigenvalues) {
  const double top = eigenvalues.size() > 0 ? eigenvalues.maxCoeff() : 0.0;
  return 1e-12 * std::max(top, 1.0);
}

ComplexMatrix herm_func(const EigDecomposition& eig, HermFunc f) {
  const Index d = eig.eigenvalues.size();
  const double clip = clip_tolerance(eig.eigenvalues);
  RealVector mapped(d);
  for (Index i = 0; i < d; ++i) {
    const double lam = eig.eigenvalues(i);
    switch (f) {
      case HermFunc::exp:
        mapped(i) = std::exp(lam);
        break;
      case HermFunc::sqrt:
        if (lam < -clip) throw std::domain_error("herm_func: negative eigenvalue under sqrt");
        mapped(i) = std::sqrt(std::max(lam, 0.0));
        break;
      case HermFunc::log:
        if (lam < -clip) throw std::domain_error("herm_func: negative eigenvalue under log");
        // Eigenvalues in the clipped kernel are excluded from the support.
        mapped(i) = lam > clip ? std::log(lam) : 0.0;
        break;
    }
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix herm_func(const ComplexMatrix& a, HermFunc f) {
  return herm_func(hermitian_eig(a), f);
}

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square(a, "expm");
  return a.exp();  // scaling-and-squaring Pade, no eigendecomposition
}

ComplexMatrix dft_matrix(Index p) {
  if (p < 1) throw std::invalid_argument("dft_matrix: order must be positive");
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  ComplexMatrix f(p, p);
  for (Index k = 0; k < p; ++k)
    for (Index l = 0; l < p; ++l) {
      const Index e = (k * l) % p;  // reduce the phase before forming it
      f(k, l) = norm * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) /
                                           static_cast<double>(p));
    }
  return f;
}

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v) {
  const Index d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw std::invalid_argument("unvec: length is not a perfect square");
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

double trace_norm(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

}  // namespace qmsepr
