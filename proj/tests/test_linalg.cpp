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
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qmsepr/linalg.hpp"
#include "support/test_helpers.hpp"

using namespace qmsepr;
using testing::max_abs_diff;
using testing::random_hermitian;
using testing::random_matrix;
using testing::random_unitary;

TEST_CASE("kron entry layout") {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = random_matrix(3, rng);
  const ComplexMatrix b = random_matrix(2, rng);
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index r = 0; r < 2; ++r)
        for (Index c = 0; c < 2; ++c)
          CHECK(std::abs(k(i * 2 + r, j * 2 + c) - a(i, j) * b(r, c)) == 0.0);

  ComplexMatrix shift(2, 2);
  shift << 0, 1, 0, 0;
  const ComplexMatrix s = kron(shift, ComplexMatrix::Identity(2, 2));
  CHECK(s.block(0, 2, 2, 2).isIdentity(0.0));
  CHECK(s.block(0, 0, 2, 2).isZero(0.0));
  CHECK(s.block(2, 0, 2, 4).isZero(0.0));
}

TEST_CASE("vec column stacking and the kron action identity") {
  std::mt19937_64 rng(12);
  const ComplexMatrix x = random_matrix(3, rng);
  const ComplexVector v = vec(x);
  CHECK(v(0) == x(0, 0));
  CHECK(v(1) == x(1, 0));
  CHECK(v(3) == x(0, 1));
  CHECK(max_abs_diff(unvec(v), x) == 0.0);

  const ComplexMatrix a = random_matrix(3, rng);
  const ComplexMatrix b = random_matrix(3, rng);
  const ComplexVector lhs = vec(a * x * b);
  const ComplexVector rhs = kron(b.transpose(), a) * vec(x);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("partial trace of a pure tensor") {
  std::mt19937_64 rng(13);
  const ComplexMatrix a = random_matrix(3, rng);
  const ComplexMatrix b = random_matrix(3, rng);
  const ComplexMatrix m = kron(a, b);
  CHECK(max_abs_diff(partial_trace(m, TensorFactor::second), b.trace() * a) < 1e-13);
  CHECK(max_abs_diff(partial_trace(m, TensorFactor::first), a.trace() * b) < 1e-13);
  const ComplexMatrix big = random_matrix(9, rng);
  CHECK(std::abs(partial_trace(big, TensorFactor::first).trace() - big.trace()) < 1e-13);
  CHECK(std::abs(partial_trace(big, TensorFactor::second).trace() - big.trace()) < 1e-13);
  CHECK_THROWS_AS(partial_trace(random_matrix(6, rng), TensorFactor::first),
                  std::invalid_argument);
}

TEST_CASE("flip operator swaps tensor factors") {
  std::mt19937_64 rng(14);
  const Index d = 3;
  const ComplexMatrix f = flip_matrix(d);
  CHECK(max_abs_diff(f * f, ComplexMatrix::Identity(d * d, d * d)) == 0.0);
  ComplexVector u = random_matrix(d, rng).col(0);
  ComplexVector v = random_matrix(d, rng).col(0);
  ComplexVector uv(d * d);
  ComplexVector vu(d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      uv(i * d + j) = u(i) * v(j);
      vu(i * d + j) = v(i) * u(j);
    }
  CHECK((f * uv - vu).cwiseAbs().maxCoeff() == 0.0);

  const ComplexMatrix a = random_matrix(d, rng);
  const ComplexMatrix b = random_matrix(d, rng);
  CHECK(max_abs_diff(flip_conjugate(kron(a, b)), kron(b, a)) == 0.0);
  const ComplexMatrix m = random_matrix(d * d, rng);
  CHECK(max_abs_diff(flip_conjugate(m), f * m * f) < 1e-14);
}

TEST_CASE("theta conjugation is transposition in its own basis") {
  std::mt19937_64 rng(15);
  const Index d = 3;
  const ComplexMatrix x = random_matrix(d, rng);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  CHECK(max_abs_diff(theta_conjugate(x, id), x.transpose()) == 0.0);

  const ComplexMatrix u = random_unitary(d, rng);
  const ComplexMatrix y = random_matrix(d, rng);
  const ComplexMatrix tx = theta_conjugate(x, u);
  const ComplexMatrix ty = theta_conjugate(y, u);
  CHECK(max_abs_diff(theta_conjugate(x * y, u), ty * tx) < 1e-13);
  CHECK(max_abs_diff(theta_conjugate(tx, u), x) < 1e-13);
  CHECK(max_abs_diff(theta_conjugate(x.adjoint(), u), tx.adjoint()) < 1e-13);
  CHECK(max_abs_diff(theta_conjugate(id, u), id) < 1e-13);
}

TEST_CASE("theta superoperator realizes theta conjugation") {
  std::mt19937_64 rng(16);
  const Index d = 3;
  const ComplexMatrix u = random_unitary(d, rng);
  const ComplexMatrix m = theta_superoperator(u);
  const ComplexMatrix x = random_matrix(d, rng);
  CHECK(max_abs_diff(unvec(m * vec(x)), theta_conjugate(x, u)) < 1e-14);
  CHECK(max_abs_diff(m, m.adjoint()) < 1e-13);
  CHECK(max_abs_diff(m * m, ComplexMatrix::Identity(d * d, d * d)) < 1e-13);
}

TEST_CASE("hermitian_eig is descending, reconstructs, and is canonical") {
  std::mt19937_64 rng(17);
  const ComplexMatrix a = random_hermitian(4, rng);
  const EigDecomposition eig = hermitian_eig(a);
  for (Index i = 1; i < 4; ++i) CHECK(eig.eigenvalues(i - 1) >= eig.eigenvalues(i));
  const ComplexMatrix rebuilt =
      eig.eigenvectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  CHECK(max_abs_diff(rebuilt, a) < 1e-13);
  CHECK(max_abs_diff(eig.eigenvectors.adjoint() * eig.eigenvectors,
                     ComplexMatrix::Identity(4, 4)) < 1e-13);
  for (Index c = 0; c < 4; ++c) {
    Index lead = 0;
    while (std::abs(eig.eigenvectors(lead, c)) <= 1e-12) ++lead;
    CHECK(eig.eigenvectors(lead, c).imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.eigenvectors(lead, c).real() > 0.0);
  }
  const EigDecomposition again = hermitian_eig(a);
  CHECK(max_abs_diff(again.eigenvectors, eig.eigenvectors) == 0.0);
  CHECK_THROWS_AS(hermitian_eig(random_matrix(3, rng)), std::invalid_argument);
}

TEST_CASE("herm_func spectral calculus") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = std::exp(2.0);
  a(1, 1) = std::exp(1.0);
  const ComplexMatrix lg = herm_func(a, HermFunc::log);
  CHECK(std::abs(lg(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(lg(1, 1) - 1.0) < 1e-14);

  std::mt19937_64 rng(18);
  const ComplexMatrix b = random_matrix(3, rng);
  const ComplexMatrix psd = b * b.adjoint();
  const ComplexMatrix root = herm_func(psd, HermFunc::sqrt);
  CHECK(max_abs_diff(root * root, psd) < 1e-12);

  ComplexMatrix singular = ComplexMatrix::Zero(2, 2);
  singular(0, 0) = std::exp(1.0);
  const ComplexMatrix lg0 = herm_func(singular, HermFunc::log);
  CHECK(std::abs(lg0(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(lg0(1, 1)) == 0.0);

  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(herm_func(neg, HermFunc::log), std::domain_error);
  CHECK_THROWS_AS(herm_func(neg, HermFunc::sqrt), std::domain_error);
  CHECK(max_abs_diff(herm_func(neg, HermFunc::exp), herm_func(neg, HermFunc::exp)) == 0.0);
}

TEST_CASE("expm basics") {
  CHECK(max_abs_diff(expm(ComplexMatrix::Zero(3, 3)), ComplexMatrix::Identity(3, 3)) == 0.0);

  ComplexMatrix nilpotent = ComplexMatrix::Zero(2, 2);
  nilpotent(0, 1) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Identity(2, 2);
  expected(0, 1) = 1.0;
  CHECK(max_abs_diff(expm(nilpotent), expected) < 1e-15);

  std::mt19937_64 rng(19);
  const ComplexMatrix a = random_matrix(4, rng);
  CHECK(max_abs_diff(expm(a) * expm(-a), ComplexMatrix::Identity(4, 4)) < 1e-12);
  const ComplexMatrix h = random_hermitian(4, rng);
  CHECK(max_abs_diff(expm(h), herm_func(h, HermFunc::exp)) < 1e-12);
}

TEST_CASE("dft matrix is the unitary character table") {
  const Index p = 5;
  const ComplexMatrix f = dft_matrix(p);
  CHECK(max_abs_diff(f.adjoint() * f, ComplexMatrix::Identity(p, p)) < 1e-13);
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  for (Index k = 0; k < p; ++k) {
    for (Index l = 0; l < p; ++l) {
      const double angle = 2.0 * M_PI * static_cast<double>((k * l) % p) / static_cast<double>(p);
      CHECK(std::abs(f(k, l) - norm * Complex(std::cos(angle), std::sin(angle))) < 1e-15);
    }
  }
}

TEST_CASE("trace norm") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = -4.0;
  CHECK(trace_norm(a) == doctest::Approx(7.0).epsilon(1e-13));
  std::mt19937_64 rng(20);
  const ComplexMatrix m = random_matrix(3, rng);
  const ComplexMatrix u = random_unitary(3, rng);
  CHECK(trace_norm(u * m) == doctest::Approx(trace_norm(m)).epsilon(1e-12));
}
