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

#include "qmsepr/choi.hpp"

#include <stdexcept>

namespace qmsepr {

namespace {

ChoiState build_choi(const ChannelRep& ch, const DensityMatrix& rho, const ComplexMatrix& basis) {
  if (ch.dim() != rho.dim()) throw std::invalid_argument("choi_state: dimension mismatch");
  const Index d = rho.dim();
  const ComplexMatrix root = sqrt_density(rho);

  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) {
    const ComplexVector e = basis.col(i);
    const ComplexVector re = root * e;
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) psi(a * d + b) += e(a) * re(b);
  }
  const ComplexMatrix omega = psi * psi.adjoint();

  const ChannelRep predual = ch.to_side(Side::predual);
  ComplexMatrix j = apply_second(predual, omega);
  j = (j + j.adjoint()) / 2.0;  // clean Hermitian roundoff
  return ChoiState{j, rho, basis, j.trace().real()};
}

}  // namespace

ComplexMatrix apply_second(const ChannelRep& ch, const ComplexMatrix& m) {
  const Index d = ch.dim();
  if (m.rows() != d * d || m.cols() != d * d)
    throw std::invalid_argument("apply_second: dimension mismatch");
  ComplexMatrix out(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      out.block(i * d, j * d, d, d) = ch.apply(m.block(i * d, j * d, d, d));
  return out;
}

ComplexMatrix apply_first(const ChannelRep& ch, const ComplexMatrix& m) {
  return flip_conjugate(apply_second(ch, flip_conjugate(m)));
}

ChoiState omega_rho(const DensityMatrix& rho) {
  const ChannelRep identity =
      ChannelRep::from_kraus({ComplexMatrix::Identity(rho.dim(), rho.dim())}, Side::predual);
  return build_choi(identity, rho, rho.eig().eigenvectors);
}

ChoiState choi_state(const ChannelRep& ch, const DensityMatrix& rho) {
  return build_choi(ch, rho, rho.eig().eigenvectors);
}

ChoiState choi_in_basis(const ChannelRep& ch, const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw std::invalid_argument("choi_in_basis: dimension mismatch");
  const double unitarity =
      (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.rows())).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10) throw std::invalid_argument("choi_in_basis: U is not unitary");
  return build_choi(ch, rho, u * rho.eig().eigenvectors);
}

std::pair<TwoPointState, TwoPointState> forward_backward(const Semigroup& sg,
                                                         const DensityMatrix& rho, double t) {
  const ChannelRep fwd_map = semigroup_map(sg, t);
  const ChannelRep bwd_map = semigroup_map(theta_kms_adjoint(sg, rho), t);
  TwoPointState fwd{choi_state(fwd_map, rho), Direction::forward};
  TwoPointState bwd{choi_state(bwd_map, rho), Direction::backward};
  return {std::move(fwd), std::move(bwd)};
}

Complex two_point_eval(const TwoPointState& state, const ComplexMatrix& a,
                       const ComplexMatrix& b) {
  const Index d = state.density.rho.dim();
  if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d)
    throw std::invalid_argument("two_point_eval: dimension mismatch");
  return (state.density.matrix * kron(a, b)).trace();
}

}  // namespace qmsepr
