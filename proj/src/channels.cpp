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

#include "qmsepr/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qmsepr {

namespace {

// Superoperator of x |-> A x B under column stacking.
ComplexMatrix sandwich_super(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kron(b.transpose(), a);
}

void require_faithful(const DensityMatrix& rho, const char* who) {
  if (!is_faithful(rho))
    throw std::invalid_argument(std::string(who) + ": state is not faithful");
}

}  // namespace

ChannelRep ChannelRep::from_kraus(std::vector<ComplexMatrix> kraus, Side side) {
  if (kraus.empty()) throw std::invalid_argument("kraus_to_super: empty Kraus family");
  const Index d = kraus.front().rows();
  for (const auto& k : kraus)
    if (k.rows() != d || k.cols() != d)
      throw std::invalid_argument("kraus_to_super: mixed or non-square Kraus dimensions");

  ComplexMatrix super = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    if (side == Side::predual)
      super += sandwich_super(k, k.adjoint());  // s |-> K s K*
    else
      super += sandwich_super(k.adjoint(), k);  // x |-> K* x K
  }

  ChannelRep out;
  out.dim_ = d;
  out.side_ = side;
  out.super_ = std::move(super);
  out.kraus_ = std::move(kraus);
  return out;
}

ChannelRep ChannelRep::from_super(const ComplexMatrix& super, Side side) {
  if (super.rows() != super.cols())
    throw std::invalid_argument("ChannelRep: superoperator must be square");
  const Index dim = super.rows();
  const Index d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dim))));
  if (d * d != dim)
    throw std::invalid_argument("ChannelRep: superoperator dimension is not a perfect square");
  ChannelRep out;
  out.dim_ = d;
  out.side_ = side;
  out.super_ = super;
  return out;
}

ComplexMatrix ChannelRep::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw std::invalid_argument("ChannelRep::apply: dimension mismatch");
  return unvec(super_ * vec(x));
}

ChannelRep ChannelRep::to_side(Side target) const {
  if (target == side_) return *this;
  ChannelRep out;
  out.dim_ = dim_;
  out.side_ = target;
  out.super_ = super_.adjoint();  // trace duality for Hermiticity-preserving maps
  out.kraus_ = kraus_;
  return out;
}

bool ChannelRep::trace_preserving(double tol) const {
  if (kraus_) {
    ComplexMatrix s = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& k : *kraus_) s += k.adjoint() * k;
    return (s - ComplexMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() <= tol;
  }
  // tr(Phi_*(x)) = tr(x) for all x is a linear condition on the predual
  // superoperator: vec(I)^* M = vec(I)^*.
  const ComplexMatrix m = side_ == Side::predual ? super_ : ComplexMatrix(super_.adjoint());
  const ComplexVector id_vec = vec(ComplexMatrix::Identity(dim_, dim_));
  return (m.adjoint() * id_vec - id_vec).cwiseAbs().maxCoeff() <= tol;
}

ChannelRep kraus_to_super(const std::vector<ComplexMatrix>& kraus, Side side) {
  return ChannelRep::from_kraus(kraus, side);
}

GkslGenerator make_gksl(const ComplexMatrix& h, std::vector<ComplexMatrix> lindblad_ops) {
  if (h.rows() != h.cols()) throw std::invalid_argument("make_gksl: H must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("make_gksl: H is not Hermitian");
  for (const auto& l : lindblad_ops)
    if (l.rows() != h.rows() || l.cols() != h.cols())
      throw std::invalid_argument("make_gksl: jump operator dimension mismatch");
  return GkslGenerator{h, std::move(lindblad_ops), h.rows()};
}

ComplexMatrix gksl_super(const GkslGenerator& gen, Side side) {
  const Index d = gen.dim;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const Complex i_unit(0.0, 1.0);

  ComplexMatrix super = ComplexMatrix::Zero(d * d, d * d);
  if (side == Side::dual) {
    // L(x) = i[H,x] - 1/2 sum(L*L x - 2 L* x L + x L*L)
    super += i_unit * (sandwich_super(gen.H, id) - sandwich_super(id, gen.H));
    for (const auto& l : gen.lindblad_ops) {
      const ComplexMatrix ll = l.adjoint() * l;
      super += sandwich_super(l.adjoint(), l) -
               0.5 * (sandwich_super(ll, id) + sandwich_super(id, ll));
    }
  } else {
    // L_*(s) = -i[H,s] + sum(L s L* - 1/2 {L*L, s})
    super -= i_unit * (sandwich_super(gen.H, id) - sandwich_super(id, gen.H));
    for (const auto& l : gen.lindblad_ops) {
      const ComplexMatrix ll = l.adjoint() * l;
      super += sandwich_super(l, l.adjoint()) -
               0.5 * (sandwich_super(ll, id) + sandwich_super(id, ll));
    }
  }
  return super;
}

Semigroup make_semigroup(const GkslGenerator& gen) {
  return Semigroup{gksl_super(gen, Side::predual), gen.dim};
}

Semigroup make_semigroup_from_predual(const ComplexMatrix& generator_super_predual) {
  const ChannelRep probe = ChannelRep::from_super(generator_super_predual, Side::predual);
  return Semigroup{generator_super_predual, probe.dim()};
}

ChannelRep semigroup_map(const Semigroup& sg, double t) {
  if (t < 0.0) throw std::invalid_argument("semigroup_map: time must be nonnegative");
  return ChannelRep::from_super(expm(t * sg.generator_super_predual), Side::predual);
}

ChannelRep s_adjoint(const ChannelRep& ch, const DensityMatrix& rho, double s) {
  require_faithful(rho, "s_adjoint");
  if (rho.dim() != ch.dim()) throw std::invalid_argument("s_adjoint: dimension mismatch");
  if (s < 0.0 || s > 0.5) throw std::invalid_argument("s_adjoint: s must lie in [0, 1/2]");

  const ComplexMatrix predual = ch.to_side(Side::predual).super();
  const ComplexMatrix outer = sandwich_super(rho.power(-s), rho.power(-(1.0 - s)));
  const ComplexMatrix inner = sandwich_super(rho.power(s), rho.power(1.0 - s));
  return ChannelRep::from_super(outer * predual * inner, Side::dual);
}

ChannelRep kms_adjoint(const ChannelRep& ch, const DensityMatrix& rho) {
  return s_adjoint(ch, rho, 0.5);
}

ChannelRep theta_kms_adjoint(const ChannelRep& ch, const DensityMatrix& rho) {
  return theta_kms_adjoint_in_basis(ch, rho, rho.eig().eigenvectors);
}

ChannelRep theta_kms_adjoint_in_basis(const ChannelRep& ch, const DensityMatrix& rho,
                                      const ComplexMatrix& basis) {
  const ComplexMatrix theta = theta_superoperator(basis);
  const ComplexMatrix kms = kms_adjoint(ch, rho).super();
  return ChannelRep::from_super(theta * kms * theta, Side::dual);
}

Semigroup kms_adjoint(const Semigroup& sg, const DensityMatrix& rho) {
  require_faithful(rho, "kms_adjoint");
  if (rho.dim() != sg.dim) throw std::invalid_argument("kms_adjoint: dimension mismatch");
  // T'_t = V^{-1} T_{*t} V with V(x) = rho^{1/2} x rho^{1/2}, so the dual
  // generator of the adjoint family is V^{-1} L_* V; store its trace dual.
  const ComplexMatrix half = rho.power(0.5);
  const ComplexMatrix half_inv = rho.power(-0.5);
  const ComplexMatrix dual_gen = sandwich_super(half_inv, half_inv) *
                                 sg.generator_super_predual * sandwich_super(half, half);
  return Semigroup{dual_gen.adjoint(), sg.dim};
}

Semigroup theta_kms_adjoint(const Semigroup& sg, const DensityMatrix& rho) {
  return theta_kms_adjoint_in_basis(sg, rho, rho.eig().eigenvectors);
}

Semigroup theta_kms_adjoint_in_basis(const Semigroup& sg, const DensityMatrix& rho,
                                     const ComplexMatrix& basis) {
  const ComplexMatrix theta = theta_superoperator(basis);
  const Semigroup kms = kms_adjoint(sg, rho);
  // Theta is self-predual, so conjugation acts the same on either side.
  return Semigroup{theta * kms.generator_super_predual * theta, sg.dim};
}

SqdbReport check_theta_sqdb(const Semigroup& sg, const DensityMatrix& rho,
                            std::span<const double> t_samples) {
  require_faithful(rho, "check_theta_sqdb");
  const double inv_residual = check_invariant(sg, rho, t_samples);
  if (inv_residual > 1e-8)
    throw std::invalid_argument("check_theta_sqdb: rho is not invariant for the semigroup");

  const ComplexMatrix theta = theta_superoperator(rho.eig().eigenvectors);
  const ComplexMatrix half = rho.power(0.5);
  const ComplexMatrix half_inv = rho.power(-0.5);
  const ComplexMatrix conj_in = sandwich_super(half, half);
  const ComplexMatrix conj_out = sandwich_super(half_inv, half_inv);

  SqdbReport report;
  for (const double t : t_samples) {
    const ComplexMatrix predual_t = semigroup_map(sg, t).super();
    const ComplexMatrix kms_t = conj_out * predual_t * conj_in;        // T'_t, dual side
    const ComplexMatrix reversed_t = theta * predual_t.adjoint() * theta;  // Theta T_t Theta
    report.residuals.push_back((kms_t - reversed_t).norm());
  }
  report.max_residual =
      report.residuals.empty()
          ? 0.0
          : *std::max_element(report.residuals.begin(), report.residuals.end());
  report.holds = report.max_residual <= 1e-8;
  return report;
}

double check_invariant(const Semigroup& sg, const DensityMatrix& rho,
                       std::span<const double> t_samples) {
  if (rho.dim() != sg.dim) throw std::invalid_argument("check_invariant: dimension mismatch");
  double worst = 0.0;
  for (const double t : t_samples) {
    const ComplexMatrix moved = semigroup_map(sg, t).apply(rho.matrix());
    worst = std::max(worst, trace_norm(moved - rho.matrix()));
  }
  return worst;
}

}  // namespace qmsepr
