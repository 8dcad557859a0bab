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

#include <optional>
#include <span>
#include <vector>

#include "qmsepr/density.hpp"
#include "qmsepr/linalg.hpp"

namespace qmsepr {

// Which action of a channel a superoperator realizes: `dual` acts on
// observables, `predual` on states (the trace dual).  For the
// Hermiticity-preserving maps handled here the two superoperators are
// conjugate transposes of one another.
enum class Side { dual, predual };

// A completely positive map in vectorized form.  A Kraus family {K_k},
// when present, always describes the predual action s |-> sum K s K*;
// the stored superoperator realizes the requested side:
//   predual: sum conj(K_k) kron K_k      dual: sum K_k^T kron K_k*
// both read off vec(AXB) = (B^T kron A) vec(X).
class ChannelRep {
 public:
  static ChannelRep from_kraus(std::vector<ComplexMatrix> kraus, Side side);
  static ChannelRep from_super(const ComplexMatrix& super, Side side);

  Index dim() const { return dim_; }
  Side side() const { return side_; }
  const ComplexMatrix& super() const { return super_; }
  const std::optional<std::vector<ComplexMatrix>>& kraus() const { return kraus_; }

  // unvec(super * vec(x))
  ComplexMatrix apply(const ComplexMatrix& x) const;

  // Same channel, superoperator re-expressed for the other side.
  ChannelRep to_side(Side target) const;

  // Predual trace preservation, sum K_k* K_k = I (or tr(apply(x)) = tr(x)).
  bool trace_preserving(double tol = 1e-10) const;

 private:
  ChannelRep() = default;
  Index dim_ = 0;
  Side side_ = Side::predual;
  ComplexMatrix super_;
  std::optional<std::vector<ComplexMatrix>> kraus_;
};

ChannelRep kraus_to_super(const std::vector<ComplexMatrix>& kraus, Side side);

// Lindblad-form generator data: H Hermitian, arbitrary jump operators L_k.
struct GkslGenerator {
  ComplexMatrix H;
  std::vector<ComplexMatrix> lindblad_ops;
  Index dim = 0;
};

GkslGenerator make_gksl(const ComplexMatrix& h, std::vector<ComplexMatrix> lindblad_ops);

// Superoperator of L(x) = i[H,x] - 1/2 sum(L_k*L_k x - 2 L_k* x L_k + x L_k*L_k)
// (dual side), or of its trace dual L_* (predual side: H sign flipped,
// Kraus positions exchanged).
ComplexMatrix gksl_super(const GkslGenerator& gen, Side side);

// A uniformly continuous semigroup, stored through its predual generator.
struct Semigroup {
  ComplexMatrix generator_super_predual;
  Index dim = 0;
};

Semigroup make_semigroup(const GkslGenerator& gen);
Semigroup make_semigroup_from_predual(const ComplexMatrix& generator_super_predual);

// e^{t L_*} as a predual channel.
ChannelRep semigroup_map(const Semigroup& sg, double t);

// The s-interpolated adjoint of a channel T with respect to a faithful
// state rho: T^(s)(x) = rho^{-s} T_*(rho^s x rho^{1-s}) rho^{-(1-s)},
// which satisfies tr(rho^s x rho^{1-s} T(y)) = tr(rho^s T^(s)(x) rho^{1-s} y).
// Input of either side is accepted; the result is dual-side.
ChannelRep s_adjoint(const ChannelRep& ch, const DensityMatrix& rho, double s);

// s = 1/2: the KMS adjoint T'.
ChannelRep kms_adjoint(const ChannelRep& ch, const DensityMatrix& rho);

// Theta-KMS adjoint T^Theta = Theta . T' . Theta, with theta the
// conjugation in the rho eigenbasis.
ChannelRep theta_kms_adjoint(const ChannelRep& ch, const DensityMatrix& rho);

// Same with theta fixed by an arbitrary orthonormal basis.  A different
// basis is a different reversing operation, hence a different adjoint map;
// the default keeps theta commuting with rho.
ChannelRep theta_kms_adjoint_in_basis(const ChannelRep& ch, const DensityMatrix& rho,
                                      const ComplexMatrix& basis);

// Generator-level versions: the adjoint family of a semigroup is again a
// semigroup; these return it through its predual generator.
Semigroup kms_adjoint(const Semigroup& sg, const DensityMatrix& rho);
Semigroup theta_kms_adjoint(const Semigroup& sg, const DensityMatrix& rho);
Semigroup theta_kms_adjoint_in_basis(const Semigroup& sg, const DensityMatrix& rho,
                                     const ComplexMatrix& basis);

struct SqdbReport {
  bool holds = false;
  double max_residual = 0.0;
  std::vector<double> residuals;
};

// Detailed balance with reversing operation: residuals of
// T'_t = Theta . T_t . Theta (Frobenius norm on superoperators) at the
// sampled times; `holds` at 1e-8.  Requires rho invariant (1e-8, trace norm).
SqdbReport check_theta_sqdb(const Semigroup& sg, const DensityMatrix& rho,
                            std::span<const double> t_samples);

// max_t || T_{*t}(rho) - rho ||_1 over the samples.
double check_invariant(const Semigroup& sg, const DensityMatrix& rho,
                       std::span<const double> t_samples);

}  // namespace qmsepr
