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

#include <utility>

#include "qmsepr/channels.hpp"
#include "qmsepr/density.hpp"
#include "qmsepr/linalg.hpp"

namespace qmsepr {

// The state-side Choi representation of a predual map relative to a
// reference state: J = (1 (x) Phi_*)(omega), where omega is the rank-one
// projector onto Psi = sum_i e_i (x) rho^{1/2} e_i and {e_i} is the
// recorded theta-basis (columns of `basis`).
struct ChoiState {
  ComplexMatrix matrix;  // on h (x) h
  DensityMatrix rho;     // reference state
  ComplexMatrix basis;   // theta-basis used to build omega
  double trace = 0.0;
};

// omega itself (the Choi state of the identity map); unit trace, rank one.
// The basis is the deterministic rho eigenbasis.
ChoiState omega_rho(const DensityMatrix& rho);

// J = (1 (x) Phi_*)(omega_rho).  PSD up to roundoff, and
// tr J = tr Phi_*(rho) (equality of traces is exact in finite dimension).
// A dual-side input is converted to its predual first.
ChoiState choi_state(const ChannelRep& ch, const DensityMatrix& rho);

// Same construction with the basis {U e_i} in place of the rho eigenbasis
// {e_i}.  Relates to the default by conjugation with (U theta U* theta) (x) 1.
ChoiState choi_in_basis(const ChannelRep& ch, const DensityMatrix& rho, const ComplexMatrix& u);

// Apply 1 (x) Phi (resp. Phi (x) 1) blockwise to a matrix on h (x) h.
ComplexMatrix apply_second(const ChannelRep& ch, const ComplexMatrix& m);
ComplexMatrix apply_first(const ChannelRep& ch, const ComplexMatrix& m);

enum class Direction { forward, backward };

struct TwoPointState {
  ChoiState density;
  Direction direction = Direction::forward;
};

// Forward density (1 (x) T_{*t})(omega) and backward density built from the
// Theta-KMS adjoint semigroup; in finite dimension the backward density
// also equals (T_{*t} (x) 1)(omega).
std::pair<TwoPointState, TwoPointState> forward_backward(const Semigroup& sg,
                                                         const DensityMatrix& rho, double t);

// tr(density * (a (x) b)).
Complex two_point_eval(const TwoPointState& state, const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qmsepr
