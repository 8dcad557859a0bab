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

#include <vector>

#include "qmsepr/channels.hpp"
#include "qmsepr/choi.hpp"
#include "qmsepr/epr.hpp"
#include "qmsepr/linalg.hpp"

namespace qmsepr {

// Representative of i modulo p in [0, p).
Index mod_index(Index i, Index p);

// A jump distribution alpha on Z_p x Z_q with alpha(0,0) = 0 and total
// mass 1.  alpha is stored row-major, entry (m, n) at index m*q + n.
struct CirculantSpec {
  Index p = 1;
  Index q = 1;
  std::vector<double> alpha;

  Index dim() const { return p * q; }
  // Lookup with both indices reduced mod (p, q), so alpha_at(p - m, q - n)
  // is always well-formed.
  double alpha_at(Index m, Index n) const;
  void validate() const;
};

// Cyclic shift permutation: J_p e_{i+1} = e_i (ones on the superdiagonal,
// wrapping).  Unitary with J_p^p = I.
ComplexMatrix primary_permutation(Index p);

// Kraus family of the jump map: { sqrt(alpha(p-i, q-j)) J_p^i (x) J_q^j }.
std::vector<ComplexMatrix> circulant_kraus(const CirculantSpec& spec);

// Semigroup with predual generator L_* = Phi_* - id, where
// Phi_*(x) = sum alpha(p-i, q-j) (J_p^i (x) J_q^j) x (J_p^i (x) J_q^j)*.
Semigroup circulant_generator(const CirculantSpec& spec);

// Spectral data of the classical pq x pq generator Q = Pi - I:
//   lambda(k,l) = sum_{i,j} alpha(i,j) conj(w_p)^{ik} conj(w_q)^{jl} - 1,
// and the matrix elements Phi_{m,n}(t) = sum_{k,l} w_p^{mk} w_q^{nl} e^{t lambda(k,l)}.
struct CirculantSpectrum {
  Index p = 1;
  Index q = 1;
  ComplexMatrix lambda;  // (k, l) entry = lambda_{kl}
  Complex phi(Index m, Index n, double t) const;
};

CirculantSpectrum circulant_spectrum(const CirculantSpec& spec);

// Orthonormal family u_{mn} = (1/sqrt(pq)) sum_{i,j} (e_i (x) e_j) (x)
// (e_{m+i} (x) e_{n+j}) on (C^p (x) C^q)^(x2), returned row-major in (m, n).
std::vector<ComplexVector> u_basis(Index p, Index q);

// Choi state of the time-t map relative to I/pq, assembled directly as
// (1/pq) sum Phi_{m,n}(t) |u_mn><u_mn| without exponentiating the
// superoperator.
ChoiState circulant_choi(const CirculantSpec& spec, double t);

// Entropy production rate in closed form:
//   1/2 sum (alpha(m,n) - alpha(p-m,q-n)) log(alpha(m,n)/alpha(p-m,q-n)).
// A zero alpha facing a nonzero partner makes the rate +infinity; a zero
// facing a zero contributes nothing.
EprEstimate closed_form_epr(const CirculantSpec& spec);

}  // namespace qmsepr
