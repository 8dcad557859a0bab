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

#include "qmsepr/circulant.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qmsepr {

Index mod_index(Index i, Index p) {
  const Index r = i % p;
  return r < 0 ? r + p : r;
}

double CirculantSpec::alpha_at(Index m, Index n) const {
  return alpha[static_cast<std::size_t>(mod_index(m, p) * q + mod_index(n, q))];
}

void CirculantSpec::validate() const {
  if (p < 1 || q < 1) throw std::invalid_argument("CirculantSpec: p, q must be >= 1");
  if (static_cast<Index>(alpha.size()) != p * q)
    throw std::invalid_argument("CirculantSpec: alpha must have p*q entries");
  double total = 0.0;
  for (double a : alpha) {
    if (!(a >= 0.0)) throw std::invalid_argument("CirculantSpec: alpha entries must be >= 0");
    total += a;
  }
  if (alpha[0] != 0.0) throw std::invalid_argument("CirculantSpec: alpha(0,0) must be 0");
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("CirculantSpec: alpha must sum to 1");
}

ComplexMatrix primary_permutation(Index p) {
  if (p < 1) throw std::invalid_argument("primary_permutation: order must be positive");
  ComplexMatrix j = ComplexMatrix::Zero(p, p);
  for (Index i = 0; i < p; ++i) j(i, mod_index(i + 1, p)) = 1.0;
  return j;
}

std::vector<ComplexMatrix> circulant_kraus(const CirculantSpec& spec) {
  spec.validate();
  const ComplexMatrix jp = primary_permutation(spec.p);
  const ComplexMatrix jq = primary_permutation(spec.q);

  std::vector<ComplexMatrix> jp_pow(spec.p), jq_pow(spec.q);
  jp_pow[0] = ComplexMatrix::Identity(spec.p, spec.p);
  for (Index i = 1; i < spec.p; ++i) jp_pow[i] = jp_pow[i - 1] * jp;
  jq_pow[0] = ComplexMatrix::Identity(spec.q, spec.q);
  for (Index j = 1; j < spec.q; ++j) jq_pow[j] = jq_pow[j - 1] * jq;

  std::vector<ComplexMatrix> kraus;
  for (Index i = 0; i < spec.p; ++i)
    for (Index j = 0; j < spec.q; ++j) {
      const double weight = spec.alpha_at(spec.p - i, spec.q - j);
      if (weight == 0.0) continue;
      kraus.push_back(std::sqrt(weight) * kron(jp_pow[i], jq_pow[j]));
    }
  return kraus;
}

Semigroup circulant_generator(const CirculantSpec& spec) {
  const ChannelRep jump = ChannelRep::from_kraus(circulant_kraus(spec), Side::predual);
  const Index dsq = spec.dim() * spec.dim();
  return Semigroup{jump.super() - ComplexMatrix::Identity(dsq, dsq), spec.dim()};
}

Complex CirculantSpectrum::phi(Index m, Index n, double t) const {
  Complex total(0.0, 0.0);
  for (Index k = 0; k < p; ++k)
    for (Index l = 0; l < q; ++l) {
      const Index e_p = mod_index(m * k, p);
      const Index e_q = mod_index(n * l, q);
      const double angle = 2.0 * std::numbers::pi *
                           (static_cast<double>(e_p) / static_cast<double>(p) +
                            static_cast<double>(e_q) / static_cast<double>(q));
      total += std::polar(1.0, angle) * std::exp(t * lambda(k, l));
    }
  return total;
}

CirculantSpectrum circulant_spectrum(const CirculantSpec& spec) {
  spec.validate();
  CirculantSpectrum out;
  out.p = spec.p;
  out.q = spec.q;
  out.lambda = ComplexMatrix::Zero(spec.p, spec.q);
  for (Index k = 0; k < spec.p; ++k)
    for (Index l = 0; l < spec.q; ++l) {
      Complex acc(0.0, 0.0);
      for (Index i = 0; i < spec.p; ++i)
        for (Index j = 0; j < spec.q; ++j) {
          const double a = spec.alpha_at(i, j);
          if (a == 0.0) continue;
          const Index e_p = mod_index(i * k, spec.p);
          const Index e_q = mod_index(j * l, spec.q);
          const double angle = -2.0 * std::numbers::pi *
                               (static_cast<double>(e_p) / static_cast<double>(spec.p) +
                                static_cast<double>(e_q) / static_cast<double>(spec.q));
          acc += a * std::polar(1.0, angle);
        }
      out.lambda(k, l) = acc - 1.0;
    }
  return out;
}

std::vector<ComplexVector> u_basis(Index p, Index q) {
  if (p < 1 || q < 1) throw std::invalid_argument("u_basis: p, q must be >= 1");
  const Index d = p * q;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<ComplexVector> basis;
  basis.reserve(static_cast<std::size_t>(d));
  for (Index m = 0; m < p; ++m)
    for (Index n = 0; n < q; ++n) {
      ComplexVector u = ComplexVector::Zero(d * d);
      for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < q; ++j) {
          const Index left = i * q + j;
          const Index right = mod_index(m + i, p) * q + mod_index(n + j, q);
          u(left * d + right) = norm;
        }
      basis.push_back(std::move(u));
    }
  return basis;
}

ChoiState circulant_choi(const CirculantSpec& spec, double t) {
  spec.validate();
  if (t < 0.0) throw std::invalid_argument("circulant_choi: time must be nonnegative");
  const Index d = spec.dim();
  const CirculantSpectrum spectrum = circulant_spectrum(spec);
  const std::vector<ComplexVector> basis = u_basis(spec.p, spec.q);

  ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
  std::size_t idx = 0;
  for (Index m = 0; m < spec.p; ++m)
    for (Index n = 0; n < spec.q; ++n, ++idx) {
      const double weight = spectrum.phi(m, n, t).real() / static_cast<double>(d);
      j += weight * (basis[idx] * basis[idx].adjoint());
    }
  j = (j + j.adjoint()) / 2.0;

  const DensityMatrix rho =
      make_density(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
  return ChoiState{j, rho, ComplexMatrix::Identity(d, d), j.trace().real()};
}

EprEstimate closed_form_epr(const CirculantSpec& spec) {
  spec.validate();
  EprEstimate est;
  est.method = EprMethod::closed_form;

  double total = 0.0;
  bool infinite = false;
  for (Index m = 0; m < spec.p; ++m)
    for (Index n = 0; n < spec.q; ++n) {
      const double a = spec.alpha_at(m, n);
      const double b = spec.alpha_at(spec.p - m, spec.q - n);
      if (a == 0.0 && b == 0.0) continue;
      if (a == 0.0 || b == 0.0) {
        infinite = true;
        continue;
      }
      total += (a - b) * std::log(a / b);
    }
  est.value = infinite ? std::numeric_limits<double>::infinity() : 0.5 * total;
  est.extrapolation_error = 0.0;
  return est;
}

}  // namespace qmsepr
