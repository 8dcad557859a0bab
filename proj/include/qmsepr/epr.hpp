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

#include <span>
#include <vector>

#include "qmsepr/choi.hpp"

namespace qmsepr {

enum class EprMethod { closed_form, generator_limit, slope_fit };

struct EprEstimate {
  double value = 0.0;  // +infinity when a kernel obstruction makes the rate diverge
  EprMethod method = EprMethod::slope_fit;
  std::vector<double> t_grid;
  std::vector<double> raw_S;
  double extrapolation_error = 0.0;
};

// S(J(T_t), J(T_t^Theta)) for one t; +infinity when the kernel inclusion
// between the two Choi states fails.
double relent_semigroup(const Semigroup& sg, const DensityMatrix& rho, double t);

// 1/2 tr((J - J') (log J - log J')) with logs taken on the supports; equals
// S(J, J') + S(J', J) halved, and S itself when the pair is symmetric.
double symmetric_formula_entropy(const ComplexMatrix& j_fwd, const ComplexMatrix& j_bwd);

// Derivative of the Choi state at t = 0: (1 (x) L_*)(omega_rho).
struct ChoiGenerator {
  ComplexMatrix matrix;
  double trace = 0.0;
};

ChoiGenerator choi_generator(const Semigroup& sg, const DensityMatrix& rho);

// Entropy production rate as the limit of S(t)/t: evaluates the relative
// entropy on the geometric grid t_k = t0 * 2^-k, k = 0..levels-1, then
// applies one Richardson extrapolation pass (first order).  raw_S holds
// the S(t_k) values; extrapolation_error is the spread of the last two
// extrapolants.
EprEstimate epr_slope(const Semigroup& sg, const DensityMatrix& rho, double t0 = 1e-2,
                      int levels = 6);

// Same slope procedure on the flip-defined density pair
// (1 (x) T_{*t})(omega) and (T_{*t} (x) 1)(omega); for parity-preserving
// semigroups it reproduces epr_slope.
EprEstimate fr_epr(const Semigroup& sg, const DensityMatrix& rho, double t0 = 1e-2,
                   int levels = 6);

struct ParityReport {
  bool preserving = false;
  double max_residual = 0.0;
};

// Whether the dual maps T_t commute with the reversing operation Theta,
// probed on a fixed pseudo-random family of observables; boolean at 1e-8.
ParityReport is_parity_preserving(const Semigroup& sg, const DensityMatrix& rho,
                                  std::span<const double> t_samples);

}  // namespace qmsepr
