/*
 * Copyright 2026 The qfstates Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Truncated bosonic Fock-space oracle: Gibbs states of quadratic Hamiltonians,
// second-moment covariance extraction, and overlaps with a cutoff sweep.

#include <vector>

#include "qf/car_oracle.hpp"
#include "qf/ccr.hpp"

namespace qf {

inline constexpr int kMaxBosonModes = 2;
inline constexpr Index kMaxBosonDim = 2500;
inline constexpr int kMaxCutoff = 120;

/// Dense ladder and quadrature operators on (cutoff + 1)^n_modes states.
/// Mode 0 is the most significant tensor factor.
struct BosonOps {
  int n_modes = 0;
  int cutoff = 0;
  std::vector<Matrix> a;     ///< annihilation
  std::vector<Matrix> adag;  ///< creation
  std::vector<Matrix> q;     ///< (a + a^dag) / sqrt 2
  std::vector<Matrix> p;     ///< (a - a^dag) / (i sqrt 2)

  Index dim() const;
};

/// Throws ErrorKind::ResourceCap for n_modes outside [1, 2], cutoff < 2, or a
/// Fock dimension above kMaxBosonDim.
BosonOps boson_ops(int n_modes, int cutoff);

/// H = sum omega_jk a_j^dag a_k + 1/2 sum (xi_jk a_j^dag a_k^dag + h.c.).
struct QuadraticHamiltonian {
  int n_modes = 1;
  Matrix omega;  ///< Hermitian n x n
  Matrix xi;     ///< complex symmetric n x n

  /// omega = beta, xi = 0: thermal state with q = exp(-beta).
  static QuadraticHamiltonian thermal(double beta);
  /// Single mode with H = beta b^dag b, b = cosh(r) a + sinh(r) a^dag.
  static QuadraticHamiltonian squeezed_thermal(double beta, double r);
  /// Independent modes, block-diagonal in omega and xi.
  static QuadraticHamiltonian product(const QuadraticHamiltonian& a, const QuadraticHamiltonian& b);
};

struct TruncatedState {
  QuadraticHamiltonian hamiltonian;
  int cutoff = 0;
  DensityMatrix rho;
  double increment = 0.0;  ///< ||rho_N - rho_{N+4}||_HS after embedding
};

/// rho = exp(-H) / Z at the given cutoff. Throws ErrorKind::NonConvergence when
/// H is not bounded below by a positive gap (Z diverges), ErrorKind::Validation
/// on malformed coefficients.
TruncatedState gaussian_density(const QuadraticHamiltonian& h, int cutoff);

/// (sigma, R) with R_jk = Re tr(rho x_j x_k), x = (q_1..q_n, p_1..p_n) and the
/// canonical sigma. Throws ErrorKind::Validation if the state is not converged.
CcrCovariance covariance_of_density(const TruncatedState& state);

struct CcrOverlap {
  double value = 0.0;     ///< tr(sqrt rho sqrt tau) at the final cutoff
  double fidelity = 0.0;  ///< tr |sqrt rho sqrt tau| at the final cutoff
  int cutoff = 0;
  double increment = 0.0; ///< |value(cutoff) - value(previous cutoff)|
};

/// Overlap recomputed along the cutoff schedule 20, 40, 80, 120 (starting from
/// the states' cutoff, stopping at max_cutoff) until successive values differ
/// by < tol. Throws ErrorKind::NonConvergence if the schedule is exhausted first.
CcrOverlap overlap_ccr(const TruncatedState& rho, const TruncatedState& tau, double tol = 1e-7,
                       int max_cutoff = kMaxCutoff);

}  // namespace qf
