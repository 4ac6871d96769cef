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

// Brute-force fermionic oracle: Jordan-Wigner Clifford generators on 2^n
// dimensional Fock space and quasi-free density matrices built from moments.

#include <cstdint>
#include <vector>

#include "qf/car.hpp"

namespace qf {

inline constexpr int kMaxOracleModes = 10;

/// phase * X^x Z^z on n qubits (bit j <-> mode j).
struct PauliString {
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  cplx phase = 1.0;

  PauliString operator*(const PauliString& o) const;
  /// Dense 2^n x 2^n matrix.
  Matrix dense(int n_modes) const;
};

/// Hermitian Clifford generators c_1..c_{2n}: c_j c_k + c_k c_j = 2 delta_jk.
struct CliffordRep {
  int n_modes = 0;
  std::vector<PauliString> generators;

  Index fock_dim() const { return Index{1} << n_modes; }
  /// Ordered product c_{a_1} c_{a_2} ... over the set bits of `mask`.
  PauliString monomial(std::uint32_t mask) const;
};

/// Jordan-Wigner construction. Throws ErrorKind::ResourceCap outside [1, 10].
CliffordRep jw_generators(int n_modes);

/// PSD, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  /// Throws ErrorKind::Validation unless trace is 1 within 1e-10 and the
  /// spectrum is >= -psd_tol.
  explicit DensityMatrix(const HermitianMatrix& rho, double psd_tol = 1e-9);

  const HermitianMatrix& hermitian() const noexcept { return rho_; }
  const Matrix& matrix() const noexcept { return rho_.matrix(); }
  Index dim() const noexcept { return rho_.dim(); }

 private:
  HermitianMatrix rho_;
};

/// tr(rho c_A) for a Pauli monomial, exploiting its one-entry-per-column form.
cplx expectation(const DensityMatrix& rho, const PauliString& op);

/// Quasi-free density matrix with covariance S (d = 2 n_modes). Built from
/// rho = 2^{-n} sum_A tr(c_A^* rho) c_A, where tr(rho c_A) is the Wick moment
/// of the scaled generators e_j = c_j / sqrt(2). Throws
/// ErrorKind::ConsistencyViolation if the result fails the PSD check.
DensityMatrix density_from_covariance(const CarCovariance& s);

/// rho^{1/2}. Eigenvalues below 1e-12 of the largest are roundoff and dropped;
/// their square roots would otherwise leak ~1e-8 into overlaps of pure states.
Matrix density_sqrt(const DensityMatrix& rho);

/// tr(rho^{1/2} tau^{1/2}).
double overlap(const DensityMatrix& rho, const DensityMatrix& tau);

/// tr |rho^{1/2} tau^{1/2}| (sum of singular values).
double fidelity_tr(const DensityMatrix& rho, const DensityMatrix& tau);

}  // namespace qf
