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

// Fermionic (CAR) covariance operators. V = R^d sits inside C^d as the
// real-coordinate vectors, so complex conjugation of an operator is entrywise.

#include <span>

#include "qf/matcore.hpp"

namespace qf {

/// Tolerance for the defining relations 0 <= S <= I and S + conj(S) = I.
inline constexpr double kCovarianceTol = 1e-10;

/// Validated covariance operator S: Hermitian, 0 <= S <= I, S + conj(S) = I.
class CarCovariance {
 public:
  const HermitianMatrix& op() const noexcept { return s_; }
  const Matrix& matrix() const noexcept { return s_.matrix(); }
  Index dim() const noexcept { return s_.dim(); }

  friend CarCovariance validate_car(const Matrix& s_raw, double tol);

 private:
  explicit CarCovariance(HermitianMatrix s) : s_(std::move(s)) {}
  HermitianMatrix s_;
};

/// Errors (ErrorKind::Validation / NotPsd) carry the max violation:
/// "not Hermitian", "S+conj(S) != I", "not PSD".
CarCovariance validate_car(const Matrix& s_raw, double tol = kCovarianceTol);

class CarStatePair {
 public:
  /// Throws ErrorKind::Validation on dimension mismatch.
  CarStatePair(CarCovariance s, CarCovariance t);

  const CarCovariance& s() const noexcept { return s_; }
  const CarCovariance& t() const noexcept { return t_; }
  Index dim() const noexcept { return s_.dim(); }

 private:
  CarCovariance s_;
  CarCovariance t_;
};

/// Single-mode (d = 2) covariance [[1/2, -i mu], [i mu, 1/2]], |mu| <= 1/2.
/// Eigenvalues 1/2 +- mu; mu = +-1/2 are the Fock / co-Fock states.
CarCovariance car_mode_covariance(double mu);

/// S (+) S' on V (+) V'.
CarCovariance direct_sum(const CarCovariance& a, const CarCovariance& b);

/// Two-point function phi_S(x y) = x^T S y.
cplx car_two_point(const CarCovariance& s, const Vector& x, const Vector& y);

/// phi_S(x_1 x_2 ... x_n): Pfaffian of the pairing matrix, 0 for odd n.
cplx wick_moment(const CarCovariance& s, std::span<const Vector> xs);

struct CarTransition {
  double value = 0.0;   ///< (phi_S^{1/2} | phi_T^{1/2}) in [0, 1]
  double det_mm = 0.0;  ///< det(M M*) = |det M|^2
};

/// det(M M*)^{1/4} with M = S^{1/2} T^{1/2} + (I-S)^{1/2} (I-T)^{1/2}.
CarTransition trans_prob_car_detail(const CarStatePair& pair);
double trans_prob_car(const CarStatePair& pair);

/// ||S^{1/2} - T^{1/2}||_HS.
double qe_distance_car(const CarStatePair& pair);

/// [[S, sqrt(S(I-S))], [sqrt(S(I-S)), I-S]] on C^d (+) C^d.
ProjectionMatrix quadrature(const CarCovariance& s);

/// The quadrature as a covariance for the real space V (+) iV. In the
/// coordinates (xi, -i eta) the conjugation of V (+) iV becomes entrywise,
/// so this is D P D* with D = diag(I, -iI) and passes validate_car.
CarCovariance quadrature_covariance(const CarCovariance& s);

struct QuadratureIdentity {
  double lhs = 0.0;  ///< transition probability between the quadratures
  double rhs = 0.0;  ///< transition probability between S and T, squared
};
QuadratureIdentity quadrature_identity_check(const CarStatePair& pair);

/// rank(P meet (I - Q)) for the quadratures P, Q of S, T.
Index meet_criterion(const CarStatePair& pair, double tol = kProjectionTol);

/// H with S = (1 + e^H)^{-1}. Throws ErrorKind::DegenerateCovariance when an
/// eigenvalue of S lies within tol of 0 or 1.
HermitianMatrix hamiltonian_of(const CarCovariance& s, double tol = kPsdClampTol);

/// Standard (faithful) iff ker S = {0}.
bool is_standard_car(const CarCovariance& s, double tol = kPsdClampTol);

}  // namespace qf
