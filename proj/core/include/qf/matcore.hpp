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

// Dense Hermitian / skew-symmetric matrix calculus. Every matrix function
// goes through an eigendecomposition of an explicitly symmetrized input.

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qf {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative eigenvalue cutoff below which a PSD eigenvalue counts as zero.
inline constexpr double kPsdClampTol = 1e-10;
/// Hermiticity tolerance, scaled by (1 + max |entry|).
inline constexpr double kHermitianTol = 1e-10;
/// Idempotence tolerance for projections, scaled by dimension.
inline constexpr double kProjectionTol = 1e-8;

class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Throws ErrorKind::Validation if `m` is not square or not Hermitian
  /// within kHermitianTol * (1 + max|m_jk|); stores (m + m*) / 2.
  explicit HermitianMatrix(const Matrix& m);

  /// Symmetrizes without checking. For values Hermitian by construction.
  static HermitianMatrix symmetrized(const Matrix& m);

  static HermitianMatrix identity(Index dim);
  static HermitianMatrix zero(Index dim);
  static HermitianMatrix diagonal(const RealVector& d);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  Matrix m_;
};

/// Complex antisymmetric matrix (A^T = -A, no conjugation).
class SkewMatrix {
 public:
  SkewMatrix() = default;
  /// Throws ErrorKind::Validation if `m` is not square or not antisymmetric
  /// within tolerance; stores (m - m^T) / 2.
  explicit SkewMatrix(const Matrix& m);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

class ProjectionMatrix {
 public:
  ProjectionMatrix() = default;
  /// Throws ErrorKind::Validation unless ||P^2 - P||_HS <= kProjectionTol * dim
  /// and every eigenvalue lies within kProjectionTol of {0, 1}.
  explicit ProjectionMatrix(const HermitianMatrix& p);

  /// Orthogonal projection onto the span of orthonormal columns `basis`.
  static ProjectionMatrix onto(const Matrix& basis, Index dim);

  const HermitianMatrix& hermitian() const noexcept { return p_; }
  const Matrix& matrix() const noexcept { return p_.matrix(); }
  Index dim() const noexcept { return p_.dim(); }
  Index rank() const;

  /// I - P.
  ProjectionMatrix complement() const;

 private:
  struct Trusted {};
  ProjectionMatrix(HermitianMatrix p, Trusted) : p_(std::move(p)) {}
  HermitianMatrix p_;
};

struct EigenSystem {
  RealVector values;  ///< ascending
  Matrix vectors;     ///< orthonormal columns, vectors.col(j) <-> values(j)
};

/// Eigendecomposition; throws ErrorKind::NonConvergence on solver failure.
EigenSystem eig_h(const HermitianMatrix& h);

/// max |lambda|, the scale all relative thresholds refer to.
double spectral_radius(const EigenSystem& es);

/// f applied to the spectrum: V f(Lambda) V*.
HermitianMatrix spectral_map(const EigenSystem& es, const std::function<double(double)>& f);

/// Positive square root. Eigenvalues in [-clamp_tol*||H||, clamp_tol*||H||]
/// are treated as exact zeros; anything more negative throws ErrorKind::NotPsd
/// carrying the eigenvalue.
HermitianMatrix sqrt_psd(const HermitianMatrix& h, double clamp_tol = kPsdClampTol);

/// Pfaffian by skew-symmetric (Parlett-Reid) tridiagonalization with pivoting.
/// Odd dimension throws ErrorKind::Validation. The empty matrix has Pfaffian 1.
cplx pfaffian(const SkewMatrix& a);

struct GeometricMean {
  HermitianMatrix value;
  bool support_mismatch = false;  ///< supports of A and B differ
  Index common_rank = 0;          ///< dim of ran(A) intersected with ran(B)
};

/// Matrix geometric mean A # B of PSD matrices.
///
/// On the common support K = ran A n ran B this is the invertible-case formula
/// A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}, applied to the compressions of
/// A and B shorted onto K; it vanishes on the orthogonal complement of K. This
/// agrees with the maximal X >= 0 such that [[A, X], [X, B]] >= 0.
/// `reg` is the relative support threshold.
GeometricMean geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                             double reg = kPsdClampTol);

/// G^{-1/2} X G^{-1/2} with the pseudo-inverse square root on supp(G), zero
/// elsewhere. Throws ErrorKind::SupportViolation if X does not live on supp(G).
HermitianMatrix ratio(const HermitianMatrix& x, const HermitianMatrix& g,
                      double tol = kPsdClampTol);

/// Projection onto ran(P) n ran(R): eigenspace of P + R with eigenvalue >= 2 - tol.
ProjectionMatrix projection_meet(const ProjectionMatrix& p, const ProjectionMatrix& r,
                                 double tol = kProjectionTol);

double hs_norm(const Matrix& x);

/// Entrywise complex conjugate.
Matrix conj_matrix(const Matrix& x);
HermitianMatrix conj_matrix(const HermitianMatrix& x);

/// Projection onto the span of eigenvectors with eigenvalue > tol * ||H||.
ProjectionMatrix support_projection(const HermitianMatrix& h, double tol = kPsdClampTol);

/// Orthonormal basis (columns) of the same span as support_projection.
Matrix support_basis(const HermitianMatrix& h, double tol = kPsdClampTol);

/// Block-diagonal [[a, 0], [0, b]].
Matrix block_diag(const Matrix& a, const Matrix& b);

}  // namespace qf
