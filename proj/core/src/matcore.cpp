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

#include "qf/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::Validation, os.str());
  }
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw Error(ErrorKind::Validation, os.str());
  }
}

// Columns of es.vectors whose eigenvalue exceeds the relative threshold.
Matrix columns_above(const EigenSystem& es, double threshold) {
  std::vector<Index> keep;
  for (Index j = 0; j < es.values.size(); ++j) {
    if (es.values(j) > threshold) keep.push_back(j);
  }
  Matrix out(es.vectors.rows(), static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out.col(static_cast<Index>(c)) = es.vectors.col(keep[c]);
  return out;
}

void check_psd(const EigenSystem& es, double tol, const char* what) {
  if (es.values.size() == 0) return;
  const double scale = spectral_radius(es);
  const double lo = es.values(0);
  if (lo < -tol * scale) {
    std::ostringstream os;
    os << what << ": not PSD (eigenvalue " << lo << ")";
    throw Error(ErrorKind::NotPsd, os.str(), lo);
  }
}

// A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} for positive definite A, B.
Matrix invertible_mean(const HermitianMatrix& a, const HermitianMatrix& b) {
  const EigenSystem ea = eig_h(a);
  const HermitianMatrix a_half = spectral_map(ea, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  const HermitianMatrix a_neg_half = spectral_map(ea, [](double x) { return 1.0 / std::sqrt(x); });
  const HermitianMatrix inner =
      HermitianMatrix::symmetrized(a_neg_half.matrix() * b.matrix() * a_neg_half.matrix());
  const HermitianMatrix inner_sqrt = sqrt_psd(inner);
  return a_half.matrix() * inner_sqrt.matrix() * a_half.matrix();
}

// (Q* A^+ Q)^{-1}: the short of A onto span(Q), expressed in the basis Q.
// Requires span(Q) inside ran(A).
HermitianMatrix shorted_in_basis(const EigenSystem& ea, const Matrix& q, double threshold) {
  const HermitianMatrix a_pinv =
      spectral_map(ea, [threshold](double x) { return x > threshold ? 1.0 / x : 0.0; });
  const Matrix compressed = q.adjoint() * a_pinv.matrix() * q;
  return HermitianMatrix::symmetrized(compressed.inverse());
}

}  // namespace

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  require_square(m, "HermitianMatrix");
  const double defect = max_abs(m - m.adjoint());
  if (defect > kHermitianTol * (1.0 + max_abs(m))) {
    std::ostringstream os;
    os << "not Hermitian (max |H - H*| = " << defect << ")";
    throw Error(ErrorKind::Validation, os.str(), defect);
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::symmetrized(const Matrix& m) {
  require_square(m, "HermitianMatrix");
  HermitianMatrix h;
  h.m_ = (m + m.adjoint()) * 0.5;
  return h;
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  return symmetrized(Matrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return symmetrized(Matrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return symmetrized(d.cast<cplx>().asDiagonal().toDenseMatrix());
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_same_dim(dim(), o.dim(), "HermitianMatrix +");
  return symmetrized(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_same_dim(dim(), o.dim(), "HermitianMatrix -");
  return symmetrized(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  HermitianMatrix h;
  h.m_ = m_ * s;
  return h;
}

// ---------------------------------------------------------------------------
// SkewMatrix

SkewMatrix::SkewMatrix(const Matrix& m) {
  require_square(m, "SkewMatrix");
  const Matrix tr = m.transpose();
  const double defect = max_abs(m + tr);
  if (defect > kHermitianTol * (1.0 + max_abs(m))) {
    std::ostringstream os;
    os << "not antisymmetric (max |A + A^T| = " << defect << ")";
    throw Error(ErrorKind::Validation, os.str(), defect);
  }
  m_ = (m - tr) * 0.5;
}

// ---------------------------------------------------------------------------
// ProjectionMatrix

ProjectionMatrix::ProjectionMatrix(const HermitianMatrix& p) : p_(p) {
  const Matrix& m = p_.matrix();
  const double idem = hs_norm(m * m - m);
  const double tol = kProjectionTol * std::max<double>(1.0, static_cast<double>(m.rows()));
  if (idem > tol) {
    std::ostringstream os;
    os << "not a projection (||P^2 - P||_HS = " << idem << ")";
    throw Error(ErrorKind::Validation, os.str(), idem);
  }
  const EigenSystem es = eig_h(p_);
  for (Index j = 0; j < es.values.size(); ++j) {
    const double v = es.values(j);
    if (std::min(std::abs(v), std::abs(v - 1.0)) > kProjectionTol) {
      std::ostringstream os;
      os << "not a projection (eigenvalue " << v << ")";
      throw Error(ErrorKind::Validation, os.str(), v);
    }
  }
}

ProjectionMatrix ProjectionMatrix::onto(const Matrix& basis, Index dim) {
  if (basis.cols() == 0) return ProjectionMatrix(HermitianMatrix::zero(dim), Trusted{});
  require_same_dim(basis.rows(), dim, "ProjectionMatrix::onto");
  return ProjectionMatrix(HermitianMatrix::symmetrized(basis * basis.adjoint()), Trusted{});
}

Index ProjectionMatrix::rank() const {
  return static_cast<Index>(std::llround(p_.matrix().trace().real()));
}

ProjectionMatrix ProjectionMatrix::complement() const {
  return ProjectionMatrix(HermitianMatrix::identity(dim()) - p_, Trusted{});
}

// ---------------------------------------------------------------------------
// Spectral routines

EigenSystem eig_h(const HermitianMatrix& h) {
  if (h.dim() == 0) return {RealVector(0), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "eig_h: Hermitian eigensolver did not converge");
  }
  // Eigen returns eigenvalues in increasing order.
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double spectral_radius(const EigenSystem& es) {
  if (es.values.size() == 0) return 0.0;
  return std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
}

HermitianMatrix spectral_map(const EigenSystem& es, const std::function<double(double)>& f) {
  RealVector fv(es.values.size());
  for (Index j = 0; j < fv.size(); ++j) fv(j) = f(es.values(j));
  return HermitianMatrix::symmetrized(es.vectors * fv.cast<cplx>().asDiagonal() * es.vectors.adjoint());
}

HermitianMatrix sqrt_psd(const HermitianMatrix& h, double clamp_tol) {
  const EigenSystem es = eig_h(h);
  check_psd(es, clamp_tol, "sqrt_psd");
  const double cut = clamp_tol * spectral_radius(es);
  return spectral_map(es, [cut](double x) { return x > cut ? std::sqrt(x) : 0.0; });
}

cplx pfaffian(const SkewMatrix& skew) {
  const Index n = skew.dim();
  if (n % 2 != 0) {
    throw Error(ErrorKind::Validation, "pfaffian: odd dimension");
  }
  if (n == 0) return 1.0;

  Matrix a = skew.matrix();
  cplx result = 1.0;
  for (Index k = 0; k + 1 < n; k += 2) {
    Index kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Index i = k + 2; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        kp = i;
      }
    }
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      result = -result;
    }
    if (a(k + 1, k) == cplx(0.0)) return 0.0;

    const cplx pivot = a(k, k + 1);
    result *= pivot;
    if (k + 2 < n) {
      const Index m = n - k - 2;
      const Vector tau = a.row(k).tail(m).transpose() / pivot;
      const Vector col = a.col(k + 1).tail(m);
      a.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return result;
}

GeometricMean geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b, double reg) {
  require_same_dim(a.dim(), b.dim(), "geometric_mean");
  const Index n = a.dim();
  const EigenSystem ea = eig_h(a);
  const EigenSystem eb = eig_h(b);
  check_psd(ea, reg, "geometric_mean(A)");
  check_psd(eb, reg, "geometric_mean(B)");

  const double cut_a = reg * spectral_radius(ea);
  const double cut_b = reg * spectral_radius(eb);
  const Matrix qa = columns_above(ea, cut_a);
  const Matrix qb = columns_above(eb, cut_b);

  GeometricMean out;
  const ProjectionMatrix pa = ProjectionMatrix::onto(qa, n);
  const ProjectionMatrix pb = ProjectionMatrix::onto(qb, n);
  out.support_mismatch = qa.cols() != qb.cols() || hs_norm(pa.matrix() - pb.matrix()) > kProjectionTol;

  if (qa.cols() == n && qb.cols() == n) {
    out.value = HermitianMatrix::symmetrized(invertible_mean(a, b));
    out.common_rank = n;
    return out;
  }

  const ProjectionMatrix meet = projection_meet(pa, pb);
  const Matrix qk = support_basis(meet.hermitian(), 0.5);
  out.common_rank = qk.cols();
  if (qk.cols() == 0) {
    out.value = HermitianMatrix::zero(n);
    return out;
  }
  const HermitianMatrix a_k = shorted_in_basis(ea, qk, cut_a);
  const HermitianMatrix b_k = shorted_in_basis(eb, qk, cut_b);
  out.value = HermitianMatrix::symmetrized(qk * invertible_mean(a_k, b_k) * qk.adjoint());
  return out;
}

HermitianMatrix ratio(const HermitianMatrix& x, const HermitianMatrix& g, double tol) {
  require_same_dim(x.dim(), g.dim(), "ratio");
  const Index n = g.dim();
  const EigenSystem eg = eig_h(g);
  check_psd(eg, tol, "ratio(G)");
  const double cut = tol * spectral_radius(eg);
  const Matrix q = columns_above(eg, cut);

  // Part of X living off supp(G).
  const Matrix off = Matrix::Identity(n, n) - q * q.adjoint();
  const HermitianMatrix x_off = HermitianMatrix::symmetrized(off * x.matrix() * off);
  const EigenSystem eo = eig_h(x_off);
  const double x_scale = std::max(max_abs(x.matrix()), max_abs(g.matrix()));
  if (n > 0 && spectral_radius(eo) > 1e-8 * x_scale) {
    const Index w = std::abs(eo.values(0)) > std::abs(eo.values(n - 1)) ? 0 : n - 1;
    std::ostringstream os;
    os << "ratio: X is not supported on supp(G); witness vector [";
    for (Index j = 0; j < n; ++j) os << (j ? ", " : "") << eo.vectors(j, w);
    os << "] has X-weight " << eo.values(w);
    throw Error(ErrorKind::SupportViolation, os.str(), eo.values(w));
  }

  const HermitianMatrix g_inv_half =
      spectral_map(eg, [cut](double v) { return v > cut ? 1.0 / std::sqrt(v) : 0.0; });
  return HermitianMatrix::symmetrized(g_inv_half.matrix() * x.matrix() * g_inv_half.matrix());
}

ProjectionMatrix projection_meet(const ProjectionMatrix& p, const ProjectionMatrix& r, double tol) {
  require_same_dim(p.dim(), r.dim(), "projection_meet");
  const EigenSystem es = eig_h(p.hermitian() + r.hermitian());
  return ProjectionMatrix::onto(columns_above(es, 2.0 - tol), p.dim());
}

double hs_norm(const Matrix& x) { return x.norm(); }

Matrix conj_matrix(const Matrix& x) { return x.conjugate(); }

HermitianMatrix conj_matrix(const HermitianMatrix& x) {
  return HermitianMatrix::symmetrized(x.matrix().conjugate());
}

Matrix support_basis(const HermitianMatrix& h, double tol) {
  const EigenSystem es = eig_h(h);
  return columns_above(es, tol * spectral_radius(es));
}

ProjectionMatrix support_projection(const HermitianMatrix& h, double tol) {
  return ProjectionMatrix::onto(support_basis(h, tol), h.dim());
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace qf
