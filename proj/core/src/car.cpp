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

#include "qf/car.hpp"

#include <cmath>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

namespace {

// Singular values of M below this (relative to ||M||_2) are exact zeros.
constexpr double kSingularCut = 1e-12;

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

CarCovariance validate_car(const Matrix& s_raw, double tol) {
  if (s_raw.rows() != s_raw.cols() || s_raw.rows() == 0) {
    std::ostringstream os;
    os << "CAR covariance must be a non-empty square matrix, got " << s_raw.rows() << "x" << s_raw.cols();
    throw Error(ErrorKind::Validation, os.str());
  }
  const double herm = max_abs(s_raw - s_raw.adjoint());
  if (herm > tol * (1.0 + max_abs(s_raw))) {
    std::ostringstream os;
    os << "not Hermitian (max violation " << herm << ")";
    throw Error(ErrorKind::Validation, os.str(), herm);
  }
  HermitianMatrix s = HermitianMatrix::symmetrized(s_raw);
  const Index d = s.dim();

  const double rel = max_abs(s.matrix() + s.matrix().conjugate() - Matrix::Identity(d, d));
  if (rel > tol) {
    std::ostringstream os;
    os << "S+conj(S) != I (max violation " << rel << ")";
    throw Error(ErrorKind::Validation, os.str(), rel);
  }

  const EigenSystem es = eig_h(s);
  const double lo = es.values(0);
  const double hi = es.values(d - 1);
  if (lo < -tol || hi > 1.0 + tol) {
    const double violation = std::max(-lo, hi - 1.0);
    std::ostringstream os;
    os << "not PSD: spectrum [" << lo << ", " << hi << "] leaves [0, 1] (max violation " << violation << ")";
    throw Error(ErrorKind::NotPsd, os.str(), violation);
  }
  return CarCovariance(std::move(s));
}

CarStatePair::CarStatePair(CarCovariance s, CarCovariance t) : s_(std::move(s)), t_(std::move(t)) {
  if (s_.dim() != t_.dim()) {
    std::ostringstream os;
    os << "CAR pair dimension mismatch (" << s_.dim() << " vs " << t_.dim() << ")";
    throw Error(ErrorKind::Validation, os.str());
  }
}

CarCovariance car_mode_covariance(double mu) {
  Matrix s(2, 2);
  s << 0.5, cplx(0.0, -mu), cplx(0.0, mu), 0.5;
  return validate_car(s);
}

CarCovariance direct_sum(const CarCovariance& a, const CarCovariance& b) {
  return validate_car(block_diag(a.matrix(), b.matrix()));
}

cplx car_two_point(const CarCovariance& s, const Vector& x, const Vector& y) {
  if (x.size() != s.dim() || y.size() != s.dim()) {
    throw Error(ErrorKind::Validation, "car_two_point: vector length does not match covariance dimension");
  }
  return (x.transpose() * s.matrix() * y)(0, 0);
}

cplx wick_moment(const CarCovariance& s, std::span<const Vector> xs) {
  for (const Vector& x : xs) {
    if (x.size() != s.dim()) {
      throw Error(ErrorKind::Validation, "wick_moment: vector length does not match covariance dimension");
    }
  }
  const Index n = static_cast<Index>(xs.size());
  if (n % 2 != 0) return 0.0;  // quasi-free states are even

  Matrix pairing = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      const cplx v = car_two_point(s, xs[j], xs[k]);
      pairing(j, k) = v;
      pairing(k, j) = -v;
    }
  }
  return pfaffian(SkewMatrix(pairing));
}

CarTransition trans_prob_car_detail(const CarStatePair& pair) {
  const Index d = pair.dim();
  const HermitianMatrix id = HermitianMatrix::identity(d);
  const HermitianMatrix& s = pair.s().op();
  const HermitianMatrix& t = pair.t().op();
  const Matrix m = sqrt_psd(s).matrix() * sqrt_psd(t).matrix() +
                   sqrt_psd(id - s).matrix() * sqrt_psd(id - t).matrix();

  // |det M| as a product of singular values, with numerically-zero ones exact.
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector& sv = svd.singularValues();
  const double cut = kSingularCut * std::max(1.0, sv.size() ? sv(0) : 0.0);
  double abs_det = 1.0;
  for (Index j = 0; j < sv.size(); ++j) abs_det *= sv(j) > cut ? sv(j) : 0.0;

  CarTransition out;
  out.det_mm = abs_det * abs_det;
  out.value = std::clamp(std::sqrt(abs_det), 0.0, 1.0);
  return out;
}

double trans_prob_car(const CarStatePair& pair) { return trans_prob_car_detail(pair).value; }

double qe_distance_car(const CarStatePair& pair) {
  return hs_norm(sqrt_psd(pair.s().op()).matrix() - sqrt_psd(pair.t().op()).matrix());
}

ProjectionMatrix quadrature(const CarCovariance& s) {
  const Index d = s.dim();
  const HermitianMatrix id = HermitianMatrix::identity(d);
  const HermitianMatrix co = id - s.op();
  // S(I - S) = I/4 + K^2 is real symmetric with spectrum in [0, 1/4].
  const RealMatrix prod = (s.matrix() * co.matrix()).real();
  const HermitianMatrix x = HermitianMatrix::symmetrized(prod.cast<cplx>());
  const Matrix off =
      spectral_map(eig_h(x), [](double v) { return v > kPsdClampTol ? std::sqrt(v) : 0.0; }).matrix().real().cast<cplx>();
  Matrix p(2 * d, 2 * d);
  p.topLeftCorner(d, d) = s.matrix();
  p.topRightCorner(d, d) = off;
  p.bottomLeftCorner(d, d) = off;
  p.bottomRightCorner(d, d) = co.matrix();
  return ProjectionMatrix(HermitianMatrix::symmetrized(p));
}

CarCovariance quadrature_covariance(const CarCovariance& s) {
  const Index d = s.dim();
  Matrix p = quadrature(s).matrix();
  // D P D* with D = diag(I, -iI).
  p.topRightCorner(d, d) *= cplx(0.0, 1.0);
  p.bottomLeftCorner(d, d) *= cplx(0.0, -1.0);
  return validate_car(p);
}

QuadratureIdentity quadrature_identity_check(const CarStatePair& pair) {
  const CarStatePair quads(quadrature_covariance(pair.s()), quadrature_covariance(pair.t()));
  const double t = trans_prob_car(pair);
  return {trans_prob_car(quads), t * t};
}

Index meet_criterion(const CarStatePair& pair, double tol) {
  const ProjectionMatrix p = quadrature(pair.s());
  const ProjectionMatrix q = quadrature(pair.t());
  return projection_meet(p, q.complement(), tol).rank();
}

HermitianMatrix hamiltonian_of(const CarCovariance& s, double tol) {
  const EigenSystem es = eig_h(s.op());
  for (Index j = 0; j < es.values.size(); ++j) {
    const double v = es.values(j);
    if (v <= tol || v >= 1.0 - tol) {
      std::ostringstream os;
      os << "degenerate covariance (eigenvalue " << v << ")";
      throw Error(ErrorKind::DegenerateCovariance, os.str(), v);
    }
  }
  return spectral_map(es, [](double v) { return std::log((1.0 - v) / v); });
}

bool is_standard_car(const CarCovariance& s, double tol) {
  return eig_h(s.op()).values(0) > tol;
}

}  // namespace qf
