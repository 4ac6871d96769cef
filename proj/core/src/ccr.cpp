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

#include "qf/ccr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

namespace {

constexpr double kKernelCut = 1e-10;       // ratio eigenvalue counted as zero
constexpr double kOtherFormFloor = 1e-8;   // the other form must see the kernel vector
constexpr double kConditionBound = 1e12;   // mutual domination bound

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_same_space(const CcrCovariance& s, const CcrCovariance& t, const char* what) {
  if (!s.space().same_as(t.space())) {
    std::ostringstream os;
    os << what << ": covariance forms live on different symplectic spaces";
    throw Error(ErrorKind::Validation, os.str());
  }
}

// Q* M Q for orthonormal columns Q.
HermitianMatrix compress(const HermitianMatrix& m, const Matrix& q) {
  return HermitianMatrix::symmetrized(q.adjoint() * m.matrix() * q);
}

HermitianMatrix inv_sqrt_pd(const HermitianMatrix& m) {
  return spectral_map(eig_h(m), [](double v) { return 1.0 / std::sqrt(v); });
}

HermitianMatrix sqrt_pd(const HermitianMatrix& m) {
  return spectral_map(eig_h(m), [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

// Real representative of a complex vector spanning a conjugation-invariant
// kernel: the larger of its real and imaginary parts, normalized.
RealVector real_representative(const Vector& w) {
  RealVector re = w.real();
  RealVector im = w.imag();
  RealVector h = re.norm() >= im.norm() ? re : im;
  const double n = h.norm();
  return n > 0 ? RealVector(h / n) : h;
}

}  // namespace

// ---------------------------------------------------------------------------

SymplecticSpace::SymplecticSpace(const RealMatrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
    throw Error(ErrorKind::Validation, "sigma must be a non-empty square matrix");
  }
  const double defect = max_abs(sigma + sigma.transpose());
  if (defect > 1e-10 * (1.0 + max_abs(sigma))) {
    std::ostringstream os;
    os << "sigma is not antisymmetric (max |sigma + sigma^T| = " << defect << ")";
    throw Error(ErrorKind::Validation, os.str(), defect);
  }
  sigma_ = (sigma - sigma.transpose()) * 0.5;
}

SymplecticSpace SymplecticSpace::canonical(Index n_modes) {
  RealMatrix sigma = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  sigma.topRightCorner(n_modes, n_modes).setIdentity();
  sigma.bottomLeftCorner(n_modes, n_modes) = -RealMatrix::Identity(n_modes, n_modes);
  return SymplecticSpace(sigma);
}

bool SymplecticSpace::same_as(const SymplecticSpace& o) const {
  return dim() == o.dim() && max_abs(sigma_ - o.sigma_) <= 1e-12 * (1.0 + max_abs(sigma_));
}

HermitianMatrix CcrCovariance::s() const {
  return HermitianMatrix::symmetrized(r_.cast<cplx>() + cplx(0.0, 0.5) * space_.sigma().cast<cplx>());
}

HermitianMatrix CcrCovariance::s_conj() const {
  return HermitianMatrix::symmetrized(r_.cast<cplx>() - cplx(0.0, 0.5) * space_.sigma().cast<cplx>());
}

CcrCovariance validate_ccr(const SymplecticSpace& space, const RealMatrix& r, double tol) {
  if (r.rows() != space.dim() || r.cols() != space.dim()) {
    std::ostringstream os;
    os << "R has shape " << r.rows() << "x" << r.cols() << ", expected " << space.dim() << "x" << space.dim();
    throw Error(ErrorKind::Validation, os.str());
  }
  const double asym = max_abs(r - r.transpose());
  if (asym > tol * (1.0 + max_abs(r))) {
    std::ostringstream os;
    os << "R is not symmetric (max violation " << asym << ")";
    throw Error(ErrorKind::Validation, os.str(), asym);
  }
  CcrCovariance cov(space, (r + r.transpose()) * 0.5);
  const EigenSystem es = eig_h(cov.s());
  const double lo = es.values(0);
  const double scale = std::max(1.0, spectral_radius(es));
  if (lo < -tol * scale) {
    std::ostringstream os;
    os << "not a covariance form (min eigenvalue of R + i sigma/2 is " << lo << ")";
    throw Error(ErrorKind::NotPsd, os.str(), lo);
  }
  return cov;
}

CcrCovariance ccr_thermal_mode(double c) {
  return validate_ccr(SymplecticSpace::canonical(1), RealMatrix::Identity(2, 2) * (c / 2.0));
}

CcrCovariance direct_sum(const CcrCovariance& a, const CcrCovariance& b) {
  const Index da = a.dim();
  const Index db = b.dim();
  RealMatrix sigma = RealMatrix::Zero(da + db, da + db);
  RealMatrix r = RealMatrix::Zero(da + db, da + db);
  sigma.topLeftCorner(da, da) = a.space().sigma();
  sigma.bottomRightCorner(db, db) = b.space().sigma();
  r.topLeftCorner(da, da) = a.r();
  r.bottomRightCorner(db, db) = b.r();
  return validate_ccr(SymplecticSpace(sigma), r);
}

double char_value(const CcrCovariance& s, const RealVector& x) {
  if (x.size() != s.dim()) throw Error(ErrorKind::Validation, "char_value: vector length mismatch");
  return std::exp(-0.5 * x.dot(s.r() * x));
}

HermitianMatrix ab_form(const CcrCovariance& s) {
  const HermitianMatrix re = HermitianMatrix::symmetrized(s.r().cast<cplx>());
  return re + geometric_mean(s.s(), s.s_conj()).value;
}

std::string_view to_string(CcrVerdictKind k) {
  switch (k) {
    case CcrVerdictKind::QuasiEquivalent: return "QuasiEquivalent";
    case CcrVerdictKind::Disjoint: return "Disjoint";
  }
  return "?";
}

std::string_view to_string(CcrReason r) {
  switch (r) {
    case CcrReason::PositiveTransitionProbability: return "PositiveTransitionProbability";
    case CcrReason::CentralElementMismatch: return "CentralElementMismatch";
    case CcrReason::SupportMismatch: return "SupportMismatch";
    case CcrReason::HSDivergence: return "HSDivergence";
  }
  return "?";
}

CcrTransition trans_prob_ccr_detail(const CcrCovariance& s, const CcrCovariance& t) {
  require_same_space(s, t, "trans_prob_ccr");
  const HermitianMatrix a = ab_form(s);
  const HermitianMatrix b = ab_form(t);
  const HermitianMatrix g = a + b;

  CcrTransition out;
  const Matrix q = support_basis(g);
  out.support_rank = q.cols();
  if (q.cols() == 0) {
    // Both forms vanish: the states agree on a commutative trivial algebra.
    out.value = out.det_value = 1.0;
    out.min_ratio_a = out.min_ratio_b = 0.5;
    return out;
  }

  // Everything below is expressed on supp(G) in the basis q, where G is invertible.
  const HermitianMatrix gk = compress(g, q);
  const HermitianMatrix ra = ratio(compress(a, q), gk);
  const HermitianMatrix rb = ratio(compress(b, q), gk);
  const EigenSystem ea = eig_h(ra);
  const EigenSystem eb = eig_h(rb);
  out.min_ratio_a = ea.values(0);
  out.min_ratio_b = eb.values(0);

  const bool a_kernel = out.min_ratio_a < kKernelCut && 1.0 - out.min_ratio_a > kOtherFormFloor;
  const bool b_kernel = out.min_ratio_b < kKernelCut && 1.0 - out.min_ratio_b > kOtherFormFloor;
  if (a_kernel || b_kernel) {
    const Vector hk = a_kernel ? Vector(ea.vectors.col(0)) : Vector(eb.vectors.col(0));
    const Vector w = q * (inv_sqrt_pd(gk).matrix() * hk);
    out.kernel_mismatch = true;
    out.witness = real_representative(w);
    const RealVector& h = out.witness;
    const double scale = 1.0 + max_abs(s.space().sigma());
    const double central_defect = (s.space().sigma() * h).norm();
    const double own = a_kernel ? h.dot(s.r() * h) : h.dot(t.r() * h);
    out.witness_central = central_defect <= 1e-8 * scale && own <= 1e-8 * (1.0 + max_abs(a_kernel ? s.r() : t.r()));
    out.value = out.det_value = 0.0;
    return out;
  }

  const HermitianMatrix mean = geometric_mean(a, b).value;
  const HermitianMatrix rm = ratio(compress(mean, q), gk);
  const EigenSystem em = eig_h(rm);
  double det = 1.0;
  for (Index j = 0; j < em.values.size(); ++j) det *= 2.0 * std::max(em.values(j), 0.0);
  out.det_value = std::clamp(det, 0.0, 1.0);
  out.value = std::sqrt(out.det_value);
  return out;
}

double trans_prob_ccr(const CcrCovariance& s, const CcrCovariance& t) {
  return trans_prob_ccr_detail(s, t).value;
}

QeDistanceCcr qe_distance_ccr(const CcrCovariance& s, const CcrCovariance& t) {
  require_same_space(s, t, "qe_distance_ccr");
  const HermitianMatrix x = HermitianMatrix::symmetrized(2.0 * s.r().cast<cplx>());
  const HermitianMatrix y = HermitianMatrix::symmetrized(2.0 * t.r().cast<cplx>());

  QeDistanceCcr out;
  out.hs_dist = std::numeric_limits<double>::infinity();
  const Matrix qx = support_basis(x);
  const Matrix qy = support_basis(y);
  const ProjectionMatrix px = ProjectionMatrix::onto(qx, x.dim());
  const ProjectionMatrix py = ProjectionMatrix::onto(qy, y.dim());
  if (qx.cols() != qy.cols() || hs_norm(px.matrix() - py.matrix()) > kProjectionTol) return out;
  if (qx.cols() == 0) {
    out.equiv_metrics = true;
    out.hs_dist = 0.0;
    return out;
  }

  const HermitianMatrix xk = compress(x, qx);
  const HermitianMatrix yk = compress(y, qx);
  const HermitianMatrix x_half = sqrt_pd(xk);
  const HermitianMatrix x_inv_half = inv_sqrt_pd(xk);
  const HermitianMatrix y_half = sqrt_pd(yk);
  const HermitianMatrix y_inv_half = inv_sqrt_pd(yk);

  const EigenSystem rel = eig_h(HermitianMatrix::symmetrized(x_inv_half.matrix() * yk.matrix() * x_inv_half.matrix()));
  const double lo = rel.values(0);
  const double hi = rel.values(rel.values.size() - 1);
  if (hi > kConditionBound || lo < 1.0 / kConditionBound) return out;
  out.equiv_metrics = true;

  const HermitianMatrix root_s = sqrt_psd(ratio(compress(s.s(), qx), xk));
  const HermitianMatrix root_t = sqrt_psd(ratio(compress(t.s(), qx), yk));
  // Carry sqrt(T / Y) from the Y-metric into the X-metric frame.
  const Matrix carried = x_half.matrix() * y_inv_half.matrix() * root_t.matrix() * y_half.matrix() * x_inv_half.matrix();
  out.hs_dist = hs_norm(root_s.matrix() - carried);
  return out;
}

double condition3_distance(const CcrCovariance& s, const CcrCovariance& t) {
  require_same_space(s, t, "condition3_distance");
  const Matrix xs = sqrt_psd(s.s()).matrix() + sqrt_psd(s.s_conj()).matrix();
  const Matrix yt = sqrt_psd(t.s()).matrix() + sqrt_psd(t.s_conj()).matrix();
  const HermitianMatrix x = HermitianMatrix::symmetrized(xs * xs);
  const HermitianMatrix y = HermitianMatrix::symmetrized(yt * yt);
  const HermitianMatrix g = x + y;
  return hs_norm(sqrt_psd(ratio(x, g)).matrix() - sqrt_psd(ratio(y, g)).matrix());
}

CcrVerdict classify_ccr(const CcrCovariance& s, const CcrCovariance& t, double tol) {
  CcrVerdict v;
  v.transition = trans_prob_ccr_detail(s, t);
  v.t = v.transition.value;
  v.qe = qe_distance_ccr(s, t);
  v.condition3 = condition3_distance(s, t);
  if (v.t > tol) {
    v.kind = CcrVerdictKind::QuasiEquivalent;
    v.reason = CcrReason::PositiveTransitionProbability;
  } else {
    v.kind = CcrVerdictKind::Disjoint;
    v.reason = v.transition.kernel_mismatch && v.transition.witness_central ? CcrReason::CentralElementMismatch
                                                                            : CcrReason::SupportMismatch;
  }
  return v;
}

bool is_standard_ccr(const CcrCovariance& s, double tol) {
  const HermitianMatrix x = HermitianMatrix::symmetrized(2.0 * s.r().cast<cplx>());
  const Matrix q = support_basis(x);
  if (q.cols() == 0) return true;
  const HermitianMatrix r = ratio(compress(s.s(), q), compress(x, q));
  return eig_h(r).values(0) > tol;
}

}  // namespace qf
