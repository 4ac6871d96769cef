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

// Bosonic (CCR) covariance forms over a possibly degenerate presymplectic
// space (V, sigma). A covariance form is stored as its real part R; the
// complex form is S = R + i sigma / 2, so S - conj(S) = i sigma holds exactly.

#include <string_view>

#include "qf/matcore.hpp"

namespace qf {

class SymplecticSpace {
 public:
  SymplecticSpace() = default;
  /// Throws ErrorKind::Validation unless sigma is square and antisymmetric
  /// within tolerance; stores (sigma - sigma^T) / 2.
  explicit SymplecticSpace(const RealMatrix& sigma);

  /// n modes with the canonical form [[0, I], [-I, 0]] in (q_1..q_n, p_1..p_n).
  static SymplecticSpace canonical(Index n_modes);

  const RealMatrix& sigma() const noexcept { return sigma_; }
  Index dim() const noexcept { return sigma_.rows(); }
  bool same_as(const SymplecticSpace& o) const;

 private:
  RealMatrix sigma_;
};

class CcrCovariance {
 public:
  const SymplecticSpace& space() const noexcept { return space_; }
  const RealMatrix& r() const noexcept { return r_; }
  Index dim() const noexcept { return r_.rows(); }

  /// S = R + i sigma / 2.
  HermitianMatrix s() const;
  /// conj(S) = R - i sigma / 2.
  HermitianMatrix s_conj() const;

  friend CcrCovariance validate_ccr(const SymplecticSpace& space, const RealMatrix& r, double tol);

 private:
  CcrCovariance(SymplecticSpace space, RealMatrix r) : space_(std::move(space)), r_(std::move(r)) {}
  SymplecticSpace space_;
  RealMatrix r_;
};

/// "not a covariance form" (ErrorKind::NotPsd) carries the minimal eigenvalue
/// of R + i sigma / 2 when it is below -tol * max(1, ||S||).
CcrCovariance validate_ccr(const SymplecticSpace& space, const RealMatrix& r, double tol = 1e-10);

/// Single-mode thermal form R = (c/2) I with c = 2 nbar + 1 >= 1; c = 1 is the vacuum.
CcrCovariance ccr_thermal_mode(double c);

/// (V (+) V', sigma (+) sigma') with R (+) R'.
CcrCovariance direct_sum(const CcrCovariance& a, const CcrCovariance& b);

/// phi_S(e^{ix}) = exp(-x^T R x / 2).
double char_value(const CcrCovariance& s, const RealVector& x);

/// A = (S + conj S) / 2 + S # conj(S).
HermitianMatrix ab_form(const CcrCovariance& s);

enum class CcrVerdictKind { QuasiEquivalent, Disjoint };

enum class CcrReason {
  PositiveTransitionProbability,
  CentralElementMismatch,
  SupportMismatch,
  HSDivergence,
};

std::string_view to_string(CcrVerdictKind k);
std::string_view to_string(CcrReason r);

struct CcrTransition {
  double value = 0.0;          ///< (phi_S^{1/2} | phi_T^{1/2}) in [0, 1]
  double det_value = 0.0;      ///< det(2 sqrt(AB) / (A + B)) on supp(A + B), = value^2
  Index support_rank = 0;      ///< rank of A + B
  double min_ratio_a = 0.0;    ///< smallest eigenvalue of A / (A + B) on the support
  double min_ratio_b = 0.0;
  bool kernel_mismatch = false;  ///< A / (A+B) or B / (A+B) has a kernel on supp(A+B)
  bool witness_central = false;  ///< kernel witness h is real with sigma h = 0
  RealVector witness;            ///< real kernel witness (empty when no mismatch)
};

/// det(2 sqrt(AB) / (A+B))^{1/2}, evaluated on the support of A + B. Returns 0
/// when a kernel vector of one ratio operator is seen by the other form.
CcrTransition trans_prob_ccr_detail(const CcrCovariance& s, const CcrCovariance& t);
double trans_prob_ccr(const CcrCovariance& s, const CcrCovariance& t);

struct QeDistanceCcr {
  bool equiv_metrics = false;  ///< S + conj S and T + conj T mutually dominate
  double hs_dist = 0.0;        ///< +infinity when !equiv_metrics
};

/// Hilbert-Schmidt distance of the square-rooted ratio operators
/// sqrt(S / (S + conj S)) - sqrt(T / (T + conj T)), measured in the metric of
/// S + conj S on the common support.
QeDistanceCcr qe_distance_ccr(const CcrCovariance& s, const CcrCovariance& t);

/// ||sqrt(X / (X+Y)) - sqrt(Y / (X+Y))||_HS with X = (sqrt S + sqrt conj S)^2
/// and Y likewise for T.
double condition3_distance(const CcrCovariance& s, const CcrCovariance& t);

struct CcrVerdict {
  CcrVerdictKind kind = CcrVerdictKind::QuasiEquivalent;
  CcrReason reason = CcrReason::PositiveTransitionProbability;
  double t = 0.0;
  CcrTransition transition;
  QeDistanceCcr qe;
  double condition3 = 0.0;
};

/// QuasiEquivalent iff trans_prob_ccr > tol.
CcrVerdict classify_ccr(const CcrCovariance& s, const CcrCovariance& t, double tol = 1e-12);

/// Trivial kernel of S / (S + conj S) on supp(S + conj S).
bool is_standard_ccr(const CcrCovariance& s, double tol = 1e-10);

}  // namespace qf
