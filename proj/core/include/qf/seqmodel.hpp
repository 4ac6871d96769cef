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

// Countable product models: a family assigns each mode k >= 1 a small pair of
// covariances, and the product states are compared through per-mode
// Hilbert-Schmidt terms and per-mode transition probabilities.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qf/car.hpp"
#include "qf/ccr.hpp"

namespace qf {

enum class FamilyKind { CAR, CCR };

struct CcrPair {
  CcrCovariance s;
  CcrCovariance t;
};

using ModePair = std::variant<CarStatePair, CcrPair>;

struct ModeFamily {
  FamilyKind kind = FamilyKind::CAR;
  std::string description;
  /// Pair for mode k (k >= 1).
  std::function<ModePair(std::size_t)> generator;

  ModePair mode(std::size_t k) const { return generator(k); }
};

/// Per-mode rule k -> parameter.
using ModeRule = std::function<double(std::size_t)>;

/// k -> base + amplitude * k^{-exponent}.
ModeRule power_rule(double base, double amplitude, double exponent);

/// Mode k compares car_mode_covariance(mu(k)) with car_mode_covariance(nu(k)).
ModeFamily car_mu_sequence(ModeRule mu, ModeRule nu, std::string description = "car-mu");

/// Fock mode (mu = 1/2) against nu_k = 1/2 - amplitude * k^{-exponent}.
ModeFamily car_fock_drift(double exponent, double amplitude = 0.5);

/// Mode k compares thermal forms with c(k) and c_prime(k) (c >= 1).
ModeFamily ccr_thermal_sequence(ModeRule c, ModeRule c_prime, std::string description = "ccr-thermal");

/// Thermal c_k = 1 + amplitude * k^{-exponent} against the vacuum c = 1.
ModeFamily ccr_thermal_drift(double exponent, double amplitude = 1.0);

/// Explicit leading modes followed by a constant tail pair. All pairs must be
/// of the family's kind.
ModeFamily literal_family(FamilyKind kind, std::vector<ModePair> head, ModePair tail);

/// Mode 1 is Fock against co-Fock, every other mode is identical (mu = nu = 1/4).
/// Quasi-equivalent (finite perturbation) with vanishing transition probability.
ModeFamily car_counterexample();

/// Mode k is the direct sum of the k-th modes of a and b (same kind).
ModeFamily direct_sum(const ModeFamily& a, const ModeFamily& b);

struct ModeTerms {
  double qe_sq = 0.0;      ///< squared per-mode Hilbert-Schmidt distance (inf if metrics differ)
  double neg_log_t = 0.0;  ///< -log t_k, inf when t_k <= 1e-14
  double t = 1.0;
};

ModeTerms mode_terms(const ModePair& pair);

/// Sum over k <= n of per-mode squared Hilbert-Schmidt distances.
double partial_qe_sum(const ModeFamily& family, std::size_t n);

/// Sum over k <= n of -log t_k; +infinity if some t_k <= 1e-14.
double partial_log_tp(const ModeFamily& family, std::size_t n);

enum class SequenceKind { QuasiEquivalent, Disjoint, Inconclusive };

enum class SeriesStatus { Convergent, Divergent, Undecided };

enum class SequenceReason {
  HSSumConvergent,
  HSSumDivergent,
  TransitionProductPositive,
  TransitionProductVanishes,
  Undecided,
};

std::string_view to_string(SequenceKind k);
std::string_view to_string(SeriesStatus s);
std::string_view to_string(SequenceReason r);

struct SequenceVerdict {
  SequenceKind kind = SequenceKind::Inconclusive;
  SequenceReason reason = SequenceReason::Undecided;
  std::vector<std::size_t> checkpoints;  ///< 1, 2, 4, ..., n_used
  std::vector<double> qe_partial_sums;   ///< partial sums at the checkpoints
  std::vector<double> neg_log_t_partial_sums;
  std::size_t n_used = 0;
  SeriesStatus qe_status = SeriesStatus::Undecided;
  SeriesStatus tp_status = SeriesStatus::Undecided;
  double transition_product = 1.0;  ///< prod_{k <= n_used} t_k
  std::optional<std::size_t> first_zero_mode;  ///< first k with t_k = 0
};

/// Doubling heuristic on running sums partial_sums[k-1] = S(k): with increments
/// d1 = S(n) - S(n/2) and d2 = S(n/2) - S(n/4), the series is Convergent when
/// d1 < eps, Divergent when d1 >= eps and d1 >= 0.9 d2 (the increments do not
/// decay under doubling), Undecided otherwise. Any infinite term is Divergent.
SeriesStatus series_status(std::span<const double> partial_sums, double eps);

/// CAR: the verdict follows the Hilbert-Schmidt series alone; a convergent
/// transition series together with a divergent HS series is a consistency
/// violation. CCR: both series must agree whenever both are decided.
/// Throws ErrorKind::Validation for n_max < 64 and
/// ErrorKind::ConsistencyViolation when the two routes disagree.
SequenceVerdict classify_sequence(const ModeFamily& family, std::size_t n_max = 4096, double eps = 1e-3);

}  // namespace qf
