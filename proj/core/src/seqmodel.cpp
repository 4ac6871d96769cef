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

#include "qf/seqmodel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qf/error.hpp"
#include "qf/parallel.hpp"

namespace qf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroTransition = 1e-14;

FamilyKind kind_of(const ModePair& p) {
  return std::holds_alternative<CarStatePair>(p) ? FamilyKind::CAR : FamilyKind::CCR;
}

void require_kind(const ModePair& p, FamilyKind kind) {
  if (kind_of(p) != kind) throw Error(ErrorKind::Validation, "mode pair kind does not match its family");
}

// Per-mode terms for k = 1..n, computed independently, stored in index order.
std::vector<ModeTerms> all_terms(const ModeFamily& family, std::size_t n) {
  std::vector<ModeTerms> terms(n);
  parallel_for(n, [&](std::size_t i) {
    const ModePair pair = family.mode(i + 1);
    require_kind(pair, family.kind);
    terms[i] = mode_terms(pair);
  });
  return terms;
}

std::vector<double> running_sum(const std::vector<ModeTerms>& terms, double ModeTerms::*field) {
  std::vector<double> out(terms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += terms[i].*field;
    out[i] = acc;
  }
  return out;
}

}  // namespace

ModeRule power_rule(double base, double amplitude, double exponent) {
  return [=](std::size_t k) { return base + amplitude * std::pow(static_cast<double>(k), -exponent); };
}

ModeFamily car_mu_sequence(ModeRule mu, ModeRule nu, std::string description) {
  ModeFamily f;
  f.kind = FamilyKind::CAR;
  f.description = std::move(description);
  f.generator = [mu = std::move(mu), nu = std::move(nu)](std::size_t k) -> ModePair {
    return CarStatePair(car_mode_covariance(mu(k)), car_mode_covariance(nu(k)));
  };
  return f;
}

ModeFamily car_fock_drift(double exponent, double amplitude) {
  std::ostringstream os;
  os << "car-fock-drift(exponent=" << exponent << ", amplitude=" << amplitude << ")";
  return car_mu_sequence(power_rule(0.5, 0.0, 0.0), power_rule(0.5, -amplitude, exponent), os.str());
}

ModeFamily ccr_thermal_sequence(ModeRule c, ModeRule c_prime, std::string description) {
  ModeFamily f;
  f.kind = FamilyKind::CCR;
  f.description = std::move(description);
  f.generator = [c = std::move(c), c_prime = std::move(c_prime)](std::size_t k) -> ModePair {
    return CcrPair{ccr_thermal_mode(c(k)), ccr_thermal_mode(c_prime(k))};
  };
  return f;
}

ModeFamily ccr_thermal_drift(double exponent, double amplitude) {
  std::ostringstream os;
  os << "ccr-thermal-drift(exponent=" << exponent << ", amplitude=" << amplitude << ")";
  return ccr_thermal_sequence(power_rule(1.0, amplitude, exponent), power_rule(1.0, 0.0, 0.0), os.str());
}

ModeFamily literal_family(FamilyKind kind, std::vector<ModePair> head, ModePair tail) {
  for (const ModePair& p : head) require_kind(p, kind);
  require_kind(tail, kind);
  ModeFamily f;
  f.kind = kind;
  f.description = "literal(" + std::to_string(head.size()) + " modes + constant tail)";
  f.generator = [head = std::move(head), tail = std::move(tail)](std::size_t k) -> ModePair {
    return k >= 1 && k <= head.size() ? head[k - 1] : tail;
  };
  return f;
}

ModeFamily car_counterexample() {
  ModeFamily f = car_mu_sequence([](std::size_t k) { return k == 1 ? 0.5 : 0.25; },
                                 [](std::size_t k) { return k == 1 ? -0.5 : 0.25; });
  f.description = "car-counterexample(mode 1 Fock vs co-Fock, rest identical)";
  return f;
}

ModeFamily direct_sum(const ModeFamily& a, const ModeFamily& b) {
  if (a.kind != b.kind) throw Error(ErrorKind::Validation, "direct_sum: families of different kinds");
  ModeFamily f;
  f.kind = a.kind;
  f.description = "(" + a.description + ") (+) (" + b.description + ")";
  f.generator = [a, b](std::size_t k) -> ModePair {
    const ModePair pa = a.mode(k);
    const ModePair pb = b.mode(k);
    if (const auto* ca = std::get_if<CarStatePair>(&pa)) {
      const auto& cb = std::get<CarStatePair>(pb);
      return CarStatePair(direct_sum(ca->s(), cb.s()), direct_sum(ca->t(), cb.t()));
    }
    const auto& ca = std::get<CcrPair>(pa);
    const auto& cb = std::get<CcrPair>(pb);
    return CcrPair{direct_sum(ca.s, cb.s), direct_sum(ca.t, cb.t)};
  };
  return f;
}

ModeTerms mode_terms(const ModePair& pair) {
  ModeTerms out;
  if (const auto* car = std::get_if<CarStatePair>(&pair)) {
    const double d = qe_distance_car(*car);
    out.qe_sq = d * d;
    out.t = trans_prob_car(*car);
  } else {
    const auto& ccr = std::get<CcrPair>(pair);
    const QeDistanceCcr qe = qe_distance_ccr(ccr.s, ccr.t);
    out.qe_sq = qe.equiv_metrics ? qe.hs_dist * qe.hs_dist : kInf;
    out.t = trans_prob_ccr(ccr.s, ccr.t);
  }
  out.neg_log_t = out.t <= kZeroTransition ? kInf : -std::log(out.t);
  return out;
}

double partial_qe_sum(const ModeFamily& family, std::size_t n) {
  const auto terms = all_terms(family, n);
  return n == 0 ? 0.0 : running_sum(terms, &ModeTerms::qe_sq).back();
}

double partial_log_tp(const ModeFamily& family, std::size_t n) {
  const auto terms = all_terms(family, n);
  return n == 0 ? 0.0 : running_sum(terms, &ModeTerms::neg_log_t).back();
}

std::string_view to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::QuasiEquivalent: return "QuasiEquivalent";
    case SequenceKind::Disjoint: return "Disjoint";
    case SequenceKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::Convergent: return "convergent";
    case SeriesStatus::Divergent: return "divergent";
    case SeriesStatus::Undecided: return "undecided";
  }
  return "?";
}

std::string_view to_string(SequenceReason r) {
  switch (r) {
    case SequenceReason::HSSumConvergent: return "HSSumConvergent";
    case SequenceReason::HSSumDivergent: return "HSSumDivergent";
    case SequenceReason::TransitionProductPositive: return "TransitionProductPositive";
    case SequenceReason::TransitionProductVanishes: return "TransitionProductVanishes";
    case SequenceReason::Undecided: return "Undecided";
  }
  return "?";
}

SeriesStatus series_status(std::span<const double> partial_sums, double eps) {
  const std::size_t n = partial_sums.size();
  if (n < 4) return SeriesStatus::Undecided;
  const double s_n = partial_sums[n - 1];
  if (std::isinf(s_n)) return SeriesStatus::Divergent;
  const double s_half = partial_sums[n / 2 - 1];
  const double s_quarter = partial_sums[n / 4 - 1];
  const double d1 = s_n - s_half;
  const double d2 = s_half - s_quarter;
  if (d1 < eps) return SeriesStatus::Convergent;
  if (d1 >= 0.9 * d2) return SeriesStatus::Divergent;
  return SeriesStatus::Undecided;
}

SequenceVerdict classify_sequence(const ModeFamily& family, std::size_t n_max, double eps) {
  if (n_max < 64) {
    throw Error(ErrorKind::Validation, "classify_sequence: n_max must be at least 64", static_cast<double>(n_max));
  }
  const auto terms = all_terms(family, n_max);
  const std::vector<double> qe = running_sum(terms, &ModeTerms::qe_sq);
  const std::vector<double> tp = running_sum(terms, &ModeTerms::neg_log_t);

  SequenceVerdict v;
  v.n_used = n_max;
  for (std::size_t c = 1;; c *= 2) {
    const std::size_t at = std::min(c, n_max);
    v.checkpoints.push_back(at);
    v.qe_partial_sums.push_back(qe[at - 1]);
    v.neg_log_t_partial_sums.push_back(tp[at - 1]);
    if (at == n_max) break;
  }
  for (std::size_t i = 0; i < n_max; ++i) {
    if (std::isinf(terms[i].neg_log_t)) {
      v.first_zero_mode = i + 1;
      break;
    }
  }
  v.transition_product = v.first_zero_mode ? 0.0 : std::exp(-tp.back());
  v.qe_status = series_status(qe, eps);
  v.tp_status = series_status(tp, eps);

  const auto from_qe = [&v] {
    switch (v.qe_status) {
      case SeriesStatus::Convergent:
        v.kind = SequenceKind::QuasiEquivalent;
        v.reason = SequenceReason::HSSumConvergent;
        break;
      case SeriesStatus::Divergent:
        v.kind = SequenceKind::Disjoint;
        v.reason = SequenceReason::HSSumDivergent;
        break;
      case SeriesStatus::Undecided:
        v.kind = SequenceKind::Inconclusive;
        v.reason = SequenceReason::Undecided;
        break;
    }
  };

  std::ostringstream os;
  if (family.kind == FamilyKind::CAR) {
    if (v.tp_status == SeriesStatus::Convergent && v.qe_status == SeriesStatus::Divergent) {
      os << "classify_sequence(" << family.description
         << "): positive transition product but divergent Hilbert-Schmidt series";
      throw Error(ErrorKind::ConsistencyViolation, os.str());
    }
    from_qe();
    return v;
  }

  const bool qe_known = v.qe_status != SeriesStatus::Undecided;
  const bool tp_known = v.tp_status != SeriesStatus::Undecided;
  if (qe_known && tp_known && v.qe_status != v.tp_status) {
    os << "classify_sequence(" << family.description << "): Hilbert-Schmidt series is " << to_string(v.qe_status)
       << " but transition series is " << to_string(v.tp_status);
    throw Error(ErrorKind::ConsistencyViolation, os.str());
  }
  if (qe_known) {
    from_qe();
  } else if (tp_known) {
    const bool positive = v.tp_status == SeriesStatus::Convergent;
    v.kind = positive ? SequenceKind::QuasiEquivalent : SequenceKind::Disjoint;
    v.reason = positive ? SequenceReason::TransitionProductPositive : SequenceReason::TransitionProductVanishes;
  }
  return v;
}

}  // namespace qf
