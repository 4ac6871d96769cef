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

#include "qf/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qf/car_oracle.hpp"
#include "qf/ccr_oracle.hpp"

namespace qf::cli {

namespace {

constexpr double kCcrOracleTol = 1e-6;
constexpr double kCcrSweepTol = 1e-7;
constexpr Index kMaxOracleCompareDim = 8;

std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::DegenerateCovariance: return "DegenerateCovariance";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::ConsistencyViolation: return "ConsistencyViolation";
  }
  return "?";
}

std::string_view status_for(int exit_code) {
  switch (exit_code) {
    case kExitOk: return "ok";
    case kExitValidation: return "validation-error";
    case kExitInconclusive: return "inconclusive";
    case kExitResourceCap: return "resource-cap";
    default: return "error";
  }
}

[[noreturn]] void wrong_scenario(std::string_view command, std::string_view expected, ScenarioKind got) {
  std::ostringstream os;
  os << command << " expects " << expected << ", got " << to_string(got);
  throw Error(ErrorKind::Validation, os.str());
}

json numbers(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

double projection_defect(const Matrix& p) { return hs_norm(p * p - p); }

json eigen_range(const HermitianMatrix& h) {
  const EigenSystem es = eig_h(h);
  return json{{"min_eigenvalue", number(es.values(0))}, {"max_eigenvalue", number(es.values(es.values.size() - 1))}};
}

json cmd_validate(const Scenario& sc) {
  json r{{"valid", true}, {"kind", to_string(sc.kind)}};
  switch (sc.kind) {
    case ScenarioKind::CarPair: {
      r["dim"] = sc.car->dim();
      json s = eigen_range(sc.car->s().op());
      json t = eigen_range(sc.car->t().op());
      s["standard"] = is_standard_car(sc.car->s());
      t["standard"] = is_standard_car(sc.car->t());
      r["S"] = s;
      r["T"] = t;
      break;
    }
    case ScenarioKind::CcrPair: {
      r["dim"] = sc.ccr->s.dim();
      Eigen::FullPivLU<RealMatrix> lu(sc.ccr->s.space().sigma());
      lu.setThreshold(1e-10);
      r["sigma_rank"] = lu.rank();
      json s = eigen_range(sc.ccr->s.s());
      json t = eigen_range(sc.ccr->t.s());
      s["standard"] = is_standard_ccr(sc.ccr->s);
      t["standard"] = is_standard_ccr(sc.ccr->t);
      r["S"] = s;
      r["T"] = t;
      if (sc.covariance_cutoff > 0) r["covariance_cutoff"] = sc.covariance_cutoff;
      break;
    }
    case ScenarioKind::CarSequence:
    case ScenarioKind::CcrSequence: {
      const std::size_t checked = std::min<std::size_t>(sc.options.n_max, 64);
      for (std::size_t k = 1; k <= checked; ++k) (void)sc.family->mode(k);
      r["description"] = sc.family->description;
      r["modes_checked"] = checked;
      break;
    }
  }
  return r;
}

json cmd_trans_prob(const Scenario& sc) {
  if (sc.kind == ScenarioKind::CarPair) {
    const CarTransition t = trans_prob_car_detail(*sc.car);
    return json{{"transition_probability", number(t.value)},
                {"det_mm", number(t.det_mm)},
                {"qe_distance", number(qe_distance_car(*sc.car))},
                {"meet_rank", meet_criterion(*sc.car)}};
  }
  if (sc.kind == ScenarioKind::CcrPair) {
    const CcrTransition t = trans_prob_ccr_detail(sc.ccr->s, sc.ccr->t);
    const QeDistanceCcr qe = qe_distance_ccr(sc.ccr->s, sc.ccr->t);
    return json{{"transition_probability", number(t.value)},
                {"det_value", number(t.det_value)},
                {"support_rank", t.support_rank},
                {"kernel_mismatch", t.kernel_mismatch},
                {"equiv_metrics", qe.equiv_metrics},
                {"qe_distance", number(qe.hs_dist)}};
  }
  wrong_scenario("trans-prob", "a car-pair or ccr-pair scenario", sc.kind);
}

json sequence_report(const SequenceVerdict& v) {
  json r{{"verdict", to_string(v.kind)},
         {"reason", to_string(v.reason)},
         {"n_used", v.n_used},
         {"qe_status", to_string(v.qe_status)},
         {"tp_status", to_string(v.tp_status)},
         {"transition_product", number(v.transition_product)},
         {"first_zero_mode", v.first_zero_mode ? json(*v.first_zero_mode) : json(nullptr)},
         {"checkpoints", v.checkpoints},
         {"qe_partial_sums", numbers(v.qe_partial_sums)},
         {"neg_log_t_partial_sums", numbers(v.neg_log_t_partial_sums)}};
  return r;
}

json cmd_classify(const Scenario& sc, int& exit_code) {
  if (sc.kind == ScenarioKind::CcrPair) {
    const CcrVerdict v = classify_ccr(sc.ccr->s, sc.ccr->t);
    json r{{"verdict", to_string(v.kind)},
           {"reason", to_string(v.reason)},
           {"transition_probability", number(v.t)},
           {"equiv_metrics", v.qe.equiv_metrics},
           {"qe_distance", number(v.qe.hs_dist)},
           {"condition3_distance", number(v.condition3)},
           {"kernel_mismatch", v.transition.kernel_mismatch}};
    if (v.transition.witness.size() > 0) {
      r["witness"] = numbers(std::vector<double>(v.transition.witness.begin(), v.transition.witness.end()));
      r["witness_central"] = v.transition.witness_central;
    }
    return r;
  }
  if (sc.kind == ScenarioKind::CarSequence || sc.kind == ScenarioKind::CcrSequence) {
    const SequenceVerdict v = classify_sequence(*sc.family, sc.options.n_max);
    if (v.kind == SequenceKind::Inconclusive) exit_code = kExitInconclusive;
    json r = sequence_report(v);
    r["description"] = sc.family->description;
    return r;
  }
  wrong_scenario("classify", "a ccr-pair or sequence scenario", sc.kind);
}

json cmd_quadrature_check(const Scenario& sc) {
  if (sc.kind != ScenarioKind::CarPair) wrong_scenario("quadrature-check", "a car-pair scenario", sc.kind);
  const QuadratureIdentity q = quadrature_identity_check(*sc.car);
  const double diff = std::abs(q.lhs - q.rhs);
  return json{{"lhs", number(q.lhs)},
              {"rhs", number(q.rhs)},
              {"abs_diff", number(diff)},
              {"tol", sc.options.tol},
              {"within_tolerance", diff <= sc.options.tol},
              {"projection_defect_P", number(projection_defect(quadrature(sc.car->s()).matrix()))},
              {"projection_defect_Q", number(projection_defect(quadrature(sc.car->t()).matrix()))},
              {"meet_rank", meet_criterion(*sc.car)},
              {"transition_probability", number(trans_prob_car(*sc.car))}};
}

json comparison(double formula, double oracle, double fidelity, double threshold) {
  const double diff = std::abs(formula - oracle);
  return json{{"formula_value", number(formula)},
              {"oracle_value", number(oracle)},
              {"abs_diff", number(diff)},
              {"fidelity", number(fidelity)},
              {"chain_slack_lower", number(fidelity * fidelity - oracle * oracle)},
              {"chain_slack_upper", number(oracle - fidelity * fidelity)},
              {"threshold", threshold},
              {"within_tolerance", diff <= threshold}};
}

json cmd_oracle_compare(const Scenario& sc) {
  if (sc.kind == ScenarioKind::CarPair) {
    const Index d = sc.car->dim();
    if (d % 2 != 0) throw Error(ErrorKind::Validation, "oracle-compare: car pair dimension must be even", d);
    if (d > kMaxOracleCompareDim) {
      throw Error(ErrorKind::ResourceCap,
                  "oracle-compare: car pair dimension " + std::to_string(d) + " exceeds the oracle cap " +
                      std::to_string(kMaxOracleCompareDim),
                  static_cast<double>(d));
    }
    const DensityMatrix rho = density_from_covariance(sc.car->s());
    const DensityMatrix tau = density_from_covariance(sc.car->t());
    json r = comparison(trans_prob_car(*sc.car), overlap(rho, tau), fidelity_tr(rho, tau), sc.options.tol);
    r["fock_dim"] = rho.dim();
    return r;
  }
  if (sc.kind == ScenarioKind::CcrPair) {
    if (!sc.hamiltonians) {
      if (sc.echo.contains("thermal")) {
        throw Error(ErrorKind::ResourceCap, "oracle-compare: the bosonic oracle handles at most 2 modes");
      }
      throw Error(ErrorKind::Validation,
                  "oracle-compare: ccr pair must be given as \"thermal\" modes or \"hamiltonians\"");
    }
    const int start = std::min(20, sc.options.cutoff);
    const TruncatedState rho = gaussian_density(sc.hamiltonians->s, start);
    const TruncatedState tau = gaussian_density(sc.hamiltonians->t, start);
    const CcrOverlap ov = overlap_ccr(rho, tau, kCcrSweepTol, sc.options.cutoff);
    json r = comparison(trans_prob_ccr(sc.ccr->s, sc.ccr->t), ov.value, ov.fidelity,
                        std::max(sc.options.tol, kCcrOracleTol));
    r["oracle_cutoff"] = ov.cutoff;
    r["oracle_increment"] = number(ov.increment);
    return r;
  }
  wrong_scenario("oracle-compare", "a car-pair or ccr-pair scenario", sc.kind);
}

json counterexample_scenario(const Options& options) {
  return json{{"kind", "car-sequence"}, {"family", {{"rule", "car-counterexample"}}}, {"options", options.to_json()}};
}

json cmd_demo_counterexample(const Scenario& sc) {
  const ModeFamily family = *sc.family;
  const SequenceVerdict v = classify_sequence(family, sc.options.n_max);
  const CarStatePair first = std::get<CarStatePair>(family.mode(1));
  json r = sequence_report(v);
  r["description"] = family.description;
  r["mode1_transition_probability"] = number(trans_prob_car(first));
  r["mode1_qe_distance"] = number(qe_distance_car(first));
  r["mode1_meet_rank"] = meet_criterion(first);
  return r;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation:
    case ErrorKind::NotPsd:
    case ErrorKind::DegenerateCovariance:
    case ErrorKind::SupportViolation:
      return kExitValidation;
    case ErrorKind::NonConvergence:
      return kExitInconclusive;
    case ErrorKind::ResourceCap:
      return kExitResourceCap;
    case ErrorKind::ConsistencyViolation:
      return kExitFailure;
  }
  return kExitFailure;
}

json number(double x) {
  if (std::isnan(x)) return "inconclusive";
  if (std::isinf(x)) return x > 0 ? "infinity" : "-infinity";
  return x;
}

std::string inputs_digest(const json& doc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(doc.dump())));
  return buf;
}

Outcome run_command(std::string_view command, const json& scenario, const OptionOverrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  json& report = out.report;
  report["tool"] = "qf";
  report["version"] = kToolVersion;
  report["command"] = command;
  report["scenario"] = scenario;

  try {
    bool known = false;
    for (std::string_view c : kCommands) known = known || c == command;
    if (!known) throw Error(ErrorKind::Validation, "unknown command \"" + std::string(command) + "\"");

    Scenario sc;
    if (command == "demo-counterexample") {
      json doc = counterexample_scenario(Options{});
      if (scenario.is_object() && scenario.contains("options")) {
        doc["options"] = scenario["options"];
      } else {
        doc.erase("options");
      }
      sc = parse_scenario(doc, overrides);
    } else {
      if (scenario.is_null()) throw Error(ErrorKind::Validation, std::string(command) + " needs a scenario file");
      sc = parse_scenario(scenario, overrides);
    }
    report["scenario"] = sc.echo;
    report["inputs_digest"] = inputs_digest(sc.echo);
    report["options"] = sc.options.to_json();

    if (command == "validate") {
      report["results"] = cmd_validate(sc);
    } else if (command == "trans-prob") {
      report["results"] = cmd_trans_prob(sc);
    } else if (command == "classify") {
      report["results"] = cmd_classify(sc, out.exit_code);
    } else if (command == "quadrature-check") {
      report["results"] = cmd_quadrature_check(sc);
    } else if (command == "oracle-compare") {
      report["results"] = cmd_oracle_compare(sc);
    } else {
      report["results"] = cmd_demo_counterexample(sc);
    }
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.kind());
    report["error"] = json{{"kind", kind_name(e.kind())}, {"message", e.what()}, {"magnitude", number(e.magnitude())}};
  } catch (const std::exception& e) {
    out.exit_code = kExitFailure;
    report["error"] = json{{"kind", "Internal"}, {"message", e.what()}};
  }
  if (!report.contains("inputs_digest")) report["inputs_digest"] = inputs_digest(report["scenario"]);
  report["status"] = status_for(out.exit_code);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["timing"] = json{{"elapsed_ms", ms}};
  return out;
}

Outcome run_command_file(std::string_view command, const std::string& path, const OptionOverrides& overrides) {
  if (path.empty()) return run_command(command, json(nullptr), overrides);
  std::ifstream in(path);
  json doc;
  std::string problem;
  if (!in) {
    problem = "cannot open scenario file " + path;
  } else {
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      problem = "scenario file " + path + " is not valid JSON: " + e.what();
    }
  }
  if (problem.empty()) return run_command(command, doc, overrides);

  Outcome out;
  out.exit_code = kExitValidation;
  out.report = json{{"tool", "qf"},
                    {"version", kToolVersion},
                    {"command", command},
                    {"scenario", nullptr},
                    {"inputs_digest", inputs_digest(json(nullptr))},
                    {"error", {{"kind", "Validation"}, {"message", problem}}},
                    {"status", status_for(kExitValidation)},
                    {"timing", {{"elapsed_ms", 0.0}}}};
  return out;
}

}  // namespace qf::cli
