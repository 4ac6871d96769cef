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

#include "qf/cli/scenario.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "qf/error.hpp"

namespace qf::cli {

namespace {

constexpr std::size_t kMaxModesRequest = std::size_t{1} << 20;
constexpr double kConvergedIncrement = 1e-6;
constexpr int kCutoffSchedule[] = {20, 40, 80, 120};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Validation, "scenario" + where + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

double real_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::vector<double> real_list(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(real_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

cplx complex_entry(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(where, "expected a number or an [re, im] pair");
}

Options parse_options(const json& doc, const OptionOverrides& overrides) {
  Options o;
  if (doc.contains("family") && doc["family"].is_object() && doc["family"].contains("modes")) {
    const json& m = doc["family"]["modes"];
    if (!m.is_number_integer() || m.get<long long>() < 1) fail(".family.modes", "expected a positive integer");
    o.n_max = m.get<std::size_t>();
  }
  if (doc.contains("options")) {
    const json& opt = doc["options"];
    if (!opt.is_object()) fail(".options", "expected an object");
    for (const auto& [key, value] : opt.items()) {
      const std::string where = ".options." + key;
      if (key == "tol") {
        o.tol = real_number(value, where);
      } else if (key == "cutoff") {
        if (!value.is_number_integer()) fail(where, "expected an integer");
        o.cutoff = value.get<int>();
      } else if (key == "n_max") {
        if (!value.is_number_integer() || value.get<long long>() < 1) fail(where, "expected a positive integer");
        o.n_max = value.get<std::size_t>();
      } else if (key == "seed") {
        if (!value.is_number_integer() || value.get<long long>() < 0) fail(where, "expected a non-negative integer");
        o.seed = value.get<std::uint64_t>();
      } else {
        fail(where, "unknown option");
      }
    }
  }
  if (overrides.tol) o.tol = *overrides.tol;
  if (overrides.cutoff) o.cutoff = *overrides.cutoff;
  if (overrides.n_max) o.n_max = *overrides.n_max;
  if (overrides.seed) o.seed = *overrides.seed;

  if (!(o.tol > 0.0) || !std::isfinite(o.tol)) fail(".options.tol", "must be a positive finite number");
  if (o.cutoff < 2) fail(".options.cutoff", "must be at least 2");
  if (o.cutoff > kMaxCutoff) {
    throw Error(ErrorKind::ResourceCap,
                "scenario.options.cutoff: " + std::to_string(o.cutoff) + " exceeds the oracle cap " +
                    std::to_string(kMaxCutoff),
                o.cutoff);
  }
  if (o.n_max > kMaxModesRequest) {
    throw Error(ErrorKind::ResourceCap,
                "scenario.options.n_max: " + std::to_string(o.n_max) + " exceeds the cap " +
                    std::to_string(kMaxModesRequest),
                static_cast<double>(o.n_max));
  }
  return o;
}

CarCovariance car_modes(const std::vector<double>& mus) {
  CarCovariance s = car_mode_covariance(mus.front());
  for (std::size_t i = 1; i < mus.size(); ++i) s = direct_sum(s, car_mode_covariance(mus[i]));
  return s;
}

CcrCovariance thermal_modes(const std::vector<double>& cs) {
  CcrCovariance s = ccr_thermal_mode(cs.front());
  for (std::size_t i = 1; i < cs.size(); ++i) s = direct_sum(s, ccr_thermal_mode(cs[i]));
  return s;
}

CarCovariance random_car(std::mt19937_64& rng, Index d, double pure_prob) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealMatrix k = RealMatrix::Zero(d, d);
  for (Index j = 0; j + 1 < d; j += 2) {
    const double lambda = unit(rng) < pure_prob ? 0.5 : 0.5 * unit(rng);
    k(j, j + 1) = lambda;
    k(j + 1, j) = -lambda;
  }
  RealMatrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = gauss(rng);
  const RealMatrix o = Eigen::HouseholderQR<RealMatrix>(g).householderQ();
  const RealMatrix rot = o * k * o.transpose();
  return validate_car(Matrix::Identity(d, d) * 0.5 + cplx(0.0, 1.0) * rot.cast<cplx>());
}

CarStatePair car_pair_payload(const json& doc, const std::string& where, const Options& options) {
  if (doc.contains("S") || doc.contains("T")) {
    return CarStatePair(validate_car(parse_complex_matrix(member(doc, "S", where), where + ".S")),
                        validate_car(parse_complex_matrix(member(doc, "T", where), where + ".T")));
  }
  if (doc.contains("mu") || doc.contains("nu")) {
    const std::vector<double> mu = real_list(member(doc, "mu", where), where + ".mu");
    const std::vector<double> nu = real_list(member(doc, "nu", where), where + ".nu");
    if (mu.size() != nu.size()) fail(where, "\"mu\" and \"nu\" must have the same length");
    return CarStatePair(car_modes(mu), car_modes(nu));
  }
  if (doc.contains("random")) {
    const json& r = doc["random"];
    const json& dim = member(r, "dim", where + ".random");
    if (!dim.is_number_integer() || dim.get<long long>() < 2 || dim.get<long long>() % 2 != 0 ||
        dim.get<long long>() > 64) {
      fail(where + ".random.dim", "expected an even integer in [2, 64]");
    }
    const double pure = r.contains("pure_prob") ? real_number(r["pure_prob"], where + ".random.pure_prob") : 0.0;
    std::mt19937_64 rng(options.seed);
    const Index d = dim.get<Index>();
    CarCovariance s = random_car(rng, d, pure);
    CarCovariance t = random_car(rng, d, pure);
    return CarStatePair(std::move(s), std::move(t));
  }
  fail(where, "car pair needs \"S\"/\"T\" matrices, \"mu\"/\"nu\" mode lists, or \"random\"");
}

QuadraticHamiltonian hamiltonian_payload(const json& h, const std::string& where) {
  if (h.contains("omega")) {
    QuadraticHamiltonian out;
    out.omega = parse_complex_matrix(h["omega"], where + ".omega");
    out.n_modes = static_cast<int>(out.omega.rows());
    out.xi = h.contains("xi") ? parse_complex_matrix(h["xi"], where + ".xi")
                              : Matrix::Zero(out.omega.rows(), out.omega.cols());
    return out;
  }
  if (h.contains("modes")) {
    const json& modes = h["modes"];
    if (!modes.is_array() || modes.empty()) fail(where + ".modes", "expected a non-empty list");
    std::optional<QuadraticHamiltonian> out;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string w = where + ".modes[" + std::to_string(i) + "]";
      const double beta = real_number(member(modes[i], "beta", w), w + ".beta");
      const double r = modes[i].contains("squeeze") ? real_number(modes[i]["squeeze"], w + ".squeeze") : 0.0;
      if (!(beta > 0.0)) fail(w + ".beta", "must be positive");
      const QuadraticHamiltonian m =
          r == 0.0 ? QuadraticHamiltonian::thermal(beta) : QuadraticHamiltonian::squeezed_thermal(beta, r);
      out = out ? QuadraticHamiltonian::product(*out, m) : m;
    }
    return *out;
  }
  fail(where, "Hamiltonian needs \"omega\" (and optional \"xi\") or \"modes\"");
}

/// Gibbs state at the first cutoff of the schedule whose refinement increment
/// is below kConvergedIncrement.
TruncatedState converged_state(const QuadraticHamiltonian& h, int max_cutoff) {
  double last = 0.0;
  for (int c : kCutoffSchedule) {
    if (c > max_cutoff) break;
    Index dim = 1;
    for (int m = 0; m < h.n_modes; ++m) dim *= c + 1;
    if (dim > kMaxBosonDim) break;
    TruncatedState st = gaussian_density(h, c);
    if (st.increment <= kConvergedIncrement) return st;
    last = st.increment;
  }
  throw Error(ErrorKind::NonConvergence,
              "Gibbs state not converged within cutoff " + std::to_string(max_cutoff) + " (last increment " +
                  std::to_string(last) + ")",
              last);
}

double thermal_beta(double c, const std::string& where) {
  if (!(c >= 1.0)) fail(where, "thermal parameter c must be >= 1");
  return c == 1.0 ? kVacuumBeta : std::log((c + 1.0) / (c - 1.0));
}

void ccr_pair_payload(const json& doc, const std::string& where, Scenario& sc) {
  if (doc.contains("R_S") || doc.contains("R_T")) {
    const SymplecticSpace space(parse_real_matrix(member(doc, "sigma", where), where + ".sigma"));
    sc.ccr = CcrPair{validate_ccr(space, parse_real_matrix(member(doc, "R_S", where), where + ".R_S")),
                     validate_ccr(space, parse_real_matrix(member(doc, "R_T", where), where + ".R_T"))};
    return;
  }
  if (doc.contains("thermal")) {
    const json& th = doc["thermal"];
    const std::vector<double> c = real_list(member(th, "c", where + ".thermal"), where + ".thermal.c");
    const std::vector<double> cp = real_list(member(th, "c_prime", where + ".thermal"), where + ".thermal.c_prime");
    if (c.size() != cp.size()) fail(where + ".thermal", "\"c\" and \"c_prime\" must have the same length");
    sc.ccr = CcrPair{thermal_modes(c), thermal_modes(cp)};
    if (c.size() <= static_cast<std::size_t>(kMaxBosonModes)) {
      HamiltonianPair hp;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const auto hs = QuadraticHamiltonian::thermal(thermal_beta(c[i], where + ".thermal.c"));
        const auto ht = QuadraticHamiltonian::thermal(thermal_beta(cp[i], where + ".thermal.c_prime"));
        hp.s = i == 0 ? hs : QuadraticHamiltonian::product(hp.s, hs);
        hp.t = i == 0 ? ht : QuadraticHamiltonian::product(hp.t, ht);
      }
      sc.hamiltonians = hp;
    }
    return;
  }
  if (doc.contains("hamiltonians")) {
    const json& hs = doc["hamiltonians"];
    HamiltonianPair hp{hamiltonian_payload(member(hs, "S", where + ".hamiltonians"), where + ".hamiltonians.S"),
                       hamiltonian_payload(member(hs, "T", where + ".hamiltonians"), where + ".hamiltonians.T")};
    if (hp.s.n_modes != hp.t.n_modes) fail(where + ".hamiltonians", "S and T must have the same number of modes");
    const TruncatedState s = converged_state(hp.s, sc.options.cutoff);
    const TruncatedState t = converged_state(hp.t, sc.options.cutoff);
    sc.covariance_cutoff = std::max(s.cutoff, t.cutoff);
    sc.ccr = CcrPair{covariance_of_density(s), covariance_of_density(t)};
    sc.hamiltonians = std::move(hp);
    return;
  }
  fail(where, "ccr pair needs \"sigma\"/\"R_S\"/\"R_T\", \"thermal\", or \"hamiltonians\"");
}

std::vector<double> params_of(const json& family, std::size_t min_count, std::size_t max_count,
                              const std::vector<double>& defaults) {
  std::vector<double> p;
  if (family.contains("params")) {
    const json& j = family["params"];
    if (!j.is_array()) fail(".family.params", "expected a list of numbers");
    for (std::size_t i = 0; i < j.size(); ++i) p.push_back(real_number(j[i], ".family.params[" + std::to_string(i) + "]"));
  }
  if (p.size() < min_count || p.size() > max_count) {
    fail(".family.params", "expected " + std::to_string(min_count) + " to " + std::to_string(max_count) + " values");
  }
  for (std::size_t i = p.size(); i < defaults.size(); ++i) p.push_back(defaults[i]);
  return p;
}

ModePair literal_entry(FamilyKind kind, const json& j, const std::string& where) {
  if (kind == FamilyKind::CAR) {
    if (j.contains("mu")) {
      return CarStatePair(car_mode_covariance(real_number(j["mu"], where + ".mu")),
                          car_mode_covariance(real_number(member(j, "nu", where), where + ".nu")));
    }
    return CarStatePair(validate_car(parse_complex_matrix(member(j, "S", where), where + ".S")),
                        validate_car(parse_complex_matrix(member(j, "T", where), where + ".T")));
  }
  if (j.contains("c")) {
    return CcrPair{ccr_thermal_mode(real_number(j["c"], where + ".c")),
                   ccr_thermal_mode(real_number(member(j, "c_prime", where), where + ".c_prime"))};
  }
  const SymplecticSpace space(parse_real_matrix(member(j, "sigma", where), where + ".sigma"));
  return CcrPair{validate_ccr(space, parse_real_matrix(member(j, "R_S", where), where + ".R_S")),
                 validate_ccr(space, parse_real_matrix(member(j, "R_T", where), where + ".R_T"))};
}

ModeFamily family_payload(FamilyKind kind, const json& family) {
  if (!family.is_object()) fail(".family", "expected an object");
  const json& rule_j = member(family, "rule", ".family");
  if (!rule_j.is_string()) fail(".family.rule", "expected a string");
  const std::string rule = rule_j.get<std::string>();
  const bool car = kind == FamilyKind::CAR;
  const auto wrong_kind = [&] { fail(".family.rule", "rule \"" + rule + "\" does not match the scenario kind"); };

  if (rule == "literal") {
    const json& head = member(family, "head", ".family");
    if (!head.is_array()) fail(".family.head", "expected a list");
    std::vector<ModePair> pairs;
    for (std::size_t i = 0; i < head.size(); ++i) {
      pairs.push_back(literal_entry(kind, head[i], ".family.head[" + std::to_string(i) + "]"));
    }
    return literal_family(kind, std::move(pairs), literal_entry(kind, member(family, "tail", ".family"), ".family.tail"));
  }
  if (rule == "car-fock-drift") {
    if (!car) wrong_kind();
    const auto p = params_of(family, 1, 2, {0.0, 0.5});
    if (!(p[1] > 0.0 && p[1] <= 1.0)) fail(".family.params[1]", "amplitude must lie in (0, 1]");
    return car_fock_drift(p[0], p[1]);
  }
  if (rule == "car-power") {
    if (!car) wrong_kind();
    const auto p = params_of(family, 6, 6, {});
    return car_mu_sequence(power_rule(p[0], p[1], p[2]), power_rule(p[3], p[4], p[5]), "car-power");
  }
  if (rule == "car-counterexample") {
    if (!car) wrong_kind();
    return car_counterexample();
  }
  if (rule == "ccr-thermal-drift") {
    if (car) wrong_kind();
    const auto p = params_of(family, 1, 2, {0.0, 1.0});
    if (!(p[1] > 0.0)) fail(".family.params[1]", "amplitude must be positive");
    return ccr_thermal_drift(p[0], p[1]);
  }
  if (rule == "ccr-thermal-power") {
    if (car) wrong_kind();
    const auto p = params_of(family, 6, 6, {});
    return ccr_thermal_sequence(power_rule(p[0], p[1], p[2]), power_rule(p[3], p[4], p[5]), "ccr-thermal-power");
  }
  fail(".family.rule", "unknown rule \"" + rule + "\"");
}

}  // namespace

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::CarPair: return "car-pair";
    case ScenarioKind::CcrPair: return "ccr-pair";
    case ScenarioKind::CarSequence: return "car-sequence";
    case ScenarioKind::CcrSequence: return "ccr-sequence";
  }
  return "?";
}

json Options::to_json() const { return json{{"tol", tol}, {"cutoff", cutoff}, {"n_max", n_max}, {"seed", seed}}; }

Matrix parse_complex_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    fail(where, "expected a non-empty list of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(where, "row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = complex_entry(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

RealMatrix parse_real_matrix(const json& j, const std::string& where) {
  const Matrix m = parse_complex_matrix(j, where);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) fail(where, "expected real entries");
  return m.real();
}

Scenario parse_scenario(const json& doc, const OptionOverrides& overrides) {
  if (!doc.is_object()) fail("", "expected a JSON object");
  const json& kind_j = member(doc, "kind", "");
  if (!kind_j.is_string()) fail(".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  Scenario sc;
  sc.options = parse_options(doc, overrides);
  sc.echo = doc;
  sc.echo["options"] = sc.options.to_json();

  if (kind == "car-pair") {
    sc.kind = ScenarioKind::CarPair;
    sc.car = car_pair_payload(doc, "", sc.options);
  } else if (kind == "ccr-pair") {
    sc.kind = ScenarioKind::CcrPair;
    ccr_pair_payload(doc, "", sc);
  } else if (kind == "car-sequence") {
    sc.kind = ScenarioKind::CarSequence;
    sc.family = family_payload(FamilyKind::CAR, member(doc, "family", ""));
  } else if (kind == "ccr-sequence") {
    sc.kind = ScenarioKind::CcrSequence;
    sc.family = family_payload(FamilyKind::CCR, member(doc, "family", ""));
  } else {
    fail(".kind", "unknown kind \"" + kind + "\" (expected car-pair, ccr-pair, car-sequence or ccr-sequence)");
  }
  return sc;
}

}  // namespace qf::cli
