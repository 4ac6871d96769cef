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

// Scenario files: JSON documents describing a covariance pair or a mode
// family, plus the numeric options a command runs with.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qf/car.hpp"
#include "qf/ccr.hpp"
#include "qf/ccr_oracle.hpp"
#include "qf/seqmodel.hpp"

namespace qf::cli {

using json = nlohmann::json;

enum class ScenarioKind { CarPair, CcrPair, CarSequence, CcrSequence };

std::string_view to_string(ScenarioKind k);

struct Options {
  double tol = 1e-8;
  int cutoff = 80;
  std::size_t n_max = 4096;
  std::uint64_t seed = 1;

  json to_json() const;
};

/// Values given on the command line; they win over the scenario's "options".
struct OptionOverrides {
  std::optional<double> tol;
  std::optional<int> cutoff;
  std::optional<std::size_t> n_max;
  std::optional<std::uint64_t> seed;
};

struct HamiltonianPair {
  QuadraticHamiltonian s;
  QuadraticHamiltonian t;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::CarPair;
  /// The input document with "options" replaced by the effective options.
  /// Running a command on it again reproduces the same results.
  json echo;
  Options options;

  std::optional<CarStatePair> car;
  std::optional<CcrPair> ccr;
  /// Present when the CCR states are given as Gibbs states (or thermal modes).
  std::optional<HamiltonianPair> hamiltonians;
  /// Cutoff at which the Hamiltonian states were converged for covariance extraction.
  int covariance_cutoff = 0;
  std::optional<ModeFamily> family;
};

/// Throws qf::Error (ErrorKind::Validation for schema problems, and whatever
/// the validators raise for invalid matrices).
Scenario parse_scenario(const json& doc, const OptionOverrides& overrides = {});

/// Complex entries are numbers or [re, im] pairs; matrices are lists of rows.
Matrix parse_complex_matrix(const json& j, const std::string& where);
RealMatrix parse_real_matrix(const json& j, const std::string& where);

/// Inverse temperature used for the c = 1 (vacuum) limit of a thermal mode.
inline constexpr double kVacuumBeta = 50.0;

}  // namespace qf::cli
