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

// Command dispatch and report assembly for the qf tool.

#include <array>
#include <string>
#include <string_view>

#include "qf/cli/scenario.hpp"
#include "qf/error.hpp"

namespace qf::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::array<std::string_view, 6> kCommands = {
    "validate", "trans-prob", "classify", "quadrature-check", "oracle-compare", "demo-counterexample"};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitResourceCap = 4;

int exit_code_for(ErrorKind kind);

/// Finite doubles as numbers; +-inf as "infinity" / "-infinity"; NaN as "inconclusive".
json number(double x);

/// FNV-1a 64 of the compact dump, as 16 hex digits.
std::string inputs_digest(const json& doc);

struct Outcome {
  json report;
  int exit_code = kExitOk;
};

/// Runs `command` on a parsed scenario document. Never throws: failures are
/// reported in the "error" member with the matching exit code. `scenario` may
/// be null for demo-counterexample.
Outcome run_command(std::string_view command, const json& scenario, const OptionOverrides& overrides = {});

/// Reads and parses `path` first; unreadable or malformed files are
/// validation failures.
Outcome run_command_file(std::string_view command, const std::string& path, const OptionOverrides& overrides = {});

}  // namespace qf::cli
