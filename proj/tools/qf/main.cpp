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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qf/cli/commands.hpp"
#include "qf/parallel.hpp"

namespace {

const char* description(std::string_view command) {
  if (command == "validate") return "Validate a scenario and summarize its covariances";
  if (command == "trans-prob") return "Transition probability of a car-pair or ccr-pair";
  if (command == "classify") return "Quasi-equivalence verdict for a ccr-pair or a mode family";
  if (command == "quadrature-check") return "Quadrature identity, projection defects and meet rank of a car-pair";
  if (command == "oracle-compare") return "Determinant formula against the brute-force Fock-space oracle";
  return "Run the fermionic counterexample family end to end";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-free CAR/CCR state calculus: transition probabilities and quasi-equivalence", "qf"};
  app.require_subcommand(1);

  std::string path;
  double tol = 0.0;
  int cutoff = 0;
  std::size_t n_max = 0;
  std::uint64_t seed = 0;
  bool quiet = false;
  CLI::Option* tol_opt = app.add_option("--tol", tol, "Tolerance for pass/fail thresholds (default 1e-8)");
  CLI::Option* cutoff_opt = app.add_option("--cutoff", cutoff, "Maximal Fock cutoff for the bosonic oracle (default 80)");
  CLI::Option* n_max_opt = app.add_option("--n-max", n_max, "Number of modes for sequence families (default 4096)");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Seed for randomized scenarios (default 1)");
  app.add_flag("-q,--quiet", quiet, "Suppress log lines on stderr");

  for (std::string_view command : qf::cli::kCommands) {
    CLI::App* sub = app.add_subcommand(std::string(command), description(command));
    sub->fallthrough();
    CLI::Option* pos = sub->add_option("scenario", path, "Scenario JSON file");
    if (command != "demo-counterexample") pos->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qf::cli::kExitValidation;
  }

  qf::cli::OptionOverrides overrides;
  if (tol_opt->count() > 0) overrides.tol = tol;
  if (cutoff_opt->count() > 0) overrides.cutoff = cutoff;
  if (n_max_opt->count() > 0) overrides.n_max = n_max;
  if (seed_opt->count() > 0) overrides.seed = seed;

  const std::string command = app.get_subcommands().front()->get_name();
  if (!quiet) {
    std::cerr << "qf: " << command << (path.empty() ? "" : " " + path) << " (" << qf::worker_count()
              << " worker threads)\n";
  }
  const qf::cli::Outcome out = qf::cli::run_command_file(command, path, overrides);
  if (!quiet) {
    if (out.report.contains("error")) {
      std::cerr << "qf: error: " << out.report["error"]["message"].get<std::string>() << "\n";
    }
    std::cerr << "qf: " << out.report["status"].get<std::string>() << " (exit " << out.exit_code << ")\n";
  }
  std::cout << out.report.dump(2) << std::endl;
  return out.exit_code;
}
