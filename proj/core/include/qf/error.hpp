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

#include <stdexcept>
#include <string>

namespace qf {

/// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  Validation,            ///< input fails a contract (shape, PSD, CAR relation, ...)
  NotPsd,
  DegenerateCovariance,
  SupportViolation,
  NonConvergence,        ///< iterative routine or cutoff sweep did not settle
  ResourceCap,           ///< oracle size limits exceeded
  ConsistencyViolation,  ///< two routes that must agree did not
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double magnitude = 0.0)
      : std::runtime_error(what), kind_(kind), magnitude_(magnitude) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Size of the offending quantity (max violation, eigenvalue, ...), 0 if n/a.
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorKind kind_;
  double magnitude_;
};

}  // namespace qf
