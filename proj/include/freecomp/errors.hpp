// Copyright 2026 The freecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FREECOMP_ERRORS_HPP
#define FREECOMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace freecomp {

/// Input outside the mathematical domain of an operation (bad dimensions,
/// parameters out of range, non-Hermitian data, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string &what) : std::invalid_argument(what) {}
};

/// Malformed textual input: JSON files, `name:param` specs, CLI flags.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string &what) : std::runtime_error(what) {}
};

/// Numerical failure: eigensolver non-convergence, SDP not solved to optimality.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace freecomp

#endif  // FREECOMP_ERRORS_HPP
