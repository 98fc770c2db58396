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

#ifndef FREECOMP_MATRIX_IO_HPP
#define FREECOMP_MATRIX_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "freecomp/linalg.hpp"

namespace freecomp {

// JSON matrix format: {"dim": n, "re": [[...]], "im": [[...]]}, row-major
// nested arrays. "im" may be omitted for real matrices.

nlohmann::json matrix_to_json(const ComplexMatrix &m);
nlohmann::json matrix_to_json(const HermitianMatrix &m);

/// Throws ParseError on malformed documents, DomainError on non-Hermitian data.
HermitianMatrix hermitian_from_json(const nlohmann::json &doc);

HermitianMatrix read_hermitian_file(const std::filesystem::path &path);
void write_matrix_file(const std::filesystem::path &path, const HermitianMatrix &m);

}  // namespace freecomp

#endif  // FREECOMP_MATRIX_IO_HPP
