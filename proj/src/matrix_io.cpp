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

#include "freecomp/matrix_io.hpp"

#include <fstream>

#include "freecomp/errors.hpp"

namespace freecomp {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix &m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json re_row = json::array();
    json im_row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json matrix_to_json(const HermitianMatrix &m) { return matrix_to_json(m.matrix()); }

namespace {

void read_part(const json &rows, std::size_t dim, const char *key, ComplexMatrix &out, bool imag) {
  if (!rows.is_array() || rows.size() != dim) {
    throw ParseError(std::string("matrix JSON: '") + key + "' must be an array of " +
                     std::to_string(dim) + " rows");
  }
  for (std::size_t r = 0; r < dim; ++r) {
    const json &row = rows[r];
    if (!row.is_array() || row.size() != dim) {
      throw ParseError(std::string("matrix JSON: row ") + std::to_string(r) + " of '" + key +
                       "' must have " + std::to_string(dim) + " entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!row[c].is_number()) {
        throw ParseError(std::string("matrix JSON: non-numeric entry in '") + key + "'");
      }
      const double x = row[c].get<double>();
      if (imag) {
        out(r, c) = Complex{out(r, c).real(), x};
      } else {
        out(r, c) = Complex{x, out(r, c).imag()};
      }
    }
  }
}

}  // namespace

HermitianMatrix hermitian_from_json(const json &doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("re")) {
    throw ParseError("matrix JSON: expected object with 'dim' and 're'");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0) {
    throw ParseError("matrix JSON: 'dim' must be a positive integer");
  }
  const auto dim = static_cast<std::size_t>(doc["dim"].get<long long>());
  ComplexMatrix m(dim, dim);
  read_part(doc["re"], dim, "re", m, false);
  if (doc.contains("im")) {
    read_part(doc["im"], dim, "im", m, true);
  }
  return HermitianMatrix(m);
}

HermitianMatrix read_hermitian_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open matrix file " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error &e) {
    throw ParseError("matrix file " + path.string() + ": " + e.what());
  }
  return hermitian_from_json(doc);
}

void write_matrix_file(const std::filesystem::path &path, const HermitianMatrix &m) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write matrix file " + path.string());
  }
  out << matrix_to_json(m).dump(2) << '\n';
}

}  // namespace freecomp
