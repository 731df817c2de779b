#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "crawford/error.hpp"
#include "crawford/matrix.hpp"

namespace crawford {

/// {"n": int, "entries": [[string, ...], ...]} with Gaussian-rational strings.
/// Plain JSON integers are accepted as entries too.
inline ComplexMatrix parse_matrix_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw ParseError("matrix file needs keys \"n\" and \"entries\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw ParseError("\"n\" must be a positive integer");
  const auto n = static_cast<std::size_t>(j["n"].get<long long>());
  const auto& rows = j["entries"];
  if (!rows.is_array() || rows.size() != n) throw ParseError("\"entries\" must have n rows");
  ComplexMatrix C(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) throw ParseError("matrix is not square (row " + std::to_string(r) + ")");
    for (std::size_t c = 0; c < n; ++c) {
      const auto& e = rows[r][c];
      if (e.is_string())
        C(r, c) = GaussianRational::parse(e.get<std::string>());
      else if (e.is_number_integer())
        C(r, c) = GaussianRational(e.get<long long>());
      else
        throw ParseError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be a string or integer");
    }
  }
  return C;
}

inline ComplexMatrix read_matrix_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  return parse_matrix_json(f);
}

inline void write_matrix_json(std::ostream& out, const ComplexMatrix& C) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < C.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < C.size(); ++j) row.push_back(C(i, j).str());
    rows.push_back(row);
  }
  nlohmann::json j;
  j["n"] = C.size();
  j["entries"] = rows;
  out << j.dump() << '\n';
}

} // namespace crawford
