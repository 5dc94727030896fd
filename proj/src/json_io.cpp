#include "psr/json_io.hpp"

#include <fstream>

namespace psr {

CubicForm parse_polynomial(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
    throw SchemaError("polynomial JSON needs fields \"n\" and \"terms\"");
  const int n = j.at("n").get<int>();
  if (n < 1) throw SchemaError("\"n\" must be a positive integer");
  CubicForm h(n + 1);
  for (const auto& term : j.at("terms")) {
    if (!term.contains("monomial") || !term.contains("coeff"))
      throw SchemaError("each term needs \"monomial\" and \"coeff\"");
    const auto& mono = term.at("monomial");
    if (!mono.is_array() || static_cast<int>(mono.size()) != n + 1)
      throw SchemaError("monomial exponent list must have length n+1");
    int idx[3];
    int pos = 0;
    int total = 0;
    for (int var = 0; var <= n; ++var) {
      const int e = mono.at(static_cast<std::size_t>(var)).get<int>();
      if (e < 0) throw SchemaError("negative exponent");
      total += e;
      for (int r = 0; r < e && pos < 3; ++r) idx[pos++] = var;
    }
    if (total != 3) throw SchemaError("monomial exponents must sum to 3");
    h.coeff(idx[0], idx[1], idx[2]) += term.at("coeff").get<double>();
  }
  return h;
}

CubicForm parse_polynomial_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open polynomial file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_polynomial(j);
}

Json polynomial_to_json(const CubicForm& h) {
  const int N = h.dim();
  Json terms = Json::array();
  for (std::size_t idx = 0; idx < h.raw().size(); ++idx) {
    const double c = h.raw()[idx];
    if (c == 0.0) continue;
    const auto [i, j, k] = h.triple(idx);
    std::vector<int> exps(static_cast<std::size_t>(N), 0);
    ++exps[static_cast<std::size_t>(i)];
    ++exps[static_cast<std::size_t>(j)];
    ++exps[static_cast<std::size_t>(k)];
    terms.push_back({{"monomial", exps}, {"coeff", c}});
  }
  return Json{{"n", N - 1}, {"terms", terms}};
}

Json standard_form_to_json(const StandardFormPoly& sf) {
  return polynomial_to_json(assemble_standard(sf));
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected a JSON array of numbers");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
  return v;
}

}  // namespace psr
