#pragma once

#include <string>

#include <json.hpp>

#include "psr/cubic_form.hpp"
#include "psr/standard_form.hpp"

namespace psr {

using Json = nlohmann::json;

/// Ambient cubic from the polynomial schema
/// {"n": int, "terms": [{"monomial": [e_x, e_y1, ..., e_yn], "coeff": f}]}
/// with each exponent list of length n+1 summing to 3.
CubicForm parse_polynomial(const Json& j);
CubicForm parse_polynomial_file(const std::string& path);

/// Emit an ambient cubic in the same schema (sparse, index-sorted terms).
Json polynomial_to_json(const CubicForm& h);

/// Convenience: embed a P3 into the standard-form ambient cubic and emit it.
Json standard_form_to_json(const StandardFormPoly& sf);

Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

}  // namespace psr
