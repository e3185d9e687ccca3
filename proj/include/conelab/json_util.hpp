#pragma once

#include <json.hpp>

#include "conelab/rational.hpp"

namespace conelab {

/// Rationals travel as {"num": int, "den": int}; integers that fit in 64 bits
/// are written as JSON numbers, larger ones as decimal strings.
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const RVector& v);
nlohmann::json to_json(const RMatrix& m);
nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);

/// Accepts {"num", "den"}, a JSON integer, or a string such as "-3/4".
Rational rational_from_json(const nlohmann::json& j);
RVector rvector_from_json(const nlohmann::json& j);
Vector vector_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);

/// Rounds to 12 significant digits so reports stay byte-stable across
/// platforms with different last-bit floating-point behaviour.
double stable(double x);

}  // namespace conelab
