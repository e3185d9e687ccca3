#include "conelab/json_util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

nlohmann::json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    return z.convert_to<std::int64_t>();
  return z.str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos)
      throw ParseError("not an integer: '" + s + "'");
    return Integer(s);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

}  // namespace

nlohmann::json to_json(const Rational& q) {
  return {{"num", integer_json(numerator(q))}, {"den", integer_json(denominator(q))}};
}

nlohmann::json to_json(const RVector& v) {
  auto out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

nlohmann::json to_json(const RMatrix& m) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

double stable(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

nlohmann::json to_json(const Vector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(stable(v(i)));
  return out;
}

nlohmann::json to_json(const Matrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_object()) {
    if (!j.contains("num") || !j.contains("den")) throw ParseError("rational needs \"num\" and \"den\": " + j.dump());
    const Integer den = integer_from_json(j.at("den"));
    if (den == 0) throw ParseError("zero denominator: " + j.dump());
    return Rational(integer_from_json(j.at("num")), den);
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected an exact rational, got " + j.dump());
}

RVector rvector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
  RVector v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers, got " + j.dump());
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    v(static_cast<Eigen::Index>(i)) = e.is_number() ? e.get<double>() : to_double(rational_from_json(e));
  }
  return v;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty array of rows, got " + j.dump());
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vector r = vector_from_json(j[static_cast<std::size_t>(i)]);
    if (r.size() != cols) throw ParseError("ragged matrix rows");
    m.row(i) = r.transpose();
  }
  return m;
}

}  // namespace conelab
