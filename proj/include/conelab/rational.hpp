#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <string>
#include <vector>

#include "conelab/linalg.hpp"

namespace conelab {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using RVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals. Sized for the small certificate
/// problems in this toolkit (tens of rows and columns).
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RMatrix from_rows(const std::vector<RVector>& rows, std::size_t cols);
  static RMatrix from_columns(const std::vector<RVector>& columns, std::size_t rows);
  static RMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RVector row(std::size_t i) const;
  RVector col(std::size_t j) const;
  RMatrix transpose() const;

  RMatrix operator*(const RMatrix& rhs) const;
  RVector operator*(const RVector& v) const;
  bool operator==(const RMatrix& rhs) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon rref(RMatrix m);
std::size_t rank(const RMatrix& m);
/// Basis of {x : m x = 0}, one vector per free column, in column order.
std::vector<RVector> nullspace(const RMatrix& m);
std::optional<RMatrix> inverse(const RMatrix& m);
Rational determinant(RMatrix m);
/// Sylvester's criterion on a symmetric matrix.
bool is_positive_definite(const RMatrix& sym);
/// Solution of m x = b if one exists.
std::optional<RVector> solve(const RMatrix& m, const RVector& b);

Rational dot(const RVector& a, const RVector& b);
RVector add(const RVector& a, const RVector& b);
RVector scale(const RVector& a, const Rational& s);
bool is_zero(const RVector& v);
/// Positive multiple of `v` with coprime integer entries.
RVector primitive(const RVector& v);
/// True iff a = s b for some s > 0.
bool positively_parallel(const RVector& a, const RVector& b);

/// Exact conversion; every finite double is a dyadic rational.
Rational exact(double x);
/// Simplest continued-fraction convergent within tol * max(1, |x|) of x, so
/// that 1/3 typed as 0.333... comes back as 1/3.
Rational simplest_rational(double x, double tol = 1e-12);
RVector simplest_rational(const Vector& v, double tol = 1e-12);
RVector exact(const Vector& v);
RMatrix exact(const Matrix& m);
double to_double(const Rational& q);
Vector to_double(const RVector& v);
Matrix to_double(const RMatrix& m);

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace conelab
