#include "conelab/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "conelab/errors.hpp"

namespace conelab {

RMatrix RMatrix::from_rows(const std::vector<RVector>& rows, std::size_t cols) {
  RMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("RMatrix::from_rows", cols, rows[i].size());
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RMatrix RMatrix::from_columns(const std::vector<RVector>& columns, std::size_t rows) {
  RMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows)
      throw DimensionMismatch("RMatrix::from_columns", rows, columns[j].size());
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RVector RMatrix::row(std::size_t i) const {
  return RVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RVector RMatrix::col(std::size_t j) const {
  RVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RMatrix RMatrix::operator*(const RMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("RMatrix product", cols_, rhs.rows_);
  RMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

RVector RMatrix::operator*(const RVector& v) const {
  if (cols_ != v.size()) throw DimensionMismatch("RMatrix-vector product", cols_, v.size());
  RVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RowEchelon rref(RMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const RMatrix& m) { return rref(m).pivots.size(); }

std::vector<RVector> nullspace(const RMatrix& m) {
  const auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RMatrix> inverse(const RMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  RMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto [reduced, pivots] = rref(std::move(aug));
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = reduced(i, n + j);
  return inv;
}

Rational determinant(RMatrix m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant", m.rows(), m.cols());
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

bool is_positive_definite(const RMatrix& sym) {
  const std::size_t n = sym.rows();
  for (std::size_t k = 1; k <= n; ++k) {
    RMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = sym(i, j);
    if (determinant(std::move(minor)) <= 0) return false;
  }
  return true;
}

std::optional<RVector> solve(const RMatrix& m, const RVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve", m.rows(), b.size());
  RMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto [reduced, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = reduced(r, m.cols());
  return x;
}

Rational dot(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot", a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RVector add(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add", a.size(), b.size());
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RVector scale(const RVector& a, const Rational& s) {
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

bool is_zero(const RVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RVector primitive(const RVector& v) {
  if (is_zero(v)) return v;
  Integer lcm_den = 1;
  for (const auto& x : v)
    if (x != 0) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(boost::multiprecision::denominator(x)));
  Integer g = 0;
  for (const auto& x : v) {
    const Integer n = Integer(boost::multiprecision::numerator(x * Rational(lcm_den)));
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(n));
  }
  RVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * Rational(lcm_den) / Rational(g);
  return out;
}

bool positively_parallel(const RVector& a, const RVector& b) {
  if (a.size() != b.size() || is_zero(a) || is_zero(b)) return false;
  std::size_t k = 0;
  while (a[k] == 0) ++k;
  if (b[k] == 0) return false;
  const Rational s = b[k] / a[k];
  if (s <= 0) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] * s != b[i]) return false;
  return true;
}

Rational exact(double x) {
  if (!std::isfinite(x)) throw NumericalError("cannot convert a non-finite value to a rational");
  return Rational(x);
}

Rational simplest_rational(double x, double tol) {
  if (!std::isfinite(x)) throw NumericalError("cannot convert a non-finite value to a rational");
  const Rational target = exact(x);
  const double bound = tol * std::max(1.0, std::abs(x));
  // Convergents h/k of the continued fraction of the exact binary value.
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Rational rest = target;
  for (int i = 0; i < 64; ++i) {
    const Integer num = boost::multiprecision::numerator(rest);
    const Integer den = boost::multiprecision::denominator(rest);
    Integer a = num / den;  // truncates; adjust to the floor
    if (num < 0 && a * den != num) a -= 1;
    const Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const Rational approx(h1, k1);
    const Rational frac = rest - a;
    if (frac == 0 || std::abs(to_double(approx - target)) <= bound) return approx;
    rest = 1 / frac;
  }
  return target;
}

RVector simplest_rational(const Vector& v, double tol) {
  RVector out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = simplest_rational(v(i), tol);
  return out;
}

RVector exact(const Vector& v) {
  RVector out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = exact(v(i));
  return out;
}

RMatrix exact(const Matrix& m) {
  RMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = exact(m(i, j));
  return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Vector to_double(const RVector& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = to_double(v[i]);
  return out;
}

Matrix to_double(const RMatrix& m) {
  Matrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
  return out;
}

Rational parse_rational(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  const std::string body = first == std::string::npos ? std::string() : text.substr(first, last - first + 1);
  const auto slash = body.find('/');
  const auto parse_int = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos)
      throw ParseError("not a rational number: '" + text + "'");
    try {
      return Integer(s);
    } catch (const std::exception&) {
      throw ParseError("not a rational number: '" + text + "'");
    }
  };
  if (slash == std::string::npos) return Rational(parse_int(body));
  const Integer num = parse_int(body.substr(0, slash));
  const Integer den = parse_int(body.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace conelab
