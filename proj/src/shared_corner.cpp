#include "conelab/shared_corner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conelab/errors.hpp"

namespace conelab::shared_corner {

std::array<Eigen::Matrix2d, 2> blocks(const Vector& x) {
  if (x.size() != static_cast<Eigen::Index>(kDim)) throw DimensionMismatch("shared-corner element", kDim, x.size());
  Eigen::Matrix2d b1, b2;
  b1 << x(0), x(3), x(3), x(1);
  b2 << x(0), x(4), x(4), x(2);
  return {b1, b2};
}

double min_eigenvalue(const Vector& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks(x)) {
    // Closed form for a symmetric 2x2 matrix.
    const double mean = 0.5 * (b(0, 0) + b(1, 1));
    const double half_gap = std::hypot(0.5 * (b(0, 0) - b(1, 1)), b(0, 1));
    m = std::min(m, mean - half_gap);
  }
  return m;
}

Vector basepoint() {
  Vector x(5);
  x << 1, 1, 1, 0, 0;
  return x;
}

Vector unit() { return basepoint(); }

Vector generic_ray(double s, double t) {
  Vector x(5);
  x << 1, s * s, t * t, s, t;
  return x;
}

Vector corner_ray(int which) {
  if (which != 2 && which != 3) throw PreconditionViolation("corner rays are e2 and e3");
  return Vector::Unit(5, which - 1);
}

Matrix lower_action(double a, double b, double c, double b2, double c2) {
  // Images of x under B1 -> L1 B1 L1^T, B2 -> L2 B2 L2^T, read off entrywise.
  Matrix m = Matrix::Zero(5, 5);
  m(0, 0) = a * a;
  m(1, 0) = b * b;
  m(1, 3) = 2 * b * c;
  m(1, 1) = c * c;
  m(2, 0) = b2 * b2;
  m(2, 4) = 2 * b2 * c2;
  m(2, 2) = c2 * c2;
  m(3, 0) = a * b;
  m(3, 3) = a * c;
  m(4, 0) = a * b2;
  m(4, 4) = a * c2;
  return m;
}

Matrix lower_action_to(const Vector& x) {
  if (x.size() != 5) throw DimensionMismatch("shared-corner element", 5, x.size());
  const double x1 = x(0);
  const double r2 = x(1) - x(3) * x(3) / x1;
  const double r3 = x(2) - x(4) * x(4) / x1;
  if (!(x1 > 0) || !(r2 > 0) || !(r3 > 0)) throw PreconditionViolation("point is not interior to the shared-corner cone");
  const double a = std::sqrt(x1);
  return lower_action(a, x(3) / a, std::sqrt(r2), x(4) / a, std::sqrt(r3));
}

double dual_margin(const Vector& e) {
  if (e.size() != 5) throw DimensionMismatch("shared-corner functional", 5, e.size());
  double m = std::min(e(1), e(2));
  double corner = e(0);
  for (int k : {1, 2}) {
    const double off = e(k + 2);
    if (e(k) > 0)
      corner -= off * off / (4 * e(k));
    else if (off != 0)
      corner = -std::numeric_limits<double>::infinity();
  }
  return std::min(m, corner);
}

Vector dual_ray(int block, double p, double q) {
  Vector e = Vector::Zero(5);
  e(0) = p * p;
  if (block == 1) {
    e(1) = q * q;
    e(3) = 2 * p * q;
  } else {
    e(2) = q * q;
    e(4) = 2 * p * q;
  }
  return e;
}

Matrix block_swap() {
  Matrix p = Matrix::Zero(5, 5);
  p(0, 0) = 1;
  p(1, 2) = p(2, 1) = 1;
  p(3, 4) = p(4, 3) = 1;
  return p;
}

}  // namespace conelab::shared_corner
