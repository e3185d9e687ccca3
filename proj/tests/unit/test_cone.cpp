#include <doctest.h>

#include <cmath>

#include "conelab/cone.hpp"
#include "conelab/errors.hpp"
#include "conelab/shared_corner.hpp"
#include "support/eja_helpers.hpp"
#include "support/fixtures.hpp"

using namespace conelab;

namespace {

System qubit() { return eja_system(JordanAlgebra::simple(SimpleFactor::complex_herm(2)), "qubit"); }

System square() {
  Vector u(3);
  u << 0, 0, 1;
  return make_system(ConeModel::polyhedral(testfx::square_rays()), u, "square");
}

System simplex(std::size_t n) {
  return make_system(ConeModel::polyhedral(testfx::orthant_rays(n)), Vector::Ones(static_cast<Eigen::Index>(n)),
                     "simplex");
}

System corner() { return make_system(ConeModel::shared_corner(), shared_corner::unit(), "shared-corner"); }

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Vector qubit_coords(const CMatrix& m) { return SimpleFactor::complex_herm(2).from_matrix(m); }

}  // namespace

TEST_CASE("membership examples") {
  CMatrix d(2, 2);
  d << 1, 0, 0, 0;
  CHECK(membership(qubit().cone, qubit_coords(d)));
  d << 1, 0, 0, -1;
  CHECK_FALSE(membership(qubit().cone, qubit_coords(d)));
  CHECK(membership(square().cone, vec({0, 0, 1})));
  CHECK_FALSE(membership(square().cone, vec({1.5, 0, 1})));
  CHECK_THROWS_AS(membership(square().cone, vec({0, 1})), DimensionMismatch);
  CHECK(membership(corner().cone, shared_corner::generic_ray(1, 2)));
  CHECK_FALSE(membership(corner().cone, vec({1, 1, 1, 2, 0})));
}

TEST_CASE("membership is scale invariant") {
  Rng rng(8);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (const System& s : {qubit(), square(), corner(), simplex(3)}) {
    for (int t = 0; t < 100; ++t) {
      const Vector x = gaussian_vector(s.dim(), rng);
      const double l = scale(rng);
      CHECK(membership(s.cone, x) == membership(s.cone, l * x));
    }
  }
}

TEST_CASE("interior points have positive margin") {
  Rng rng(12);
  for (const System& s : {qubit(), square(), corner(), simplex(4)}) {
    for (int t = 0; t < 20; ++t) {
      const Vector x = random_interior(s, rng);
      CHECK(s.unit.dot(x) == doctest::Approx(1.0));
      CHECK(margin(s.cone, x) > 0.0);
    }
  }
}

TEST_CASE("face dimension examples") {
  const auto rs = eja_system(JordanAlgebra::simple(SimpleFactor::real_sym(2)));
  const auto& f = rs.cone.algebra().summands()[0];
  CMatrix m(2, 2);
  m << 1, 0, 0, 1;
  CHECK(face_dimension(rs.cone, f.from_matrix(m)) == 3);
  m << 1, 0, 0, 0;
  CHECK(face_dimension(rs.cone, f.from_matrix(m)) == 1);
  // p2 + p3 in the shared-corner cone: x2 and x3 vary freely, nothing else does.
  CHECK(face_dimension(corner().cone, vec({0, 1, 1, 0, 0})) == 2);
  CHECK(face_dimension(corner().cone, shared_corner::generic_ray(1, 2)) == 1);
  CHECK(face_dimension(corner().cone, shared_corner::basepoint()) == 5);
  CHECK(face_dimension(square().cone, vec({1, 0, 1})) == 2);
  CHECK_THROWS_AS(face_dimension(square().cone, vec({3, 0, 1})), PreconditionViolation);
  CHECK_THROWS_AS(face_dimension(corner().cone, shared_corner::basepoint(), 4), PreconditionViolation);
}

TEST_CASE("extremal ray examples") {
  CMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(is_extremal_ray(qubit().cone, qubit_coords(plus)));
  CHECK(is_extremal_ray_generic(qubit().cone, qubit_coords(plus)));
  CHECK_FALSE(is_extremal_ray(simplex(3).cone, vec({1, 1, 0})));
  CHECK(is_extremal_ray(simplex(3).cone, vec({0, 2, 0})));
  CHECK(is_extremal_ray(corner().cone, shared_corner::generic_ray(1, 2)));
  CHECK(is_extremal_ray(corner().cone, shared_corner::corner_ray(2)));
  CHECK_FALSE(is_extremal_ray(corner().cone, vec({0, 1, 1, 0, 0})));
  CHECK_THROWS_AS(is_extremal_ray(qubit().cone, Vector::Zero(4)), PreconditionViolation);
}

TEST_CASE("spectral and generic extremality agree on boundary points") {
  Rng rng(19);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  for (const auto& f : testfx::all_simple_factors()) {
    const auto alg = JordanAlgebra::simple(f);
    const auto cone = ConeModel::eja(alg);
    for (int t = 0; t < 10; ++t) {
      // Boundary point: a random positive combination of fewer than rank pure states.
      Vector x = w(rng) * alg.random_pure(rng);
      if (t % 2 == 1 && f.rank() > 2) x += w(rng) * alg.random_pure(rng);
      CHECK(is_extremal_ray(cone, x) == is_extremal_ray_generic(cone, x));
    }
  }
}

TEST_CASE("face monotonicity") {
  Rng rng(27);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  for (const System& s : {qubit(), corner(), square(), eja_system(JordanAlgebra::simple(SimpleFactor::real_sym(3)))}) {
    for (int t = 0; t < 20; ++t) {
      const auto ex = extremal_samples(s.cone, 4, rng);
      const Vector y = w(rng) * ex[0];
      const Vector x = y + w(rng) * ex[1 % ex.size()];
      CHECK(face_dimension(s.cone, y) <= face_dimension(s.cone, x));
    }
  }
}

TEST_CASE("measurement validation") {
  CMatrix p0(2, 2), p1(2, 2), id(2, 2);
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  id << 1, 0, 0, 1;
  CHECK(validate_measurement(qubit(), {qubit_coords(p0), qubit_coords(p1)}));
  CHECK_FALSE(validate_measurement(qubit(), {qubit_coords(id), qubit_coords(id)}));
  const System sq = square();
  CHECK(validate_measurement(sq, {0.5 * sq.unit, 0.5 * sq.unit}));
  CHECK_FALSE(validate_measurement(sq, {vec({1, 0, 1}), vec({-1, 0, 0})}));
  CHECK_THROWS_AS(validate_measurement(sq, {}), PreconditionViolation);
}

TEST_CASE("order isomorphism examples") {
  const System q = qubit();
  const auto& f = q.cone.algebra().summands()[0];
  const auto n = static_cast<Eigen::Index>(f.dim());
  CMatrix u(2, 2);
  const double c = std::cos(0.3), s = std::sin(0.3);
  u << c, Complex(0, s), Complex(0, s), c;
  Matrix conj(n, n), transpose(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const CMatrix b = f.to_matrix(Vector::Unit(n, k));
    conj.col(k) = f.from_matrix(u * b * u.adjoint());
    transpose.col(k) = f.from_matrix(b.transpose());
  }
  CHECK(is_order_isomorphism({conj, q, q, true}).holds);
  CHECK(is_order_isomorphism({transpose, q, q, true}).holds);

  const System bit = simplex(2);
  Matrix shear(2, 2);
  shear << 1, 0, 1, 1;  // (x, y) -> (x, x + y)
  const auto v = is_order_isomorphism({shear, bit, bit, false});
  CHECK_FALSE(v.holds);
  REQUIRE(v.violation.has_value());
  // The inverse sends the ray (0, 1)... through (1, 0) -> (1, -1), outside the orthant.
  CHECK(v.reason.find("inverse") != std::string::npos);

  const auto sing = is_order_isomorphism({Matrix::Zero(2, 2), bit, bit, false});
  CHECK_FALSE(sing.holds);
  CHECK(sing.violation.has_value());
}

TEST_CASE("systems reject units that are not interior") {
  CHECK_THROWS_AS(make_system(ConeModel::polyhedral(testfx::square_rays()), vec({1, 0, 0}), "bad"),
                  PreconditionViolation);
}
