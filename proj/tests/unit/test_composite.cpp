#include <doctest.h>

#include <cmath>

#include "conelab/composite.hpp"
#include "conelab/errors.hpp"
#include "support/qubits.hpp"
#include "support/systems.hpp"

using namespace conelab;
using namespace testfx;

namespace {

CompositeSystem two_qubits() {
  const System q = testfx::qubit();
  return make_composite(q, q, CompositeModel::Hilbert);
}

CompositeSystem bits(std::size_t n = 2) {
  const System s = testfx::simplex(n);
  return make_composite(s, s, CompositeModel::Classical);
}

Vector qs(const CMatrix& m) { return herm2().from_matrix(m); }

Matrix transpose_map() {
  Matrix t(4, 4);
  for (Eigen::Index k = 0; k < 4; ++k) t.col(k) = qs(herm2().to_matrix(Vector::Unit(4, k)).transpose());
  return t;
}

CMatrix diag(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("product states and effects") {
  const CompositeSystem qq = two_qubits();
  const Vector zz = product_state(qq, qs(diag(1, 0)), qs(diag(1, 0)));
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 0) = 1;
  CHECK((density_of(zz) - expect).norm() < 1e-12);
  CHECK(joint_membership(qq, zz) == JointMembership::Member);

  const CompositeSystem cc = bits();
  CHECK(product_state(cc, vec({1, 0}), vec({0, 1})) == vec({0, 1, 0, 0}));

  Rng rng(3);
  for (const CompositeSystem& c : {qq, cc}) {
    for (int k = 0; k < 20; ++k) {
      const Vector wa = random_interior(c.a, rng), wb = random_interior(c.b, rng);
      const Vector ea = 0.5 * c.a.unit, eb = c.b.unit;
      const double joint = product_state(c, wa, wb).dot(product_effect(c, ea, eb));
      CHECK(std::abs(joint - wa.dot(ea) * wb.dot(eb)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(product_state(cc, vec({1, 0, 0}), vec({0, 1})), DimensionMismatch);
  CHECK_THROWS_AS(product_state(cc, vec({1, -1}), vec({0, 1})), PreconditionViolation);
}

TEST_CASE("composite dimension is the product of factor dimensions") {
  const System q = testfx::qubit();
  const System r = testfx::eja({SimpleFactor::real_sym(2)});
  CHECK(two_qubits().dim() == 16);
  CHECK(bits(3).dim() == 9);
  CHECK(make_composite(r, r, CompositeModel::MaxTensor).dim() == 9);
  CHECK(make_composite(testfx::square(), testfx::square(), CompositeModel::MinTensor).dim() == 9);
  CHECK_THROWS_AS(make_composite(q, r, CompositeModel::Hilbert), PreconditionViolation);
  CHECK_THROWS_AS(make_composite(testfx::square(), testfx::square(), CompositeModel::Classical), PreconditionViolation);
  CHECK_THROWS_AS(make_composite(q, q, CompositeModel::MinTensor), Unsupported);
}

TEST_CASE("hilbert composite cone is the two-qubit PSD cone") {
  const CompositeSystem qq = two_qubits();
  CHECK(joint_membership(qq, coords_of(bell())) == JointMembership::Member);
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1;
  CHECK(joint_membership(qq, coords_of(swap)) == JointMembership::Rejected);
  CHECK(std::abs(qq.joint.unit.dot(coords_of(bell())) - 1.0) < 1e-12);
}

TEST_CASE("marginals") {
  const CompositeSystem qq = two_qubits();
  const Vector zz = product_state(qq, qs(diag(1, 0)), qs(diag(1, 0)));
  CHECK((marginal(qq, zz, Side::A) - qs(diag(1, 0))).norm() < 1e-12);
  CHECK((marginal(qq, zz, Side::B) - qs(diag(1, 0))).norm() < 1e-12);
  const Vector b = coords_of(bell());
  CHECK((marginal(qq, b, Side::A) - qs(diag(0.5, 0.5))).norm() < 1e-12);
  CHECK((marginal(qq, b, Side::B) - qs(diag(0.5, 0.5))).norm() < 1e-12);

  Rng rng(11);
  const Vector wa = random_interior(qq.a, rng), wb = random_interior(qq.b, rng);
  const Vector p = product_state(qq, wa, wb);
  CHECK((marginal(qq, p, Side::A) - wa).norm() < 1e-12);
  CHECK((marginal(qq, p, Side::B) - wb).norm() < 1e-12);
}

TEST_CASE("conditioning maps") {
  const CompositeSystem cc = bits();
  const ConditioningMap corr = conditioning_map(cc, vec({0.5, 0, 0, 0.5}));
  CHECK(corr.matrix.isApprox(0.5 * Matrix::Identity(2, 2)));

  const CompositeSystem qq = two_qubits();
  const ConditioningMap hat = conditioning_map(qq, coords_of(bell()));
  CHECK(max_abs(hat.matrix - 0.5 * transpose_map()) < 1e-12);

  Rng rng(12);
  const Vector wa = random_interior(qq.a, rng), wb = random_interior(qq.b, rng);
  const ConditioningMap prod = conditioning_map(qq, product_state(qq, wa, wb));
  CHECK(max_abs(prod.matrix - wb * wa.transpose()) < 1e-12);
}

TEST_CASE("conditioning map reproduces the B marginal") {
  for (const CompositeSystem& c : {two_qubits(), bits(3)}) {
    Rng rng(13);
    for (int k = 0; k < 100; ++k) {
      const Vector w = random_interior(c.joint, rng);
      const ConditioningMap hat = conditioning_map(c, w);
      CHECK((hat.matrix * c.a.unit - marginal(c, w, Side::B)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("steering examples") {
  const CompositeSystem cc = bits();
  const SteerResult r = steer(cc, vec({0.5, 0, 0, 0.5}), {vec({0.5, 0}), vec({0, 0.5})});
  REQUIRE(r.status == SteerStatus::Steered);
  CHECK((r.effects[0] - vec({1, 0})).norm() < 1e-12);
  CHECK((r.effects[1] - vec({0, 1})).norm() < 1e-12);

  const CompositeSystem qq = two_qubits();
  const Vector b = coords_of(bell());
  Rng rng(14);
  for (int k = 0; k < 10; ++k) {
    const auto parts = random_ensemble(qq.b, qs(diag(0.5, 0.5)), 3, rng);
    const SteerResult s = steer(qq, b, parts);
    REQUIRE(s.status == SteerStatus::Steered);
    CHECK(s.residual < 1e-8);
    for (std::size_t i = 0; i < 3; ++i) {
      const CMatrix expect = 2.0 * herm2().to_matrix(parts[i]).transpose();
      CHECK((s.effects[i] - qs(expect)).norm() < 1e-8);
    }
    CHECK(validate_measurement(qq.a, s.effects));
  }

  // A product state cannot steer its mixed marginal into two distinct pure parts.
  const Vector p = product_state(qq, qs(diag(1, 0)), qs(diag(0.5, 0.5)));
  const SteerResult none = steer(qq, p, {qs(diag(0.5, 0)), qs(diag(0, 0.5))});
  CHECK(none.status == SteerStatus::Infeasible);

  CHECK_THROWS_AS(steer(qq, b, {qs(diag(0.5, 0))}), PreconditionViolation);
}

TEST_CASE("steering with a singular polyhedral conditioning map") {
  const CompositeSystem cc = bits();
  const Vector w = product_state(cc, vec({1, 0}), vec({0.5, 0.5}));
  const SteerResult ok = steer(cc, w, {vec({0.25, 0.25}), vec({0.25, 0.25})});
  REQUIRE(ok.status == SteerStatus::Steered);
  CHECK(ok.method.find("exact LP") != std::string::npos);
  CHECK(validate_measurement(cc.a, ok.effects));
  CHECK(ok.residual < 1e-12);
  CHECK(steer(cc, w, {vec({0.5, 0}), vec({0, 0.5})}).status == SteerStatus::Infeasible);

  const CompositeSystem sq = make_composite(testfx::square(), testfx::square(), CompositeModel::MinTensor);
  const Vector center = vec({0, 0, 1});
  const Vector ws = product_state(sq, center, center);
  const SteerResult half = steer(sq, ws, {0.5 * center, 0.5 * center});
  CHECK(half.status == SteerStatus::Steered);
}

TEST_CASE("steering order isomorphism check") {
  const CompositeSystem qq = two_qubits();
  const AxiomVerdict bell_v = steering_order_iso_check(qq, coords_of(bell()));
  CHECK(bell_v.status == Status::Holds);
  CHECK(bell_v.certificate["ensembles_steered"] == 20);

  const CompositeSystem c3 = bits(3);
  const AxiomVerdict corr = steering_order_iso_check(c3, canonical_self_steering_state(c3));
  CHECK(corr.status == Status::Holds);

  const Vector mixed = product_state(qq, qs(diag(0.5, 0.5)), qs(diag(0.5, 0.5)));
  const AxiomVerdict prod = steering_order_iso_check(qq, mixed);
  CHECK(prod.status == Status::Fails);
  CHECK(prod.violation["rank"] == 1);

  const Vector edge = product_state(qq, qs(diag(0.5, 0.5)), qs(diag(1, 0)));
  CHECK_THROWS_AS(steering_order_iso_check(qq, edge), PreconditionViolation);
}

TEST_CASE("canonical self-steering states") {
  const CompositeSystem qq = two_qubits();
  CHECK((canonical_self_steering_state(qq) - coords_of(bell())).norm() < 1e-12);

  const CompositeSystem c3 = bits(3);
  Vector uniform = Vector::Zero(9);
  uniform(0) = uniform(4) = uniform(8) = 1.0 / 3.0;
  CHECK((canonical_self_steering_state(c3) - uniform).norm() < 1e-12);

  const System r = testfx::eja({SimpleFactor::real_sym(2)});
  const CompositeSystem rr = make_composite(r, r, CompositeModel::MaxTensor);
  const Vector w = canonical_self_steering_state(rr);
  CHECK(joint_membership(rr, w) == JointMembership::AcceptedSampled);
  CHECK(max_abs(conditioning_map(rr, w).matrix - 0.5 * Matrix::Identity(3, 3)) < 1e-12);
  CHECK(steering_order_iso_check(rr, w).status == Status::Holds);

  const System qq2 = testfx::eja({SimpleFactor::complex_herm(2), SimpleFactor::complex_herm(2)});
  const CompositeSystem sum = make_composite(qq2, qq2, CompositeModel::MaxTensor);
  CHECK_THROWS_AS(canonical_self_steering_state(sum), PreconditionViolation);
}

TEST_CASE("max tensor rejects a negative element") {
  const System r = testfx::eja({SimpleFactor::real_sym(2)});
  const CompositeSystem rr = make_composite(r, r, CompositeModel::MaxTensor);
  Vector w = canonical_self_steering_state(rr);
  CHECK(joint_membership(rr, -w) == JointMembership::Rejected);
}

TEST_CASE("purity preservation") {
  const CompositeSystem qq = two_qubits();
  CVector plus(2);
  plus << 1, 1;
  CHECK(purity_preservation_check(qq, qs(diag(1, 0)), qs(projector(plus))));
  CHECK(purity_preservation_check(bits(), vec({1, 0}), vec({0, 1})));

  const CompositeSystem sq = make_composite(testfx::square(), testfx::square(), CompositeModel::MinTensor);
  for (const auto& x : testfx::square_rays())
    for (const auto& y : testfx::square_rays()) CHECK(purity_preservation_check(sq, to_double(x), to_double(y)));

  CHECK_THROWS_AS(purity_preservation_check(qq, qs(diag(0.5, 0.5)), qs(diag(1, 0))), PreconditionViolation);
  const System r = testfx::eja({SimpleFactor::real_sym(2)});
  const CompositeSystem rr = make_composite(r, r, CompositeModel::MaxTensor);
  const Vector p = SimpleFactor::real_sym(2).from_matrix(diag(1, 0));
  CHECK_THROWS_AS(purity_preservation_check(rr, p, p), Unsupported);
}

TEST_CASE("frames tensor to frames") {
  for (const CompositeSystem& c : {two_qubits(), bits(3)}) {
    std::vector<Vector> states, effects;
    if (c.a.cone.kind() == ConeKind::Eja) {
      const Frame f = canonical_frame(herm2());
      states = f.states;
      effects = f.effects;
    } else {
      for (Eigen::Index i = 0; i < 3; ++i) {
        states.push_back(Vector::Unit(3, i));
        effects.push_back(Vector::Unit(3, i));
      }
    }
    Vector total = Vector::Zero(static_cast<Eigen::Index>(c.dim()));
    for (std::size_t i = 0; i < states.size(); ++i)
      for (std::size_t j = 0; j < states.size(); ++j) {
        total += product_effect(c, effects[i], effects[j]);
        for (std::size_t k = 0; k < states.size(); ++k)
          for (std::size_t l = 0; l < states.size(); ++l) {
            const double v = product_state(c, states[i], states[j]).dot(product_effect(c, effects[k], effects[l]));
            CHECK(v == (i == k && j == l ? 1.0 : 0.0));
          }
      }
    CHECK(total == c.joint.unit);
  }
}

TEST_CASE("pure two-qubit states with a pure marginal are products") {
  const CompositeSystem qq = two_qubits();
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    const CVector a = gaussian_cvector(2, rng), b = gaussian_cvector(2, rng);
    CVector psi(4);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) psi(i * 2 + j) = a(i) * b(j);
    const Vector w = coords_of(projector(psi));
    REQUIRE(is_extremal_ray(qq.joint.cone, w));
    const Vector ma = marginal(qq, w, Side::A);
    REQUIRE(is_extremal_ray(qq.a.cone, ma));
    CHECK((w - product_state(qq, ma, marginal(qq, w, Side::B))).norm() < 1e-9);
  }
}

TEST_CASE("steered measurements reproduce their ensembles") {
  Rng rng(22);
  for (const CompositeSystem& c : {two_qubits(), bits(3)}) {
    const Vector w = canonical_self_steering_state(c);
    const Vector wb = marginal(c, w, Side::B);
    for (int k = 0; k < 10; ++k) {
      const auto parts = random_ensemble(c.b, wb, 2 + static_cast<std::size_t>(k % 3), rng);
      const SteerResult r = steer(c, w, parts);
      REQUIRE(r.status == SteerStatus::Steered);
      CHECK(validate_measurement(c.a, r.effects));
      const ConditioningMap hat = conditioning_map(c, w);
      for (std::size_t i = 0; i < parts.size(); ++i) CHECK((hat.matrix * r.effects[i] - parts[i]).norm() < 1e-8);
    }
  }
}
