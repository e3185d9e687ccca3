#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "conelab/axioms.hpp"
#include "conelab/errors.hpp"
#include "support/eja_helpers.hpp"
#include "support/systems.hpp"

using namespace conelab;
using testfx::vec;

namespace {

Vector normalized(const System& s, const Vector& x) { return x / s.unit.dot(x); }

std::vector<Vector> pure_rays(const System& s) {
  std::vector<Vector> out;
  for (const auto& r : s.cone.polyhedral_cone().rays()) out.push_back(normalized(s, to_double(r)));
  return out;
}

std::map<std::string, std::size_t> outcome_counts(const DualitySearch& d) {
  std::map<std::string, std::size_t> counts;
  for (const auto& b : d.bijections) ++counts[b.outcome];
  return counts;
}

// T sends every ray to a positive multiple of a distinct facet normal.
bool maps_rays_onto_facets(const PolyhedralCone& c, const RMatrix& t) {
  std::vector<bool> used(c.facets().size(), false);
  for (const auto& r : c.rays()) {
    const RVector img = t * r;
    bool hit = false;
    for (std::size_t f = 0; f < c.facets().size() && !hit; ++f)
      if (!used[f] && positively_parallel(img, c.facets()[f])) used[f] = hit = true;
    if (!hit) return false;
  }
  return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

bool symmetric_pd(const RMatrix& t) {
  if (!(t == t.transpose())) return false;
  for (std::size_t k = 1; k <= t.rows(); ++k) {
    RMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = t(i, j);
    if (determinant(lead) <= 0) return false;
  }
  return true;
}

System qubit_qubit() { return testfx::eja({SimpleFactor::complex_herm(2), SimpleFactor::complex_herm(2)}); }
System qubit_rebit() { return testfx::eja({SimpleFactor::complex_herm(2), SimpleFactor::real_sym(2)}); }

Vector qubit_state(const CMatrix& m) { return SimpleFactor::complex_herm(2).from_matrix(m); }

}  // namespace

// Frozen values below come from tests/oracles/self_duality_oracle.py.

TEST_CASE("self-duality examples") {
  const System q = testfx::qubit();
  CHECK(check_self_dual(q, q.cone.algebra().gram()).status == Status::Holds);
  CHECK(check_self_dual(testfx::simplex(3), Matrix::Identity(3, 3)).status == Status::Holds);
  const AxiomVerdict sq = check_self_dual(testfx::square(), Matrix::Identity(3, 3));
  CHECK(sq.status == Status::Fails);
  CHECK_FALSE(sq.violation.is_null());
  CHECK_THROWS_AS(check_self_dual(q, -Matrix::Identity(4, 4)), PreconditionViolation);
}

TEST_CASE("shared corner self-duality is only sampled") {
  const AxiomVerdict v = check_self_dual(testfx::corner(), Matrix::Identity(5, 5));
  CHECK(v.status != Status::Holds);
}

TEST_CASE("square SPD search is exhaustively infeasible") {
  const PolyhedralCone c(testfx::square_rays());
  SearchOptions all;
  all.use_incidence = false;
  const DualitySearch d = search_spd_self_duality(c, all);
  CHECK(d.outcome == SearchOutcome::Infeasible);
  CHECK(d.total_bijections == 24);
  CHECK(d.bijections.size() == 24);
  const auto counts = outcome_counts(d);
  CHECK(counts.at("no-solution") == 20);
  CHECK(counts.at("indefinite") == 4);
  CHECK_FALSE(d.map);

  const DualitySearch pruned = search_spd_self_duality(c);
  CHECK(pruned.outcome == SearchOutcome::Infeasible);
  CHECK(pruned.bijections.size() + pruned.pruned_by_incidence == 24);
}

TEST_CASE("square weak self-duality finds an exact map") {
  const PolyhedralCone c(testfx::square_rays());
  const DualitySearch d = search_weak_self_duality(c);
  REQUIRE(d.outcome == SearchOutcome::Found);
  REQUIRE(d.map);
  CHECK(maps_rays_onto_facets(c, *d.map));
  CHECK(determinant(*d.map) != 0);
  CHECK(verify_duality_map(c, *d.map, false));
  CHECK_FALSE(verify_duality_map(c, *d.map, true));
}

TEST_CASE("simplicial cones are SPD self-dual") {
  for (std::size_t n : {2, 3, 4}) {
    const PolyhedralCone c(testfx::orthant_rays(n));
    const DualitySearch d = search_spd_self_duality(c);
    REQUIRE(d.outcome == SearchOutcome::Found);
    CHECK(symmetric_pd(*d.map));
    CHECK(maps_rays_onto_facets(c, *d.map));
    const DualitySearch w = search_weak_self_duality(c);
    REQUIRE(w.outcome == SearchOutcome::Found);
    CHECK(maps_rays_onto_facets(c, *w.map));
  }
}

TEST_CASE("pentagon fixture is SPD self-dual") {
  const PolyhedralCone c(testfx::pentagon_rays());
  SearchOptions all;
  all.use_incidence = false;
  const DualitySearch d = search_spd_self_duality(c, all);
  REQUIRE(d.outcome == SearchOutcome::Found);
  CHECK(symmetric_pd(*d.map));
  CHECK(maps_rays_onto_facets(c, *d.map));
  CHECK(verify_duality_map(c, *d.map, true));
}

TEST_CASE("hexagon fixture is weakly but not strongly self-dual") {
  const PolyhedralCone c(testfx::hexagon_rays());
  SearchOptions all;
  all.use_incidence = false;
  const DualitySearch d = search_spd_self_duality(c, all);
  CHECK(d.outcome == SearchOutcome::Infeasible);
  CHECK(d.bijections.size() == 720);
  const auto counts = outcome_counts(d);
  CHECK(counts.at("no-solution") == 714);
  CHECK(counts.at("indefinite") == 6);
  const DualitySearch w = search_weak_self_duality(c);
  REQUIRE(w.outcome == SearchOutcome::Found);
  CHECK(maps_rays_onto_facets(c, *w.map));
}

TEST_CASE("bipyramid has no weak self-duality") {
  const PolyhedralCone c(testfx::bipyramid_rays());
  CHECK(c.rays().size() != c.facets().size());
  CHECK(search_weak_self_duality(c).outcome == SearchOutcome::Infeasible);
  CHECK(search_spd_self_duality(c).outcome == SearchOutcome::Infeasible);
}

TEST_CASE("search cap") {
  std::vector<RVector> rays;
  for (long t = 0; t < 13; ++t) rays.push_back(testfx::rv({t, t * t, 1}));
  const PolyhedralCone c(rays);
  REQUIRE(c.rays().size() == 13);
  const DualitySearch d = search_spd_self_duality(c);
  CHECK(d.outcome == SearchOutcome::SearchSpaceExceeded);
  CHECK_FALSE(d.note.empty());
}

TEST_CASE("homogeneity witness examples") {
  const System q = testfx::qubit();
  CMatrix r(2, 2), s(2, 2);
  r << 0.5, 0, 0, 0.5;
  s << 0.75, 0, 0, 0.25;
  const PositiveMap phi = homogeneity_witness(q, qubit_state(r), qubit_state(s));
  CHECK((phi.matrix * qubit_state(r) - qubit_state(s)).norm() < 1e-12);
  // Phi(A) = 2 sqrt(sigma) A sqrt(sigma).
  CMatrix root(2, 2);
  root << std::sqrt(0.75), 0, 0, 0.5;
  Rng rng(1);
  for (int k = 0; k < 5; ++k) {
    const Vector a = gaussian_vector(4, rng);
    const CMatrix expect = 2.0 * root * SimpleFactor::complex_herm(2).to_matrix(a) * root;
    CHECK((phi.matrix * a - qubit_state(expect)).norm() < 1e-10);
  }

  const System c = testfx::corner();
  const Vector sigma = vec({4, 2, 2, 2, 2});
  const PositiveMap m = homogeneity_witness(c, shared_corner::basepoint(), sigma);
  CHECK((m.matrix * shared_corner::basepoint() - sigma).norm() < 1e-9);
  CHECK(is_order_isomorphism(m).holds);

  for (const SimpleFactor& f : testfx::all_simple_factors()) {
    const System e = testfx::eja({f});
    const Vector u = e.cone.algebra().unit() / static_cast<double>(f.rank());
    const PositiveMap id = homogeneity_witness(e, u, u);
    CHECK(max_abs(id.matrix - Matrix::Identity(id.matrix.rows(), id.matrix.cols())) < 1e-10);
  }

  CHECK_THROWS_AS(homogeneity_witness(testfx::square(), vec({0, 0, 1}), vec({0.1, 0, 1})), Unsupported);
  CHECK_THROWS_AS(homogeneity_witness(c, shared_corner::corner_ray(2), sigma), PreconditionViolation);
}

TEST_CASE("homogeneity verdicts") {
  CHECK(check_homogeneous(testfx::qubit()).status == Status::Holds);
  CHECK(check_homogeneous(testfx::corner()).status == Status::Holds);
  CHECK(check_homogeneous(testfx::simplex(3)).status == Status::Holds);
  const AxiomVerdict sq = check_homogeneous(testfx::square());
  CHECK(sq.status == Status::Fails);
  CHECK(stabilizer_algebra_dim(PolyhedralCone(testfx::square_rays())) == 1);
  CHECK(stabilizer_algebra_dim(PolyhedralCone(testfx::orthant_rays(3))) == 3);
}

TEST_CASE("every simple Jordan cone is self-dual and homogeneous on random pairs") {
  for (const SimpleFactor& f : testfx::all_simple_factors()) {
    CAPTURE(f.describe());
    const System e = testfx::eja({f});
    CHECK(check_self_dual(e, e.cone.algebra().gram()).status == Status::Holds);
    Rng rng(31);
    for (int k = 0; k < 50; ++k) {
      const Vector rho = random_interior(e, rng);
      const Vector sigma = random_interior(e, rng);
      const PositiveMap phi = homogeneity_witness(e, rho, sigma);
      CHECK((phi.matrix * rho - sigma).norm() < 1e-8 * std::max(1.0, sigma.norm()));
      if (k < 5) CHECK(is_order_isomorphism(phi, kWitnessTol, 60, static_cast<std::uint64_t>(k)).holds);
    }
  }
}

TEST_CASE("shared corner is homogeneous on random pairs but not pure transitive") {
  const System c = testfx::corner();
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const Vector rho = random_interior(c, rng);
    const Vector sigma = random_interior(c, rng);
    const PositiveMap phi = homogeneity_witness(c, rho, sigma);
    CHECK((phi.matrix * rho - sigma).norm() < 1e-9 * std::max(1.0, sigma.norm()));
  }
  const Vector w1 = normalized(c, shared_corner::corner_ray(2));
  const Vector w2 = normalized(c, shared_corner::generic_ray(0, 0));
  CHECK(face_profile(c, w1) == 3);
  CHECK(face_profile(c, w2) == 5);
  const AxiomVerdict v = pure_transitivity_witness(c, w1, w2);
  CHECK(v.status == Status::Fails);
  CHECK(v.violation["invariant"] == "face profile");
  CHECK(check_pure_transitive(c).status == Status::Fails);
}

TEST_CASE("probabilistic inverse of homogeneity witnesses") {
  Rng rng(9);
  for (const System& s : {testfx::qubit(), testfx::eja({SimpleFactor::spin(4)}), testfx::corner()}) {
    for (int k = 0; k < 5; ++k) {
      const PositiveMap phi = homogeneity_witness(s, random_interior(s, rng), random_interior(s, rng));
      const Reversibility r = probabilistic_inverse(phi, static_cast<std::uint64_t>(k));
      CHECK(r.p > 0.0);
      CHECK(r.residual < 1e-8);
    }
  }
}

TEST_CASE("pure transitivity examples") {
  const System q = testfx::qubit();
  CMatrix a(2, 2), b(2, 2);
  a << 1, 0, 0, 0;
  b << 0.5, 0.5, 0.5, 0.5;
  const AxiomVerdict v = pure_transitivity_witness(q, qubit_state(a), qubit_state(b));
  REQUIRE(v.status == Status::Holds);
  REQUIRE(v.witness);
  CHECK((*v.witness * qubit_state(a) - qubit_state(b)).norm() < 1e-10);
  const PositiveMap phi{*v.witness, q, q, true};
  CHECK(is_order_isomorphism(phi).holds);

  const System qr = qubit_rebit();
  Rng rng(2);
  const Vector w1 = qr.cone.algebra().random_pure_in(0, rng);
  const Vector w2 = qr.cone.algebra().random_pure_in(1, rng);
  const AxiomVerdict cross = pure_transitivity_witness(qr, w1, w2);
  CHECK(cross.status == Status::Fails);
  CHECK(cross.violation["invariant"] == "summand type");

  CHECK_THROWS_AS(pure_transitivity_witness(q, q.cone.algebra().unit() / 2.0, qubit_state(b)), PreconditionViolation);
}

TEST_CASE("pure transitivity of identical summands") {
  const System qq = qubit_qubit();
  const auto& alg = qq.cone.algebra();
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const Vector w1 = alg.random_pure_in(static_cast<std::size_t>(k % 2), rng);
    const Vector w2 = alg.random_pure_in(static_cast<std::size_t>((k / 2) % 2), rng);
    const AxiomVerdict v = pure_transitivity_witness(qq, w1, w2);
    REQUIRE(v.status == Status::Holds);
    CHECK((*v.witness * w1 - w2).norm() < 1e-8);
    // Normalized witness keeps random base points on the base.
    for (int j = 0; j < 20 && k < 3; ++j) {
      const Vector x = normalized(qq, random_interior(qq, rng));
      CHECK(std::abs(qq.unit.dot(*v.witness * x) - 1.0) < 1e-8);
    }
  }
  CHECK(check_pure_transitive(qq).status == Status::Holds);
  CHECK(check_pure_transitive(qubit_rebit()).status == Status::Fails);
}

TEST_CASE("pure transitivity of polyhedral fixtures") {
  CHECK(check_pure_transitive(testfx::square()).status == Status::Holds);
  CHECK(check_pure_transitive(testfx::simplex(3)).status == Status::Holds);
  CHECK(check_pure_transitive(testfx::polygon(testfx::hexagon_rays(), "hexagon")).status == Status::Holds);
  const AxiomVerdict pent = check_pure_transitive(testfx::polygon(testfx::pentagon_rays(), "pentagon"));
  CHECK(pent.status == Status::Fails);
  CHECK(pent.violation["group_order"] == 2);

  const System sq = testfx::square();
  const auto rays = pure_rays(sq);
  for (const Vector& w1 : rays)
    for (const Vector& w2 : rays) {
      const AxiomVerdict v = pure_transitivity_witness(sq, w1, w2);
      REQUIRE(v.status == Status::Holds);
      CHECK((*v.witness * w1 - w2).norm() < 1e-12);
    }
}

TEST_CASE("square automorphisms form the dihedral group") {
  const auto group = polyhedral_automorphisms(PolyhedralCone(testfx::square_rays()), vec({0, 0, 1}));
  REQUIRE(group);
  CHECK(group->size() == 8);
}

TEST_CASE("continuous pure transitivity examples") {
  const System q = testfx::qubit();
  Rng rng(6);
  const auto ps = pure_states(q, 2, rng);
  const PurePath path = continuous_pure_transitivity(q, ps[0], ps[1], 16);
  REQUIRE(path.status == Status::Holds);
  REQUIRE(path.states.size() == 17);
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    CHECK(is_extremal_ray(q.cone, path.states[k]));
    CHECK((path.maps[k] * ps[0] - path.states[k]).norm() < 1e-10);
  }
  CHECK((path.states.back() - ps[1]).norm() < 1e-8);

  const System spin = testfx::eja({SimpleFactor::spin(4)});
  const Vector p = normalized(spin, vec({1, 1, 0, 0}));
  const Vector m = normalized(spin, vec({1, -1, 0, 0}));
  const PurePath arc = continuous_pure_transitivity(spin, p, m, 8);
  REQUIRE(arc.status == Status::Holds);
  for (const Vector& s : arc.states) {
    CHECK(is_extremal_ray(spin.cone, s));
    CHECK(std::abs(spin.unit.dot(s) - 1.0) < 1e-10);
  }

  const System qq = qubit_qubit();
  const Vector w1 = qq.cone.algebra().random_pure_in(0, rng);
  const Vector w2 = qq.cone.algebra().random_pure_in(1, rng);
  const PurePath blocked = continuous_pure_transitivity(qq, w1, w2, 8);
  CHECK(blocked.status == Status::Fails);
  CHECK(blocked.obstruction.find("intersecting only in {0}") != std::string::npos);
  CHECK(pure_transitivity_witness(qq, w1, w2).status == Status::Holds);

  const auto rays = pure_rays(testfx::square());
  CHECK(continuous_pure_transitivity(testfx::square(), rays[0], rays[1], 4).status == Status::Fails);
  CHECK_THROWS_AS(continuous_pure_transitivity(q, ps[0], ps[1], 0), PreconditionViolation);
}

TEST_CASE("continuous pure transitivity verdicts") {
  for (const SimpleFactor& f : testfx::all_simple_factors()) {
    CAPTURE(f.describe());
    CHECK(check_continuous_pure_transitive(testfx::eja({f})).status == Status::Holds);
  }
  CHECK(check_continuous_pure_transitive(qubit_qubit()).status == Status::Fails);
  CHECK(check_continuous_pure_transitive(qubit_rebit()).status == Status::Fails);
  CHECK(check_continuous_pure_transitive(testfx::simplex(3)).status == Status::Fails);
  CHECK(check_continuous_pure_transitive(testfx::corner()).status == Status::Fails);
}

TEST_CASE("reducibility") {
  CHECK(check_reducible(qubit_qubit()).status == Status::Holds);
  CHECK(check_reducible(testfx::qubit()).status == Status::Fails);
  const AxiomVerdict s3 = check_reducible(testfx::simplex(3));
  CHECK(s3.status == Status::Holds);
  CHECK(s3.certificate["components"].size() == 3);
  CHECK(check_reducible(testfx::square()).status == Status::Fails);
  CHECK(check_reducible(testfx::polygon(testfx::pentagon_rays(), "pentagon")).status == Status::Fails);
  CHECK(check_reducible(testfx::corner()).status == Status::Fails);

  // A square cone summed with a ray splits into two components.
  const std::vector<RVector> rays = {testfx::rv({1, 1, 1, 0}), testfx::rv({-1, 1, 1, 0}), testfx::rv({-1, -1, 1, 0}), testfx::rv({1, -1, 1, 0}),
          testfx::rv({0, 0, 0, 1})};
  const System split = make_system(ConeModel::polyhedral(rays), vec({0, 0, 1, 1}), "square+ray");
  const AxiomVerdict v = check_reducible(split);
  CHECK(v.status == Status::Holds);
  CHECK(v.certificate["components"].size() == 2);
}

TEST_CASE("classical effects") {
  const System qq = qubit_qubit();
  Vector e = qq.unit;
  e.tail(4).setZero();
  CHECK(classical_effect_test(qq, e));
  CHECK(classical_effect_test(qq, qq.unit));

  const System q = testfx::qubit();
  CMatrix d(2, 2);
  d << 1, 0, 0, 0;
  CHECK_FALSE(classical_effect_test(q, qubit_state(d)));
  CHECK(classical_effect_test(q, q.unit));

  CHECK(classical_effect_test(testfx::simplex(3), vec({1, 0, 0})));
  // Sharp on the vertices of the square, though the square is irreducible.
  CHECK(classical_effect_test(testfx::square(), vec({0.5, 0, 0.5})));
  CHECK_FALSE(classical_effect_test(testfx::square(), vec({0.25, 0.25, 0.5})));
  CHECK(classical_effect_test(testfx::square(), vec({0, 0, 1})));
  CHECK(classical_effect_test(testfx::corner(), shared_corner::unit()));
  CHECK_THROWS_AS(classical_effect_test(q, 2.0 * q.unit), PreconditionViolation);
}
