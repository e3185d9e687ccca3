#include <doctest.h>

#include <random>

#include "conelab/errors.hpp"
#include "conelab/polyhedral.hpp"
#include "oracles/polyhedral_oracle.hpp"
#include "support/fixtures.hpp"

using namespace conelab;
using testfx::rv;

namespace {

std::vector<Eigen::VectorXd> as_double(const std::vector<RVector>& rays) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& r : rays) out.push_back(to_double(r));
  return out;
}

}  // namespace

TEST_CASE("square cone facets") {
  PolyhedralCone c(testfx::square_rays());
  CHECK(c.rays().size() == 4);
  CHECK(c.full_dimensional());
  CHECK(c.pointed());
  CHECK_FALSE(c.simplicial());
  const std::vector<RVector> expected{rv({-1, 0, 1}), rv({0, -1, 1}), rv({0, 1, 1}), rv({1, 0, 1})};
  CHECK(c.facets() == expected);
  for (std::size_t f = 0; f < 4; ++f) CHECK(c.rays_on_facet(f).size() == 2);
}

TEST_CASE("membership on the square cone") {
  PolyhedralCone c(testfx::square_rays());
  CHECK(c.contains(rv({0, 0, 1})));
  CHECK(c.contains(rv({1, 0, 1})));
  CHECK_FALSE(c.contains(rv({2, 0, 1})));
  CHECK_FALSE(c.contains(rv({0, 0, -1})));
  CHECK(c.face_dimension(rv({0, 0, 1})) == 3);
  CHECK(c.face_dimension(rv({1, 0, 1})) == 2);
  CHECK(c.face_dimension(rv({1, 1, 1})) == 1);
  CHECK(c.face_dimension(rv({0, 0, 0})) == 0);
  CHECK_THROWS_AS(c.face_rays(rv({5, 0, 1})), PreconditionViolation);
}

TEST_CASE("redundant and parallel generators are removed") {
  auto gens = testfx::square_rays();
  gens.push_back(rv({0, 0, 1}));
  gens.push_back(rv({2, 2, 2}));
  PolyhedralCone c(gens);
  CHECK(c.rays().size() == 4);
  CHECK(c.generators().size() == 6);
}

TEST_CASE("non-full-dimensional and non-pointed inputs are flagged") {
  PolyhedralCone flat({rv({1, 0, 0}), rv({0, 1, 0})});
  CHECK_FALSE(flat.full_dimensional());
  CHECK(flat.facets().empty());
  CHECK(flat.face_dimension(rv({1, 1, 0})) == 2);
  PolyhedralCone line({rv({1, 0}), rv({-1, 0}), rv({0, 1})});
  CHECK_FALSE(line.pointed());
  CHECK_THROWS_AS(PolyhedralCone({rv({0, 0})}), PreconditionViolation);
  CHECK_THROWS_AS(PolyhedralCone({rv({1, 0}), rv({1, 0, 0})}), DimensionMismatch);
}

TEST_CASE("facet counts of the test polytopes") {
  CHECK(PolyhedralCone(testfx::pentagon_rays()).facets().size() == 5);
  CHECK(PolyhedralCone(testfx::hexagon_rays()).facets().size() == 6);
  CHECK(PolyhedralCone(testfx::bipyramid_rays()).facets().size() == 6);
  CHECK(PolyhedralCone(testfx::orthant_rays(4)).simplicial());
}

TEST_CASE("exact paths agree with the floating-point facet oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (const auto& rays : {testfx::square_rays(), testfx::pentagon_rays(), testfx::hexagon_rays(),
                           testfx::bipyramid_rays(), testfx::orthant_rays(3)}) {
    PolyhedralCone c(rays);
    const auto h = oracle::enumerate_facets(as_double(rays));
    REQUIRE(h.facets.size() == c.facets().size());
    const auto n = c.dim();
    // Random lattice points plus ray and edge midpoints exercise boundary cases.
    std::vector<RVector> points;
    for (int t = 0; t < 200; ++t) {
      RVector x(n);
      for (auto& v : x) v = coord(rng);
      points.push_back(x);
    }
    for (std::size_t i = 0; i < rays.size(); ++i)
      for (std::size_t j = i; j < rays.size(); ++j) points.push_back(add(rays[i], rays[j]));
    for (const auto& x : points) {
      const bool inside = c.contains(x);
      CHECK(inside == oracle::contains(h, to_double(x)));
      if (inside) CHECK(static_cast<int>(c.face_dimension(x)) == oracle::face_dimension(h, to_double(x)));
    }
  }
}

TEST_CASE("known double description matches enumeration") {
  for (const auto& rays : {testfx::square_rays(), testfx::pentagon_rays(), testfx::bipyramid_rays()}) {
    const PolyhedralCone enumerated(rays);
    const PolyhedralCone given = PolyhedralCone::from_rays_and_facets(enumerated.rays(), enumerated.facets());
    CHECK(given.rays() == enumerated.rays());
    CHECK(given.facets() == enumerated.facets());
    CHECK(given.full_dimensional());
    CHECK(given.pointed());
    CHECK(given.facet_margin(to_double(rays[0])) == doctest::Approx(0.0));
  }
  const PolyhedralCone sq(testfx::square_rays());
  // A facet normal that is negative on a ray.
  auto bad = sq.facets();
  bad[0] = rv({1, 0, -1});
  CHECK_THROWS_AS(PolyhedralCone::from_rays_and_facets(sq.rays(), bad), PreconditionViolation);
  // A valid inequality that is not a facet.
  auto loose = sq.facets();
  loose.push_back(rv({0, 0, 1}));
  CHECK_THROWS_AS(PolyhedralCone::from_rays_and_facets(sq.rays(), loose), PreconditionViolation);
  // A non-extremal ray.
  auto extra = sq.rays();
  extra.push_back(rv({0, 0, 1}));
  CHECK_THROWS_AS(PolyhedralCone::from_rays_and_facets(extra, sq.facets()), PreconditionViolation);
}
