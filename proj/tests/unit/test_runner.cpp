#include <doctest.h>

#include "conelab/errors.hpp"
#include "conelab/json_util.hpp"
#include "conelab/runner.hpp"

using namespace conelab;

namespace {

const CheckResult& result(const Report& r, const std::string& fixture, const std::string& check) {
  for (const auto& f : r.fixtures)
    if (f.name == fixture)
      for (const auto& c : f.checks)
        if (c.check == check) return c;
  throw PreconditionViolation("no result for " + fixture + " / " + check);
}

CheckOptions seeded(std::uint64_t seed) {
  CheckOptions o;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("builtin registry with seed 7 meets every expectation") {
  const Report r = run_checks(builtin_fixtures(), seeded(7));
  for (const auto& f : r.fixtures) {
    CHECK_MESSAGE(f.error.empty(), f.name << ": " << f.error);
    for (const auto& c : f.checks) CHECK_MESSAGE(!c.mismatch(), f.name << " " << c.check << " " << status_name(c.status));
  }
  CHECK(r.ok());
  CHECK(result(r, "shared-corner", "homogeneous").status == Status::Holds);
  CHECK(result(r, "shared-corner", "pure-transitive").status == Status::Fails);
  CHECK(result(r, "shared-corner", "pure-transitive").verdict.violation["invariant"] == "face profile");

  const auto j = r.to_json();
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["seed"] == 7);
  CHECK(j["summary"]["ok"] == true);
  CHECK(j["summary"]["mismatches"].empty());
}

TEST_CASE("verdict payloads allow re-verification") {
  CheckOptions o = seeded(7);
  o.checks = parse_check_list("self-dual,weak-self-dual");
  const Registry reg = builtin_fixtures();
  const Report r = run_checks(reg, o);

  // The pentagon's inner product is in the report as an exact map.
  const auto j = r.to_json();
  for (const auto& f : j["fixtures"]) {
    if (f["name"] != "pentagon-cone") continue;
    const auto& sd = f["checks"][0];
    CHECK(sd["status"] == "holds");
    const Registry again = parse_registry(R"({"fixtures": [{"name": "p", "kind": "polyhedral",
      "generators": [[2, 0, 1], [1, 2, 1], [-1, 2, 1], [-2, 0, 1], [0, -2, 1]]}]})");
    const auto cone = build_fixture(again, again.fixtures[0]).main().cone.polyhedral_cone();
    RMatrix g(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 3; ++k) g(i, k) = rational_from_json(sd["certificate"]["map"][i][k]);
    CHECK(verify_duality_map(cone, g, true));
  }
  // The square's weak map likewise.
  const auto& weak = result(r, "square-cone", "weak-self-dual");
  REQUIRE(weak.verdict.certificate.contains("map"));
  CHECK(weak.verdict.certificate["outcome"] == "found");
}

TEST_CASE("expectation mismatch is reported") {
  const Registry reg = parse_registry(R"({"fixtures": [
      {"name": "qubit", "kind": "eja", "summands": [{"family": "ComplexHerm", "rank": 2}],
       "expect": {"self-dual": false}}]})");
  const Report r = run_checks(reg, seeded(7));
  CHECK_FALSE(r.ok());
  CHECK(r.mismatches() == 1);
  const auto j = r.to_json();
  REQUIRE(j["summary"]["mismatches"].size() == 1);
  CHECK(j["summary"]["mismatches"][0]["fixture"] == "qubit");
  CHECK(j["summary"]["mismatches"][0]["check"] == "self-dual");
  CHECK(j["summary"]["mismatches"][0]["expected"] == "fails");
  CHECK(j["summary"]["mismatches"][0]["got"] == "holds");
  CHECK(r.to_text().find("mismatch: qubit self-dual: expected fails, got holds") != std::string::npos);
}

TEST_CASE("empty registry gives an empty report") {
  const Report r = run_checks(Registry{}, seeded(7));
  CHECK(r.ok());
  CHECK(r.fixtures.empty());
  CHECK(r.to_json()["fixtures"].empty());
}

TEST_CASE("skipped and unsupported never count as mismatches") {
  CheckResult c;
  c.check = "steering";
  c.expected = std::vector<Status>{Status::Holds};
  c.status = Status::Skipped;
  CHECK_FALSE(c.mismatch());
  c.status = Status::Unsupported;
  CHECK_FALSE(c.mismatch());
  c.status = Status::Inconclusive;
  CHECK(c.mismatch());
  c.status = Status::Holds;
  CHECK_FALSE(c.mismatch());
  c.status = Status::Unsupported;
  c.error = true;
  CHECK(c.mismatch());

  // Composite-only checks on a plain system are skipped with a notice.
  const Registry reg = builtin_fixtures();
  const BuiltFixture q = build_fixture(reg, *reg.find("qubit"));
  const CheckResult s = run_check(q, "steering", 1, kSpectralTol);
  CHECK(s.status == Status::Skipped);
  CHECK_FALSE(s.notice.empty());
}

TEST_CASE("check selection") {
  CHECK(parse_check_list("all") == all_checks());
  CHECK(parse_check_list("") == all_checks());
  CHECK(parse_check_list("reducible,self-dual") == std::vector<std::string>{"self-dual", "reducible"});
  CHECK_THROWS_AS(parse_check_list("self-dual,purity"), ParseError);
  CheckOptions o;
  o.checks = {"bogus"};
  CHECK_THROWS_AS(run_checks(builtin_fixtures(), o), ParseError);
}

TEST_CASE("reports are byte-stable and independent of the job count") {
  Registry reg;
  const Registry all = builtin_fixtures();
  for (const char* n : {"qubit", "square-cone", "shared-corner", "bit-bit", "qubit+rebit"})
    reg.fixtures.push_back(*all.find(n));
  CheckOptions o = seeded(11);
  const std::string one = run_checks(reg, o).to_json().dump(2);
  o.jobs = 3;
  const std::string three = run_checks(reg, o).to_json().dump(2);
  CHECK(one == three);
  CHECK(run_checks(reg, o).to_json().dump(2) == one);
  CHECK(one.find("elapsed_ms") == std::string::npos);
  o.timings = true;
  CHECK(run_checks(reg, o).to_json().dump(2).find("elapsed_ms") != std::string::npos);
}

TEST_CASE("fixture seeds depend on the run seed and the fixture") {
  FixtureSpec a, b;
  a.name = "a";
  b.name = "b";
  CHECK(fixture_seed(1, a) == fixture_seed(1, a));
  CHECK(fixture_seed(1, a) != fixture_seed(2, a));
  CHECK(fixture_seed(1, a) != fixture_seed(1, b));
  b.name = "a";
  b.seed = 5;
  CHECK(fixture_seed(1, a) != fixture_seed(1, b));
}
