#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conelab/registry.hpp"

namespace conelab {

/// Every check name, in report order.
const std::vector<std::string>& all_checks();
/// Comma-separated check names; "all" or an empty string selects every check.
/// Unknown names raise ParseError.
std::vector<std::string> parse_check_list(const std::string& text);

struct CheckOptions {
  std::vector<std::string> checks = all_checks();
  std::uint64_t seed = 0;
  double tol = kSpectralTol;  ///< spectral membership tolerance; witness checks keep kWitnessTol
  std::size_t jobs = 1;
  bool timings = false;  ///< wall-clock fields make reports differ between runs, so they are opt-in
};

struct CheckResult {
  std::string check;
  Status status = Status::Skipped;
  std::string notice;
  AxiomVerdict verdict;
  std::optional<std::vector<Status>> expected;
  bool error = false;  ///< the check threw something other than Unsupported
  double elapsed_ms = 0.0;

  /// Skipped and unsupported results never count as mismatches.
  bool mismatch() const;
};

struct FixtureReport {
  std::string name;
  std::string kind;
  std::string description;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::string error;  ///< construction failure
  std::vector<CheckResult> checks;
  double elapsed_ms = 0.0;

  std::size_t mismatches() const;
};

struct Report {
  std::uint64_t seed = 0;
  double tol = kSpectralTol;
  bool timings = false;
  std::vector<std::string> checks;
  std::vector<FixtureReport> fixtures;

  std::size_t mismatches() const;
  bool ok() const { return mismatches() == 0; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Seed for one fixture, mixed from the run seed, its name and its own seed.
std::uint64_t fixture_seed(std::uint64_t run_seed, const FixtureSpec& spec);

/// One check on one built fixture.
CheckResult run_check(const BuiltFixture& fx, const std::string& check, std::uint64_t seed, double tol);

/// Checks every fixture, in parallel up to opts.jobs; the report order is the
/// registry order regardless of scheduling.
Report run_checks(const Registry& registry, const CheckOptions& opts);

}  // namespace conelab
