#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "conelab/axioms.hpp"
#include "conelab/composite.hpp"

namespace conelab {

inline constexpr int kSchemaVersion = 1;

enum class FixtureKind { Eja, Polyhedral, SharedCorner, Composite };
std::string fixture_kind_name(FixtureKind k);

struct SummandSpec {
  Family family = Family::RealSym;
  std::size_t param = 0;  ///< rank, or dimension for spin factors
};

struct FixtureSpec {
  std::string name;
  FixtureKind kind = FixtureKind::Eja;
  std::string description;
  std::uint64_t seed = 0;

  std::vector<SummandSpec> summands;   ///< eja
  std::vector<RVector> generators;     ///< polyhedral
  std::optional<RVector> unit;         ///< polyhedral; defaults to the sum of facet normals
  CompositeModel model = CompositeModel::MinTensor;  ///< composite
  std::string factor_a, factor_b;

  /// Check name -> accepted statuses.
  std::map<std::string, std::vector<Status>> expect;
};

struct Registry {
  std::vector<FixtureSpec> fixtures;

  const FixtureSpec* find(const std::string& name) const;
};

/// Parses the JSON registry format (see docs/registry.md). Errors are
/// ParseError with a line/column or a field path such as
/// "fixtures[2].generators[0][1]".
Registry parse_registry(const std::string& text, const std::string& source = "<registry>");
Registry load_registry(const std::string& path);
nlohmann::json registry_to_json(const Registry& r);

/// The fixtures shipped with the toolkit, with their expected verdicts.
Registry builtin_fixtures();

/// A built fixture: a system, or a composite together with its joint system.
struct BuiltFixture {
  const FixtureSpec* spec = nullptr;
  std::optional<System> system;
  std::optional<CompositeSystem> composite;

  const System& main() const { return composite ? composite->joint : *system; }
};

BuiltFixture build_fixture(const Registry& r, const FixtureSpec& spec);

}  // namespace conelab
