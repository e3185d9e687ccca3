#include "conelab/registry.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "conelab/errors.hpp"
#include "conelab/json_util.hpp"
#include "conelab/shared_corner.hpp"

namespace conelab {

namespace {

using nlohmann::json;

const std::set<std::string>& known_checks() {
  static const std::set<std::string> names = {"self-dual",   "weak-self-dual",   "homogeneous",
                                              "pure-transitive", "continuous-pure-transitive", "reducible",
                                              "local-tomography", "steering", "purity-preservation"};
  return names;
}

[[noreturn]] void field_error(const std::string& source, const std::string& path, const std::string& what) {
  throw ParseError(source + ": " + path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& source, const std::string& path) {
  if (!obj.contains(key)) field_error(source, path, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

std::string require_string(const json& obj, const char* key, const std::string& source, const std::string& path) {
  const json& v = require(obj, key, source, path);
  if (!v.is_string()) field_error(source, path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::size_t require_count(const json& obj, const char* key, const std::string& source, const std::string& path) {
  const json& v = require(obj, key, source, path);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
    field_error(source, path + "." + key, "expected a positive integer");
  return v.get<std::size_t>();
}

RVector parse_rvector(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_array() || j.empty()) field_error(source, path, "expected a non-empty array of rationals");
  RVector out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& x = j[i];
    if (x.is_number_float())
      field_error(source, path + "[" + std::to_string(i) + "]",
                  "floating-point value; write rationals as integers, \"p/q\" or {\"num\", \"den\"}");
    try {
      out.push_back(rational_from_json(x));
    } catch (const Error& e) {
      field_error(source, path + "[" + std::to_string(i) + "]", e.what());
    }
  }
  return out;
}

std::vector<Status> parse_expectation(const json& j, const std::string& source, const std::string& path) {
  auto one = [&](const json& x, const std::string& p) {
    if (x.is_boolean()) return x.get<bool>() ? Status::Holds : Status::Fails;
    if (x.is_string()) {
      try {
        return parse_status(x.get<std::string>());
      } catch (const Error& e) {
        field_error(source, p, e.what());
      }
    }
    field_error(source, p, "expected true, false, a status name, or a list of status names");
  };
  std::vector<Status> out;
  if (j.is_array()) {
    if (j.empty()) field_error(source, path, "empty list of accepted statuses");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(one(j[i], path + "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(one(j, path));
  }
  return out;
}

FixtureKind parse_kind(const std::string& s, const std::string& source, const std::string& path) {
  if (s == "eja") return FixtureKind::Eja;
  if (s == "polyhedral") return FixtureKind::Polyhedral;
  if (s == "shared-corner") return FixtureKind::SharedCorner;
  if (s == "composite") return FixtureKind::Composite;
  field_error(source, path, "unknown kind \"" + s + "\" (expected eja, polyhedral, shared-corner or composite)");
}

FixtureSpec parse_fixture(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_object()) field_error(source, path, "expected an object");
  FixtureSpec f;
  f.name = require_string(j, "name", source, path);
  if (f.name.empty()) field_error(source, path + ".name", "empty name");
  f.kind = parse_kind(require_string(j, "kind", source, path), source, path + ".kind");
  if (j.contains("description")) {
    if (!j["description"].is_string()) field_error(source, path + ".description", "expected a string");
    f.description = j["description"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) field_error(source, path + ".seed", "expected a non-negative integer");
    f.seed = j["seed"].get<std::uint64_t>();
  }

  switch (f.kind) {
    case FixtureKind::Eja: {
      const json& sums = require(j, "summands", source, path);
      if (!sums.is_array() || sums.empty()) field_error(source, path + ".summands", "expected a non-empty array");
      for (std::size_t i = 0; i < sums.size(); ++i) {
        const std::string p = path + ".summands[" + std::to_string(i) + "]";
        if (!sums[i].is_object()) field_error(source, p, "expected an object");
        SummandSpec s;
        const std::string family = require_string(sums[i], "family", source, p);
        try {
          s.family = parse_family(family);
        } catch (const Error& e) {
          field_error(source, p + ".family", e.what());
        }
        if (s.family == Family::Albert) field_error(source, p + ".family", "the Albert algebra is not constructible");
        s.param = require_count(sums[i], s.family == Family::SpinFactor ? "dim" : "rank", source, p);
        if (s.family == Family::SpinFactor && s.param < 3) field_error(source, p + ".dim", "spin factors need dim >= 3");
        f.summands.push_back(s);
      }
      break;
    }
    case FixtureKind::Polyhedral: {
      const json& gens = require(j, "generators", source, path);
      if (!gens.is_array() || gens.empty()) field_error(source, path + ".generators", "expected a non-empty array");
      for (std::size_t i = 0; i < gens.size(); ++i) {
        f.generators.push_back(parse_rvector(gens[i], source, path + ".generators[" + std::to_string(i) + "]"));
        if (f.generators.back().size() != f.generators.front().size())
          field_error(source, path + ".generators[" + std::to_string(i) + "]", "dimension differs from generator 0");
      }
      if (j.contains("unit")) {
        f.unit = parse_rvector(j["unit"], source, path + ".unit");
        if (f.unit->size() != f.generators.front().size())
          field_error(source, path + ".unit", "dimension differs from the generators");
      }
      break;
    }
    case FixtureKind::SharedCorner: break;
    case FixtureKind::Composite: {
      const std::string model = require_string(j, "model", source, path);
      try {
        f.model = parse_model(model);
      } catch (const Error& e) {
        field_error(source, path + ".model", e.what());
      }
      const json& fs = require(j, "factors", source, path);
      if (!fs.is_array() || fs.size() != 2 || !fs[0].is_string() || !fs[1].is_string())
        field_error(source, path + ".factors", "expected two fixture names");
      f.factor_a = fs[0].get<std::string>();
      f.factor_b = fs[1].get<std::string>();
      break;
    }
  }

  if (j.contains("expect")) {
    const json& e = j["expect"];
    if (!e.is_object()) field_error(source, path + ".expect", "expected an object");
    for (const auto& [check, value] : e.items()) {
      if (!known_checks().count(check)) field_error(source, path + ".expect", "unknown check \"" + check + "\"");
      f.expect[check] = parse_expectation(value, source, path + ".expect." + check);
    }
  }
  return f;
}

void validate(const Registry& r, const std::string& source) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < r.fixtures.size(); ++i)
    if (!names.insert(r.fixtures[i].name).second)
      field_error(source, "fixtures[" + std::to_string(i) + "].name", "duplicate name \"" + r.fixtures[i].name + "\"");
  for (std::size_t i = 0; i < r.fixtures.size(); ++i) {
    const auto& f = r.fixtures[i];
    if (f.kind != FixtureKind::Composite) continue;
    for (const auto& factor : {f.factor_a, f.factor_b}) {
      const FixtureSpec* g = r.find(factor);
      if (!g) field_error(source, "fixtures[" + std::to_string(i) + "].factors", "unknown fixture \"" + factor + "\"");
      if (g->kind == FixtureKind::Composite)
        field_error(source, "fixtures[" + std::to_string(i) + "].factors",
                    "factor \"" + factor + "\" is itself a composite");
    }
  }
}

json status_list_json(const std::vector<Status>& ss) {
  if (ss.size() == 1) {
    if (ss[0] == Status::Holds) return true;
    if (ss[0] == Status::Fails) return false;
    return status_name(ss[0]);
  }
  json out = json::array();
  for (Status s : ss) out.push_back(status_name(s));
  return out;
}

RVector ints(std::initializer_list<long> xs) {
  RVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

std::string fixture_kind_name(FixtureKind k) {
  switch (k) {
    case FixtureKind::Eja: return "eja";
    case FixtureKind::Polyhedral: return "polyhedral";
    case FixtureKind::SharedCorner: return "shared-corner";
    case FixtureKind::Composite: return "composite";
  }
  return "?";
}

const FixtureSpec* Registry::find(const std::string& name) const {
  for (const auto& f : fixtures)
    if (f.name == name) return &f;
  return nullptr;
}

Registry parse_registry(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
  if (!j.is_object()) field_error(source, "(root)", "expected an object");
  if (j.contains("schema_version")) {
    if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion)
      field_error(source, "schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  Registry r;
  const json& fs = require(j, "fixtures", source, "(root)");
  if (!fs.is_array()) field_error(source, "fixtures", "expected an array");
  for (std::size_t i = 0; i < fs.size(); ++i)
    r.fixtures.push_back(parse_fixture(fs[i], source, "fixtures[" + std::to_string(i) + "]"));
  validate(r, source);
  return r;
}

Registry load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open registry file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_registry(ss.str(), path);
}

nlohmann::json registry_to_json(const Registry& r) {
  json fs = json::array();
  for (const auto& f : r.fixtures) {
    json j = {{"name", f.name}, {"kind", fixture_kind_name(f.kind)}};
    if (!f.description.empty()) j["description"] = f.description;
    if (f.seed) j["seed"] = f.seed;
    switch (f.kind) {
      case FixtureKind::Eja: {
        json sums = json::array();
        for (const auto& s : f.summands)
          sums.push_back({{"family", family_name(s.family)}, {s.family == Family::SpinFactor ? "dim" : "rank", s.param}});
        j["summands"] = sums;
        break;
      }
      case FixtureKind::Polyhedral: {
        json gens = json::array();
        for (const auto& g : f.generators) gens.push_back(to_json(g));
        j["generators"] = gens;
        if (f.unit) j["unit"] = to_json(*f.unit);
        break;
      }
      case FixtureKind::SharedCorner: break;
      case FixtureKind::Composite:
        j["model"] = model_name(f.model);
        j["factors"] = {f.factor_a, f.factor_b};
        break;
    }
    if (!f.expect.empty()) {
      json e = json::object();
      for (const auto& [check, ss] : f.expect) e[check] = status_list_json(ss);
      j["expect"] = e;
    }
    fs.push_back(j);
  }
  return {{"schema_version", kSchemaVersion}, {"fixtures", fs}};
}

Registry builtin_fixtures() {
  using S = Status;
  constexpr S H = S::Holds, F = S::Fails;
  Registry r;
  auto expect = [](S sd, S hom, S pt, S cpt, S red) {
    return std::map<std::string, std::vector<Status>>{{"self-dual", {sd}},
                                                       {"homogeneous", {hom}},
                                                       {"pure-transitive", {pt}},
                                                       {"continuous-pure-transitive", {cpt}},
                                                       {"reducible", {red}}};
  };
  auto eja = [&](std::string name, std::vector<SummandSpec> sums, std::string desc) {
    FixtureSpec f;
    f.name = std::move(name);
    f.kind = FixtureKind::Eja;
    f.description = std::move(desc);
    f.summands = std::move(sums);
    const bool simple = f.summands.size() == 1;
    const bool identical = std::all_of(f.summands.begin(), f.summands.end(), [&](const SummandSpec& s) {
      return s.family == f.summands[0].family && s.param == f.summands[0].param;
    });
    f.expect = expect(H, H, identical ? H : F, simple ? H : F, simple ? F : H);
    r.fixtures.push_back(std::move(f));
  };
  auto poly = [&](std::string name, std::vector<RVector> gens, RVector unit, std::string desc) {
    FixtureSpec f;
    f.name = std::move(name);
    f.kind = FixtureKind::Polyhedral;
    f.description = std::move(desc);
    f.generators = std::move(gens);
    f.unit = std::move(unit);
    r.fixtures.push_back(std::move(f));
    return &r.fixtures.back();
  };

  for (std::size_t n : {2, 3, 4}) {
    std::vector<RVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
      RVector e(n);
      e[i] = 1;
      gens.push_back(e);
    }
    auto* f = poly("simplex-" + std::to_string(n), gens, RVector(n, Rational(1)),
                   "classical system with " + std::to_string(n) + " outcomes");
    f->expect = expect(H, H, H, F, H);
    f->expect["weak-self-dual"] = {H};
  }
  // Simple matrix and spin factors.
  eja("rebit", {{Family::RealSym, 2}}, "real symmetric 2x2 matrices");
  eja("real-sym-3", {{Family::RealSym, 3}}, "real symmetric 3x3 matrices");
  eja("qubit", {{Family::ComplexHerm, 2}}, "complex Hermitian 2x2 matrices");
  eja("qutrit", {{Family::ComplexHerm, 3}}, "complex Hermitian 3x3 matrices");
  eja("complex-herm-4", {{Family::ComplexHerm, 4}}, "complex Hermitian 4x4 matrices");
  eja("quat-herm-2", {{Family::QuatHerm, 2}}, "quaternionic Hermitian 2x2 matrices");
  eja("spin-3", {{Family::SpinFactor, 3}}, "spin factor of dimension 3");
  eja("spin-4", {{Family::SpinFactor, 4}}, "spin factor of dimension 4");
  eja("spin-8", {{Family::SpinFactor, 8}}, "spin factor of dimension 8");
  eja("qubit+qubit", {{Family::ComplexHerm, 2}, {Family::ComplexHerm, 2}}, "two identical quantum summands");
  eja("qubit+rebit", {{Family::ComplexHerm, 2}, {Family::RealSym, 2}}, "complex and real summands");

  // Polygons: rays around a base polygon at height 1.
  poly("square-cone", {ints({1, 1, 1}), ints({-1, 1, 1}), ints({-1, -1, 1}), ints({1, -1, 1})}, ints({0, 0, 1}),
       "cone over a square; weakly but not strongly self-dual")
      ->expect = expect(F, F, H, F, F);
  r.fixtures.back().expect["weak-self-dual"] = {H};
  poly("pentagon-cone", {ints({2, 0, 1}), ints({1, 2, 1}), ints({-1, 2, 1}), ints({-2, 0, 1}), ints({0, -2, 1})},
       ints({0, 0, 1}), "cone over an irregular pentagon")
      ->expect = expect(H, F, F, F, F);
  r.fixtures.back().expect["weak-self-dual"] = {H};
  poly("hexagon-cone",
       {ints({1, 0, 1}), ints({1, 1, 1}), ints({0, 1, 1}), ints({-1, 0, 1}), ints({-1, -1, 1}), ints({0, -1, 1})},
       ints({0, 0, 1}), "cone over an affinely regular hexagon")
      ->expect = expect(F, F, H, F, F);
  r.fixtures.back().expect["weak-self-dual"] = {H};
  poly("bipyramid-5",
       {ints({1, 0, 0, 1}), ints({0, 1, 0, 1}), ints({-1, -1, 0, 1}), ints({0, 0, 1, 1}), ints({0, 0, -1, 1})},
       ints({0, 0, 0, 1}), "cone over a triangular bipyramid; 5 rays and 6 facets")
      ->expect = expect(F, F, F, F, F);
  r.fixtures.back().expect["weak-self-dual"] = {F};

  {
    FixtureSpec f;
    f.name = "shared-corner";
    f.kind = FixtureKind::SharedCorner;
    f.description = "pairs of 2x2 PSD blocks sharing the (1,1) entry; homogeneous, not self-dual";
    f.expect = expect(S::Inconclusive, H, F, F, F);
    r.fixtures.push_back(std::move(f));
  }

  auto composite = [&](std::string name, CompositeModel model, std::string a, std::string b, std::string desc) {
    FixtureSpec f;
    f.name = std::move(name);
    f.kind = FixtureKind::Composite;
    f.description = std::move(desc);
    f.model = model;
    f.factor_a = std::move(a);
    f.factor_b = std::move(b);
    r.fixtures.push_back(std::move(f));
    return &r.fixtures.back();
  };
  auto* two_qubits = composite("two-qubits", CompositeModel::Hilbert, "qubit", "qubit", "quantum two-qubit composite");
  two_qubits->expect = expect(H, H, H, H, F);
  two_qubits->expect["local-tomography"] = {H};
  two_qubits->expect["steering"] = {H};
  two_qubits->expect["purity-preservation"] = {H};

  auto* smin = composite("square-min-square", CompositeModel::MinTensor, "square-cone", "square-cone",
                         "minimal tensor product of two square systems");
  smin->expect = expect(F, F, S::Unsupported, F, F);
  smin->expect["weak-self-dual"] = {F};
  smin->expect["local-tomography"] = {H};
  smin->expect["purity-preservation"] = {H};

  auto* bits = composite("bit-bit", CompositeModel::Classical, "simplex-2", "simplex-2", "two classical bits");
  bits->expect = expect(H, H, H, F, H);
  bits->expect["weak-self-dual"] = {H};
  bits->expect["local-tomography"] = {H};
  bits->expect["steering"] = {H};
  bits->expect["purity-preservation"] = {H};

  validate(r, "builtin");
  return r;
}

BuiltFixture build_fixture(const Registry& r, const FixtureSpec& spec) {
  BuiltFixture out;
  out.spec = &spec;
  switch (spec.kind) {
    case FixtureKind::Eja: {
      std::vector<SimpleFactor> fs;
      for (const auto& s : spec.summands) {
        switch (s.family) {
          case Family::RealSym: fs.push_back(SimpleFactor::real_sym(s.param)); break;
          case Family::ComplexHerm: fs.push_back(SimpleFactor::complex_herm(s.param)); break;
          case Family::QuatHerm: fs.push_back(SimpleFactor::quat_herm(s.param)); break;
          case Family::SpinFactor: fs.push_back(SimpleFactor::spin(s.param)); break;
          case Family::Albert: throw Unsupported("the Albert algebra is not constructible");
        }
      }
      out.system = eja_system(JordanAlgebra(std::move(fs)), spec.name);
      break;
    }
    case FixtureKind::Polyhedral: {
      PolyhedralCone cone(spec.generators);
      RVector unit;
      if (spec.unit) {
        unit = *spec.unit;
      } else {
        unit = RVector(cone.dim(), Rational(0));
        for (const auto& n : cone.facets()) unit = add(unit, n);
      }
      out.system = make_system(ConeModel::polyhedral(std::move(cone)), to_double(unit), spec.name);
      break;
    }
    case FixtureKind::SharedCorner:
      out.system = make_system(ConeModel::shared_corner(), shared_corner::unit(), spec.name);
      break;
    case FixtureKind::Composite: {
      const FixtureSpec* a = r.find(spec.factor_a);
      const FixtureSpec* b = r.find(spec.factor_b);
      if (!a || !b) throw PreconditionViolation("fixture \"" + spec.name + "\" references an unknown factor");
      out.composite = make_composite(*build_fixture(r, *a).system, *build_fixture(r, *b).system, spec.model, spec.name);
      break;
    }
  }
  return out;
}

}  // namespace conelab
