#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "conelab/classify.hpp"
#include "conelab/errors.hpp"
#include "conelab/json_util.hpp"
#include "conelab/runner.hpp"

namespace {

using namespace conelab;
using nlohmann::json;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string registry;
  std::uint64_t seed = 0;
  double tol = kSpectralTol;
  std::string out;
  std::string format;  ///< json, or text for the fixtures listing, when not given
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CONELAB_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
    std::cerr << "conelab: ignoring non-numeric CONELAB_SEED=" << env << '\n';
  }
  return 0;
}

void add_common(CLI::App* cmd, Common& c, bool with_registry) {
  if (with_registry)
    cmd->add_option("--registry", c.registry, "Registry JSON file (default: the builtin fixtures)");
  cmd->add_option("--seed", c.seed, "Random seed (default: $CONELAB_SEED or 0)");
  cmd->add_option("--tol", c.tol, "Spectral membership tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

Registry registry_of(const Common& c) { return c.registry.empty() ? builtin_fixtures() : load_registry(c.registry); }

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_check(const Common& c, const std::string& checks, std::size_t jobs, bool timings) {
  CheckOptions opts;
  opts.checks = parse_check_list(checks);
  opts.seed = c.seed;
  opts.tol = c.tol;
  opts.jobs = jobs;
  opts.timings = timings;
  const Report report = run_checks(registry_of(c), opts);
  emit(c, c.format == "json" ? dump(report.to_json()) : report.to_text());
  if (!report.ok()) {
    // Keep the mismatch listing visible when the report goes to a file or stdout is JSON.
    if (c.format == "text" && c.out.empty()) return kExitMismatch;
    for (const auto& f : report.fixtures)
      for (const auto& r : f.checks)
        if (r.mismatch()) {
          std::string want;
          for (Status s : *r.expected) want += (want.empty() ? "" : "|") + status_name(s);
          std::cerr << "mismatch: " << f.name << " " << r.check << ": expected " << want << ", got "
                    << status_name(r.status) << '\n';
        }
    return kExitMismatch;
  }
  return 0;
}

int cmd_fixtures(const Common& c) {
  const Registry reg = registry_of(c);
  if (c.format == "json") {
    emit(c, dump(registry_to_json(reg)));
    return 0;
  }
  std::ostringstream os;
  for (const auto& f : reg.fixtures) {
    os << f.name << "  " << fixture_kind_name(f.kind);
    if (f.kind == FixtureKind::Composite)
      os << " " << model_name(f.model) << "(" << f.factor_a << ", " << f.factor_b << ")";
    if (!f.description.empty()) os << "  " << f.description;
    os << '\n';
  }
  emit(c, os.str());
  return 0;
}

int cmd_classify(const Common& c, std::size_t max_rank, const std::string& procedure, std::size_t summands) {
  std::vector<Derivation> ds;
  if (procedure == "local-tomography" || procedure == "all") ds.push_back(survivors_local_tomography(max_rank));
  if (procedure == "injective-composite" || procedure == "all") ds.push_back(survivors_injective_composite(max_rank));
  if (procedure == "classicality" || procedure == "all") ds.push_back(survivors_classicality(max_rank, summands));
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& d : ds) arr.push_back(d.to_json());
    emit(c, dump({{"schema_version", kSchemaVersion}, {"derivations", arr}}));
  } else {
    std::string text;
    for (const auto& d : ds) text += (text.empty() ? "" : "\n") + d.to_text();
    emit(c, text);
  }
  return 0;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
}

int cmd_steer(const Common& c, const std::string& fixture, const std::string& state_file,
              const std::string& ensemble_file, std::size_t parts) {
  const Registry reg = registry_of(c);
  const FixtureSpec* spec = reg.find(fixture);
  if (!spec) throw ParseError("unknown fixture \"" + fixture + "\"");
  if (spec->kind != FixtureKind::Composite) throw PreconditionViolation("\"" + fixture + "\" is not a composite");
  const BuiltFixture fx = build_fixture(reg, *spec);
  const CompositeSystem& comp = *fx.composite;

  const Vector w = state_file.empty() ? canonical_self_steering_state(comp) : vector_from_json(read_json_file(state_file));
  const Vector mb = marginal(comp, w, Side::B, c.tol);
  std::vector<Vector> ensemble;
  if (ensemble_file.empty()) {
    Rng rng(c.seed);
    ensemble = random_ensemble(comp.b, mb, parts, rng);
  } else {
    const json e = read_json_file(ensemble_file);
    if (!e.is_array()) throw ParseError(ensemble_file + ": expected an array of vectors");
    for (const auto& x : e) ensemble.push_back(vector_from_json(x));
  }
  const SteerResult res = steer(comp, w, ensemble, kWitnessTol);

  if (c.format == "json") {
    json ens = json::array();
    for (const auto& x : ensemble) ens.push_back(to_json(x));
    emit(c, dump({{"schema_version", kSchemaVersion},
                  {"fixture", fixture},
                  {"seed", c.seed},
                  {"state", to_json(w)},
                  {"marginal_b", to_json(mb)},
                  {"ensemble", ens},
                  {"result", to_json(res)}}));
  } else {
    std::ostringstream os;
    os << fixture << ": " << steer_status_name(res.status) << " (" << res.method << ")";
    if (!res.reason.empty()) os << ": " << res.reason;
    os << '\n';
    if (res.status == SteerStatus::Steered) {
      os << "residual " << res.residual << '\n';
      for (std::size_t i = 0; i < res.effects.size(); ++i)
        os << "effect " << i << ": " << to_json(res.effects[i]).dump() << '\n';
    }
    emit(c, os.str());
  }
  return res.status == SteerStatus::Steered ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks of order-theoretic axioms on cones, Jordan algebras and composites"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CONELAB_VERSION));

  Common common;
  common.seed = default_seed();

  std::string checks = "all";
  std::size_t jobs = 1;
  bool timings = false;
  auto* check = app.add_subcommand("check", "Run checks on every fixture of a registry");
  add_common(check, common, true);
  check->add_option("--checks", checks, "Comma-separated check names, or \"all\"");
  check->add_option("--jobs", jobs, "Fixtures checked in parallel")->check(CLI::PositiveNumber);
  check->add_flag("--timings", timings, "Include wall-clock times (the report is then no longer byte-stable)");

  auto* fixtures = app.add_subcommand("fixtures", "List the fixtures of a registry, or dump it as JSON");
  add_common(fixtures, common, true);

  std::size_t max_rank = 8, summands = 1;
  std::string procedure = "all";
  auto* classify = app.add_subcommand("classify", "Rank/dimension counting over the Jordan algebra classification");
  add_common(classify, common, false);
  classify->add_option("--max-rank", max_rank, "Largest rank of W considered")->check(CLI::Range(2, 64));
  classify->add_option("--procedure", procedure, "Which derivation")
      ->check(CLI::IsMember({"local-tomography", "injective-composite", "classicality", "all"}));
  classify->add_option("--summands", summands, "Number of summands for the classicality procedure")
      ->check(CLI::PositiveNumber);

  std::string fixture, state_file, ensemble_file;
  std::size_t parts = 3;
  auto* steer_cmd = app.add_subcommand("steer", "Steer an ensemble on B through a bipartite state");
  add_common(steer_cmd, common, true);
  steer_cmd->add_option("--fixture", fixture, "Composite fixture name")->required();
  steer_cmd->add_option("--state", state_file, "JSON vector; default: the canonical self-steering state");
  steer_cmd->add_option("--ensemble", ensemble_file, "JSON array of vectors; default: a random ensemble");
  steer_cmd->add_option("--parts", parts, "Size of the random ensemble")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (common.format.empty()) common.format = fixtures->parsed() ? "text" : "json";

  try {
    if (check->parsed()) return cmd_check(common, checks, jobs, timings);
    if (fixtures->parsed()) return cmd_fixtures(common);
    if (classify->parsed()) return cmd_classify(common, max_rank, procedure, summands);
    return cmd_steer(common, fixture, state_file, ensemble_file, parts);
  } catch (const ParseError& e) {
    std::cerr << "conelab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "conelab: " << e.what() << '\n';
    return kExitUsage;
  }
}
