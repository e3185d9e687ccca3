#include "conelab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "conelab/errors.hpp"
#include "conelab/json_util.hpp"

namespace conelab {

namespace {

using nlohmann::json;

/// Rounds every float in a payload so reports are byte-stable; non-finite
/// values become null since JSON has no representation for them.
void stabilize(json& j) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    j = std::isfinite(x) ? json(stable(x)) : json(nullptr);
  } else if (j.is_structured()) {
    for (auto& v : j) stabilize(v);
  }
}

CheckResult skipped(const std::string& check, std::string notice) {
  CheckResult r;
  r.check = check;
  r.status = Status::Skipped;
  r.notice = std::move(notice);
  return r;
}

/// Trace-form Gram matrix for Jordan-algebraic cones and their linear images.
std::optional<Matrix> trace_gram(const ConeModel& cone) {
  if (cone.kind() == ConeKind::Eja) return cone.algebra().gram();
  if (cone.kind() == ConeKind::Transformed) {
    auto g = trace_gram(cone.base());
    if (!g) return std::nullopt;
    const Matrix& ti = cone.transform_inverse();
    return Matrix(ti.transpose() * *g * ti);
  }
  return std::nullopt;
}

AxiomVerdict self_dual(const System& sys, std::uint64_t seed, double tol) {
  const ConeKind kind = sys.cone.kind();
  if (kind == ConeKind::Polyhedral) {
    const auto& p = sys.cone.polyhedral_cone();
    AxiomVerdict v;
    v.axiom = "self-dual";
    const DualitySearch s = search_spd_self_duality(p);
    v.certificate = s.to_json();
    switch (s.outcome) {
      case SearchOutcome::Found: {
        const bool verified = verify_duality_map(p, *s.map, true);
        v.status = verified ? Status::Holds : Status::Inconclusive;
        v.witness = to_double(*s.map);
        v.certificate["verified"] = verified;
        // The found map is an inner product making the cone self-dual.
        const AxiomVerdict check = check_self_dual(sys, to_double(*s.map), tol, seed);
        v.margin = check.margin;
        break;
      }
      case SearchOutcome::Infeasible:
        v.status = Status::Fails;
        v.violation = {{"invariant", "no symmetric positive definite map onto the dual"}, {"note", s.note}};
        break;
      case SearchOutcome::Undecided: v.status = Status::Inconclusive; break;
      case SearchOutcome::SearchSpaceExceeded: v.status = Status::Unsupported; break;
    }
    return v;
  }
  if (auto g = trace_gram(sys.cone)) return check_self_dual(sys, *g, tol, seed);
  if (kind == ConeKind::SharedCorner) {
    // Only one inner product can be tried; a violation is not a disproof.
    AxiomVerdict euclid = check_self_dual(sys, Matrix::Identity(5, 5), tol, seed);
    AxiomVerdict v;
    v.axiom = "self-dual";
    v.status = Status::Inconclusive;
    v.margin = euclid.margin;
    v.certificate = {{"reason", "no search over inner products exists for this cone"},
                     {"euclidean_form", {{"status", status_name(euclid.status)}, {"violation", euclid.violation}}}};
    return v;
  }
  AxiomVerdict v;
  v.axiom = "self-dual";
  v.status = Status::Unsupported;
  v.certificate["reason"] = "no exact dual or trace form for a " + kind_name(kind) + " cone";
  return v;
}

AxiomVerdict weak_self_dual(const System& sys) {
  AxiomVerdict v;
  v.axiom = "weak-self-dual";
  const auto& p = sys.cone.polyhedral_cone();
  const DualitySearch s = search_weak_self_duality(p);
  v.certificate = s.to_json();
  switch (s.outcome) {
    case SearchOutcome::Found:
      v.status = verify_duality_map(p, *s.map, false) ? Status::Holds : Status::Inconclusive;
      v.witness = to_double(*s.map);
      break;
    case SearchOutcome::Infeasible:
      v.status = Status::Fails;
      v.violation = {{"invariant", "no linear map onto the dual"}, {"note", s.note}};
      break;
    case SearchOutcome::Undecided: v.status = Status::Inconclusive; break;
    case SearchOutcome::SearchSpaceExceeded: v.status = Status::Unsupported; break;
  }
  return v;
}

AxiomVerdict local_tomography(const CompositeSystem& c) {
  AxiomVerdict v;
  v.axiom = "local-tomography";
  const std::size_t da = c.a.dim(), db = c.b.dim(), d = c.dim();
  v.status = d == da * db ? Status::Holds : Status::Fails;
  v.certificate = {{"dim_a", da}, {"dim_b", db}, {"dim_joint", d}, {"model", model_name(c.model)}};
  return v;
}

AxiomVerdict purity(const CompositeSystem& c, std::uint64_t seed, double tol) {
  AxiomVerdict v;
  v.axiom = "purity-preservation";
  Rng rng(seed);
  const auto pa = pure_states(c.a, 10, rng);
  const auto pb = pure_states(c.b, 10, rng);
  std::size_t tested = 0;
  for (std::size_t i = 0; i < pa.size() && tested < 50; ++i)
    for (std::size_t j = 0; j < pb.size() && tested < 50; ++j, ++tested)
      if (!purity_preservation_check(c, pa[i], pb[j], tol)) {
        v.status = Status::Fails;
        v.violation = {{"state_a", to_json(pa[i])}, {"state_b", to_json(pb[j])},
                       {"reason", "product of pure states is not extremal"}};
        return v;
      }
  v.status = Status::Holds;
  v.certificate = {{"pairs", tested}};
  return v;
}

AxiomVerdict steering(const CompositeSystem& c, std::uint64_t seed) {
  const Vector w = canonical_self_steering_state(c);
  AxiomVerdict v = steering_order_iso_check(c, w, kWitnessTol, seed, 20);
  v.certificate["state"] = to_json(w);
  return v;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string expected_text(const std::vector<Status>& ss) {
  std::string out;
  for (Status s : ss) out += (out.empty() ? "" : "|") + status_name(s);
  return out;
}

FixtureReport check_fixture(const Registry& registry, const FixtureSpec& spec, const CheckOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  FixtureReport fr;
  fr.name = spec.name;
  fr.kind = fixture_kind_name(spec.kind);
  fr.description = spec.description;
  fr.seed = fixture_seed(opts.seed, spec);
  std::optional<BuiltFixture> fx;
  try {
    fx = build_fixture(registry, spec);
    fr.dim = fx->main().dim();
  } catch (const Error& e) {
    fr.error = e.what();
  }
  for (std::size_t i = 0; i < opts.checks.size(); ++i) {
    const std::string& name = opts.checks[i];
    CheckResult r;
    if (fx) {
      r = run_check(*fx, name, fr.seed + 1000003ULL * (i + 1), opts.tol);
    } else {
      r.check = name;
      r.status = Status::Unsupported;
      r.error = true;
      r.notice = "fixture could not be built: " + fr.error;
    }
    auto it = spec.expect.find(name);
    if (it != spec.expect.end()) r.expected = it->second;
    fr.checks.push_back(std::move(r));
  }
  fr.elapsed_ms = ms_since(t0);
  return fr;
}

json check_json(const CheckResult& r, bool timings) {
  json j = {{"check", r.check}, {"status", status_name(r.status)}};
  if (!r.notice.empty()) j["notice"] = r.notice;
  if (r.error) j["error"] = true;
  if (r.expected) {
    json e = json::array();
    for (Status s : *r.expected) e.push_back(status_name(s));
    j["expected"] = e;
    j["match"] = !r.mismatch();
  }
  if (r.status != Status::Skipped && !r.error) {
    j["margin"] = r.verdict.margin;
    if (r.verdict.witness) j["witness"] = to_json(*r.verdict.witness);
    if (!r.verdict.certificate.empty()) j["certificate"] = r.verdict.certificate;
    if (!r.verdict.violation.empty()) j["violation"] = r.verdict.violation;
  }
  if (timings) j["elapsed_ms"] = r.elapsed_ms;
  stabilize(j);
  return j;
}

}  // namespace

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names = {"self-dual",
                                                 "weak-self-dual",
                                                 "homogeneous",
                                                 "pure-transitive",
                                                 "continuous-pure-transitive",
                                                 "reducible",
                                                 "local-tomography",
                                                 "steering",
                                                 "purity-preservation"};
  return names;
}

std::vector<std::string> parse_check_list(const std::string& text) {
  if (text.empty() || text == "all") return all_checks();
  std::vector<std::string> wanted;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (std::find(all_checks().begin(), all_checks().end(), item) == all_checks().end())
      throw ParseError("unknown check \"" + item + "\"");
    wanted.push_back(item);
  }
  // Report order is fixed, whatever order the names were given in.
  std::vector<std::string> out;
  for (const auto& c : all_checks())
    if (std::find(wanted.begin(), wanted.end(), c) != wanted.end()) out.push_back(c);
  return out;
}

bool CheckResult::mismatch() const {
  if (!expected) return false;
  if (error) return true;
  if (status == Status::Skipped || status == Status::Unsupported) return false;
  return std::find(expected->begin(), expected->end(), status) == expected->end();
}

std::size_t FixtureReport::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.mismatch(); }));
}

std::size_t Report::mismatches() const {
  std::size_t n = 0;
  for (const auto& f : fixtures) n += f.mismatches();
  return n;
}

std::uint64_t fixture_seed(std::uint64_t run_seed, const FixtureSpec& spec) {
  // FNV-1a over the name, then a splitmix64 finalizer.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : spec.name) h = (h ^ ch) * 1099511628211ULL;
  std::uint64_t z = h ^ (run_seed * 0x9E3779B97F4A7C15ULL) ^ (spec.seed * 0xBF58476D1CE4E5B9ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return (z ^ (z >> 31)) & 0xFFFFFFFFFFFFULL;
}

CheckResult run_check(const BuiltFixture& fx, const std::string& check, std::uint64_t seed, double tol) {
  if (std::find(all_checks().begin(), all_checks().end(), check) == all_checks().end())
    throw ParseError("unknown check \"" + check + "\"");
  const System& sys = fx.main();
  const bool composite_check = check == "local-tomography" || check == "steering" || check == "purity-preservation";
  if (composite_check && !fx.composite) return skipped(check, "applies to composite systems only");
  if (check == "weak-self-dual" && sys.cone.kind() != ConeKind::Polyhedral)
    return skipped(check, "the dual-map search applies to polyhedral cones only");

  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.check = check;
  try {
    if (check == "self-dual") {
      r.verdict = self_dual(sys, seed, tol);
    } else if (check == "weak-self-dual") {
      r.verdict = weak_self_dual(sys);
    } else if (check == "homogeneous") {
      r.verdict = check_homogeneous(sys, seed, 10, kWitnessTol);
    } else if (check == "pure-transitive") {
      r.verdict = check_pure_transitive(sys, seed, 10);
    } else if (check == "continuous-pure-transitive") {
      r.verdict = check_continuous_pure_transitive(sys, seed, 16);
    } else if (check == "reducible") {
      r.verdict = check_reducible(sys, seed);
    } else if (check == "local-tomography") {
      r.verdict = local_tomography(*fx.composite);
    } else if (check == "steering") {
      try {
        r.verdict = steering(*fx.composite, seed);
      } catch (const PreconditionViolation& e) {
        return skipped(check, std::string("no canonical self-steering state: ") + e.what());
      }
    } else {
      r.verdict = purity(*fx.composite, seed, tol);
    }
    r.status = r.verdict.status;
  } catch (const Unsupported& e) {
    r.status = Status::Unsupported;
    r.notice = e.what();
  } catch (const Error& e) {
    r.status = Status::Unsupported;
    r.error = true;
    r.notice = std::string("error: ") + e.what();
  }
  if (r.status == Status::Unsupported && r.notice.empty() && r.verdict.certificate.contains("reason"))
    r.notice = r.verdict.certificate["reason"].get<std::string>();
  r.elapsed_ms = ms_since(t0);
  return r;
}

Report run_checks(const Registry& registry, const CheckOptions& opts) {
  for (const auto& c : opts.checks)
    if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end())
      throw ParseError("unknown check \"" + c + "\"");
  Report report;
  report.seed = opts.seed;
  report.tol = opts.tol;
  report.timings = opts.timings;
  report.checks = opts.checks;
  report.fixtures.resize(registry.fixtures.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < registry.fixtures.size(); i = next++)
      report.fixtures[i] = check_fixture(registry, registry.fixtures[i], opts);
  };
  const std::size_t jobs = std::clamp<std::size_t>(opts.jobs, 1, std::max<std::size_t>(1, registry.fixtures.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

nlohmann::json Report::to_json() const {
  json fs = json::array();
  json mismatch_list = json::array();
  std::size_t skipped = 0, unsupported = 0;
  for (const auto& f : fixtures) {
    json checks_json = json::array();
    for (const auto& c : f.checks) {
      checks_json.push_back(check_json(c, timings));
      skipped += c.status == Status::Skipped;
      unsupported += c.status == Status::Unsupported;
      if (c.mismatch())
        mismatch_list.push_back({{"fixture", f.name},
                                 {"check", c.check},
                                 {"expected", expected_text(*c.expected)},
                                 {"got", status_name(c.status)}});
    }
    json fj = {{"name", f.name}, {"kind", f.kind}, {"seed", f.seed}, {"dim", f.dim}, {"checks", checks_json}};
    if (!f.description.empty()) fj["description"] = f.description;
    if (!f.error.empty()) fj["error"] = f.error;
    if (timings) fj["elapsed_ms"] = stable(f.elapsed_ms);
    fs.push_back(fj);
  }
  return {{"schema_version", kSchemaVersion},
          {"toolkit_version", CONELAB_VERSION},
          {"seed", seed},
          {"tolerance", stable(tol)},
          {"checks", checks},
          {"fixtures", fs},
          {"summary",
           {{"fixtures", fixtures.size()},
            {"mismatches", mismatch_list},
            {"skipped", skipped},
            {"unsupported", unsupported},
            {"ok", ok()}}}};
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "conelab " << CONELAB_VERSION << ", seed " << seed << ", tolerance " << tol << '\n';
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.size());
  for (const auto& f : fixtures) {
    os << '\n' << f.name << " (" << f.kind << ", dim " << f.dim << ")";
    if (timings) os << " " << static_cast<long>(std::lround(f.elapsed_ms)) << " ms";
    os << '\n';
    if (!f.error.empty()) os << "  error: " << f.error << '\n';
    for (const auto& c : f.checks) {
      os << "  " << c.check << std::string(width + 2 - c.check.size(), ' ') << status_name(c.status);
      if (c.expected) os << "  (expected " << expected_text(*c.expected) << (c.mismatch() ? ", MISMATCH)" : ")");
      if (!c.notice.empty()) os << "  [" << c.notice << "]";
      os << '\n';
    }
  }
  os << '\n' << fixtures.size() << " fixtures, " << mismatches() << " mismatches\n";
  for (const auto& f : fixtures)
    for (const auto& c : f.checks)
      if (c.mismatch())
        os << "mismatch: " << f.name << " " << c.check << ": expected " << expected_text(*c.expected) << ", got "
           << status_name(c.status) << '\n';
  return os.str();
}

}  // namespace conelab
