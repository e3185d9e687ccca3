#include "conelab/classify.hpp"

#include <algorithm>
#include <sstream>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

using nlohmann::json;

constexpr Family kFamilies[] = {Family::RealSym, Family::ComplexHerm, Family::QuatHerm, Family::SpinFactor,
                                Family::Albert};

std::string rule_text(CountingRule rule) { return rule == CountingRule::Equal ? "=" : ">="; }

std::string list_dims(const std::vector<ClassRecord>& rs) {
  std::string out;
  for (const auto& r : rs) out += (out.empty() ? "" : ", ") + std::to_string(r.dim);
  return out;
}

CellTrace evaluate(const ClassRecord& w, CountingRule rule) {
  CellTrace cell;
  cell.w = w;
  cell.rule = rule;
  cell.required_rank = w.rank * w.rank;
  cell.required_dim = w.dim * w.dim;
  cell.candidates = records_of_rank(cell.required_rank, 0);
  const std::size_t need = cell.required_dim;
  std::vector<std::string> hits;
  std::vector<std::string> misses;
  for (const auto& c : cell.candidates) {
    const bool ok = rule == CountingRule::Equal ? c.dim == need : c.dim >= need;
    const std::string rel = c.dim == need ? " = " : (c.dim > need ? " < " : " > ");
    (ok ? hits : misses).push_back(std::to_string(need) + rel + std::to_string(c.dim) + " (" + c.describe() + ")");
  }
  cell.pass = !hits.empty();
  auto join = [](const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
    return out;
  };
  if (cell.pass) {
    cell.reason = join(hits);
  } else if (rule == CountingRule::AtLeast) {
    std::size_t best = 0;
    for (const auto& c : cell.candidates) best = std::max(best, c.dim);
    cell.reason = "largest dim at rank " + std::to_string(cell.required_rank) + " is " + std::to_string(best) + " < " +
                  std::to_string(need);
  } else {
    cell.reason = "no rank-" + std::to_string(cell.required_rank) + " algebra has dim " + std::to_string(need) +
                  " (dims " + list_dims(cell.candidates) + "): " + join(misses);
  }
  return cell;
}

FamilyTrace trace_family(Family f, std::size_t max_rank, CountingRule rule) {
  FamilyTrace t;
  t.family = f;
  switch (f) {
    case Family::RealSym:
    case Family::ComplexHerm:
    case Family::QuatHerm:
      for (std::size_t r = 2; r <= max_rank; ++r) t.cells.push_back(evaluate(class_record(f, r), rule));
      break;
    case Family::Albert:
      if (max_rank >= 3)
        t.cells.push_back(evaluate(class_record(f, 3), rule));
      else
        t.note = "no applicable rank: the Albert algebra has rank 3";
      break;
    case Family::SpinFactor: {
      // Every spin factor has rank 2, so all need a rank-4 factor; beyond the
      // square root of the largest rank-4 dim the answer cannot change.
      std::size_t largest = 0;
      for (const auto& c : records_of_rank(4, 0)) largest = std::max(largest, c.dim);
      std::size_t cutoff = 3;
      while (cutoff * cutoff <= largest) ++cutoff;
      const std::size_t bound = spin_enumeration_bound(max_rank);
      for (std::size_t n = 3; n <= std::min(cutoff, bound); ++n) t.cells.push_back(evaluate(class_record(f, n), rule));
      if (bound > cutoff)
        t.spin_tail = RangeTrace{cutoff + 1, bound,
                                 "n^2 >= " + std::to_string((cutoff + 1) * (cutoff + 1)) + " > " +
                                     std::to_string(largest) + " = largest dim at rank 4"};
      break;
    }
  }
  t.survives = !t.cells.empty() && !t.spin_tail &&
               std::all_of(t.cells.begin(), t.cells.end(), [](const CellTrace& c) { return c.pass; });
  return t;
}

Derivation run(std::string procedure, std::size_t max_rank, CountingRule rule, std::size_t summands) {
  if (max_rank < 2) throw PreconditionViolation("max_rank must be at least 2");
  Derivation d;
  d.procedure = std::move(procedure);
  d.max_rank = max_rank;
  d.num_summands = summands;
  d.rule = rule;
  for (Family f : kFamilies) {
    d.families.push_back(trace_family(f, max_rank, rule));
    if (d.families.back().survives) d.survivors.push_back(f);
  }
  d.near_misses = counting_near_misses();
  return d;
}

json record_json(const ClassRecord& r) {
  return {{"family", family_name(r.family)}, {"rank", r.rank}, {"dim", r.dim}};
}

}  // namespace

std::string ClassRecord::describe() const {
  if (family == Family::SpinFactor) return "SpinFactor(dim " + std::to_string(dim) + ")";
  return family_name(family) + "(" + std::to_string(rank) + ")";
}

std::size_t dim_of(Family f, std::size_t param) {
  if (param == 0) throw PreconditionViolation("rank must be positive");
  switch (f) {
    case Family::RealSym: return param * (param + 1) / 2;
    case Family::ComplexHerm: return param * param;
    case Family::QuatHerm: return param * (2 * param - 1);
    case Family::SpinFactor:
      if (param < 3) throw PreconditionViolation("spin factors need dim >= 3");
      return param;
    case Family::Albert:
      if (param != 3) throw PreconditionViolation("the Albert algebra only exists at rank 3");
      return 27;
  }
  throw PreconditionViolation("unknown family");
}

ClassRecord class_record(Family f, std::size_t param) {
  const std::size_t d = dim_of(f, param);
  return {f, f == Family::SpinFactor ? 2 : param, d};
}

std::vector<ClassRecord> records_of_rank(std::size_t rank, std::size_t spin_bound) {
  std::vector<ClassRecord> out;
  if (rank == 0) return out;
  for (Family f : {Family::RealSym, Family::ComplexHerm, Family::QuatHerm}) out.push_back(class_record(f, rank));
  if (rank == 3) out.push_back(class_record(Family::Albert, 3));
  if (rank == 2)
    for (std::size_t n = 3; n <= spin_bound; ++n) out.push_back(class_record(Family::SpinFactor, n));
  return out;
}

std::size_t spin_enumeration_bound(std::size_t max_rank) { return 4 * max_rank * max_rank * max_rank * max_rank; }

const FamilyTrace& Derivation::family(Family f) const {
  for (const auto& t : families)
    if (t.family == f) return t;
  throw PreconditionViolation("family not traced");
}

Derivation survivors_local_tomography(std::size_t max_rank) {
  return run("local-tomography", max_rank, CountingRule::Equal, 1);
}

Derivation survivors_injective_composite(std::size_t max_rank) {
  return run("injective-composite", max_rank, CountingRule::AtLeast, 1);
}

Derivation survivors_classicality(std::size_t max_rank, std::size_t num_summands) {
  if (num_summands == 0) throw PreconditionViolation("num_summands must be at least 1");
  // The unit of each copy of W is classical, hence the unit of a single simple
  // summand E of the composite; E then has rank r^2 and dim >= (dim W)^2.
  return run("classicality", max_rank, CountingRule::AtLeast, num_summands);
}

std::vector<NearMiss> counting_near_misses(std::size_t max_total_rank) {
  std::vector<ClassRecord> simples;
  for (std::size_t r = 1; r <= max_total_rank; ++r)
    for (Family f : {Family::RealSym, Family::ComplexHerm, Family::QuatHerm}) simples.push_back(class_record(f, r));
  if (max_total_rank >= 3) simples.push_back(class_record(Family::Albert, 3));
  // k copies of SpinFactor(n) match only when k n = (2 k)^2, so n <= 2 max_total_rank.
  for (std::size_t n = 3; n <= 2 * max_total_rank; ++n) simples.push_back(class_record(Family::SpinFactor, n));

  std::vector<NearMiss> out;
  for (const auto& w : simples)
    for (std::size_t k = 2; k * w.rank <= max_total_rank; ++k) {
      const std::size_t rank = k * w.rank, dim = k * w.dim;
      for (const auto& c : records_of_rank(rank * rank, 0))
        if (c.dim == dim * dim) {
          out.push_back({k, w, rank, dim, c});
          break;
        }
    }
  return out;
}

nlohmann::json Derivation::to_json() const {
  json j;
  j["procedure"] = procedure;
  j["max_rank"] = max_rank;
  if (procedure == "classicality") j["num_summands"] = num_summands;
  j["constraint"] = "exists simple E with rank(E) = rank(W)^2 and dim(E) " + rule_text(rule) + " dim(W)^2";
  json surv = json::array();
  for (Family f : survivors) surv.push_back(family_name(f));
  j["survivors"] = surv;
  json fams = json::array();
  for (const auto& t : families) {
    json cells = json::array();
    for (const auto& c : t.cells) {
      json cands = json::array();
      for (const auto& r : c.candidates) cands.push_back(record_json(r));
      cells.push_back({{"w", record_json(c.w)},
                       {"required_rank", c.required_rank},
                       {"required_dim", c.required_dim},
                       {"candidates", cands},
                       {"pass", c.pass},
                       {"reason", c.reason}});
    }
    json ft = {{"family", family_name(t.family)}, {"survives", t.survives}, {"cells", cells}};
    if (t.spin_tail)
      ft["spin_tail"] = {{"first_dim", t.spin_tail->first}, {"last_dim", t.spin_tail->last},
                         {"pass", false}, {"reason", t.spin_tail->reason}};
    if (!t.note.empty()) ft["note"] = t.note;
    fams.push_back(ft);
  }
  j["families"] = fams;
  json nm = json::array();
  for (const auto& m : near_misses)
    nm.push_back({{"copies", m.copies},
                  {"w", record_json(m.w)},
                  {"total_rank", m.total_rank},
                  {"total_dim", m.total_dim},
                  {"composite_rank", m.total_rank * m.total_rank},
                  {"composite_dim", m.total_dim * m.total_dim},
                  {"matches", record_json(m.match)}});
  j["near_misses"] = nm;
  return j;
}

std::string Derivation::to_text() const {
  std::ostringstream os;
  os << procedure << " (max rank " << max_rank;
  if (procedure == "classicality") os << ", " << num_summands << " summands";
  os << ")\n";
  os << "constraint: simple E with rank(E) = r^2 and dim(E) " << rule_text(rule) << " d^2\n";
  os << "survivors:";
  for (Family f : survivors) os << ' ' << family_name(f);
  os << '\n';
  for (const auto& t : families) {
    os << "  " << family_name(t.family) << ": " << (t.survives ? "survives" : "eliminated") << '\n';
    if (!t.note.empty()) os << "    " << t.note << '\n';
    for (const auto& c : t.cells)
      os << "    " << c.w.describe() << " r=" << c.w.rank << " d=" << c.w.dim << ": needs rank " << c.required_rank
         << ", dim " << rule_text(c.rule) << ' ' << c.required_dim << " -> " << (c.pass ? "pass" : "fail") << " ["
         << c.reason << "]\n";
    if (t.spin_tail)
      os << "    SpinFactor dims " << t.spin_tail->first << ".." << t.spin_tail->last << ": fail [" << t.spin_tail->reason
         << "]\n";
  }
  if (!near_misses.empty()) {
    os << "counting near misses (not simple, excluded only by the classicality argument):\n";
    for (const auto& m : near_misses)
      os << "  " << m.copies << " x " << m.w.describe() << ": rank " << m.total_rank << ", dim " << m.total_dim
         << "; composite rank " << m.total_rank * m.total_rank << ", dim " << m.total_dim * m.total_dim << " = "
         << m.match.describe() << '\n';
  }
  return os.str();
}

}  // namespace conelab
