#include "conelab/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "conelab/errors.hpp"
#include "conelab/exact_lp.hpp"
#include "conelab/json_util.hpp"
#include "conelab/shared_corner.hpp"

namespace conelab {

namespace {

using nlohmann::json;

// A Jordan-algebraic cone seen through a linear change of coordinates
// x = T y, y in the algebra's positive cone.
struct EjaView {
  const JordanAlgebra* alg = nullptr;
  Matrix t;
  Matrix t_inverse;
};

std::optional<EjaView> eja_view(const ConeModel& cone) {
  if (cone.kind() == ConeKind::Eja) {
    const auto n = static_cast<Eigen::Index>(cone.dim());
    return EjaView{&cone.algebra(), Matrix::Identity(n, n), Matrix::Identity(n, n)};
  }
  if (cone.kind() == ConeKind::Transformed) {
    auto inner = eja_view(cone.base());
    if (!inner) return std::nullopt;
    inner->t = cone.transform() * inner->t;
    inner->t_inverse = inner->t_inverse * cone.transform_inverse();
    return inner;
  }
  return std::nullopt;
}

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

double rel_residual(const Vector& a, const Vector& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

void require_pure(const System& sys, const Vector& w, double tol, const char* which) {
  check_dim(sys.cone, w, which);
  if (std::abs(sys.unit.dot(w) - 1.0) > 1e-8)
    throw PreconditionViolation(std::string(which) + " is not normalized (unit value " +
                                std::to_string(sys.unit.dot(w)) + ")");
  if (!membership(sys.cone, w, tol) || !is_extremal_ray(sys.cone, w, tol))
    throw PreconditionViolation(std::string(which) + " is not a pure state");
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Inconclusive: return "inconclusive";
    case Status::Unsupported: return "unsupported";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

Status parse_status(const std::string& s) {
  for (Status st : {Status::Holds, Status::Fails, Status::Inconclusive, Status::Unsupported, Status::Skipped})
    if (status_name(st) == s) return st;
  throw ParseError("unknown verdict status '" + s + "'");
}

std::string outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found: return "found";
    case SearchOutcome::Infeasible: return "infeasible";
    case SearchOutcome::Undecided: return "undecided";
    case SearchOutcome::SearchSpaceExceeded: return "search-space-exceeded";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Self-duality

AxiomVerdict check_self_dual(const System& sys, const Matrix& inner, double tol, std::uint64_t seed,
                             std::size_t samples) {
  AxiomVerdict v;
  v.axiom = "self-dual";
  const auto n = static_cast<Eigen::Index>(sys.dim());
  if (inner.rows() != n || inner.cols() != n) throw DimensionMismatch("inner product", sys.dim(), inner.rows());
  if (max_abs(inner - inner.transpose()) > 1e-12 * std::max(1.0, max_abs(inner)) ||
      inner.llt().info() != Eigen::Success)
    throw PreconditionViolation("inner product must be symmetric positive definite");

  const ConeKind kind = sys.cone.kind();
  if (kind == ConeKind::MaxTensor) {
    v.status = Status::Unsupported;
    v.certificate["reason"] = "no dual description for a non-polyhedral max tensor";
    return v;
  }

  if (kind == ConeKind::Polyhedral) {
    const auto& p = sys.cone.polyhedral_cone();
    if (!p.full_dimensional() || !p.pointed()) {
      v.status = Status::Unsupported;
      v.certificate["reason"] = "exact check needs a full-dimensional pointed cone";
      return v;
    }
    const RMatrix g = exact(inner);
    const auto& rays = p.rays();
    v.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rays.size(); ++i)
      for (std::size_t j = i; j < rays.size(); ++j) {
        const Rational ip = dot(rays[i], g * rays[j]);
        const Vector a = to_double(rays[i]), b = to_double(rays[j]);
        v.margin = std::min(v.margin, to_double(ip) / (a.norm() * b.norm()));
        if (ip < 0) {
          v.status = Status::Fails;
          v.violation = {{"kind", "cone not contained in its dual"},
                         {"x", to_json(rays[i])},
                         {"y", to_json(rays[j])},
                         {"inner", to_json(ip)}};
          return v;
        }
      }
    // The dual for <.,.>_G is G^{-1} C*, spanned by G^{-1} n over facet normals n.
    const auto& facets = p.facets();
    for (const auto& f : facets) {
      const auto y = solve(g, f);
      if (!y || !p.contains(*y)) {
        v.status = Status::Fails;
        v.violation = {{"kind", "dual not contained in cone"}, {"dual_generator", to_json(f)}};
        if (y) v.violation["preimage"] = to_json(*y);
        return v;
      }
    }
    v.status = Status::Holds;
    v.witness = inner;
    v.certificate = {{"method", "exact"},
                     {"ray_pairs_checked", rays.size() * (rays.size() + 1) / 2},
                     {"facets_checked", facets.size()}};
    return v;
  }

  Rng rng(seed);
  const auto ex = extremal_samples(sys.cone, samples, rng);
  v.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ex.size(); ++i)
    for (std::size_t j = i; j < ex.size(); ++j) {
      const double ip = ex[i].dot(inner * ex[j]) / (ex[i].norm() * ex[j].norm());
      v.margin = std::min(v.margin, ip);
      if (ip < -tol) {
        v.status = Status::Fails;
        v.violation = {{"kind", "cone not contained in its dual"},
                       {"x", to_json(ex[i])},
                       {"y", to_json(ex[j])},
                       {"inner", stable(ip)}};
        return v;
      }
    }
  const auto llt = inner.llt();
  for (const Vector& f : dual_extremal_samples(sys.cone, samples, rng)) {
    const Vector y = llt.solve(f);
    const double m = margin(sys.cone, y) / y.norm();
    v.margin = std::min(v.margin, m);
    if (m < -tol) {
      v.status = Status::Fails;
      v.violation = {{"kind", "dual not contained in cone"},
                     {"dual_element", to_json(f)},
                     {"preimage", to_json(y)},
                     {"preimage_margin", stable(m)}};
      return v;
    }
  }
  v.certificate = {{"method", "sampled"}, {"extremals", ex.size()}, {"dual_extremals", samples}};
  if (eja_view(sys.cone)) {
    v.status = Status::Holds;
    v.witness = inner;
  } else {
    v.status = Status::Inconclusive;
    v.certificate["reason"] = "dual inclusion is not certifiable by sampling for this cone";
  }
  return v;
}

namespace {

struct SearchData {
  std::size_t d = 0;
  std::size_t m = 0;
  std::vector<RVector> rays;
  std::vector<RVector> facets;
  std::vector<std::vector<bool>> incident;  // ray i on facet j
  std::vector<std::vector<bool>> ray_adjacent;
  std::vector<std::vector<bool>> facet_adjacent;
};

std::size_t rank_of(const std::vector<RVector>& rows, std::size_t d) {
  if (rows.empty()) return 0;
  return rank(RMatrix::from_rows(rows, d));
}

SearchData prepare(const PolyhedralCone& cone) {
  SearchData s;
  s.d = cone.dim();
  s.rays = cone.rays();
  s.facets = cone.facets();
  s.m = s.rays.size();
  const std::size_t f = s.facets.size();
  s.incident.assign(s.m, std::vector<bool>(f));
  for (std::size_t i = 0; i < s.m; ++i)
    for (std::size_t j = 0; j < f; ++j) s.incident[i][j] = dot(s.rays[i], s.facets[j]) == 0;
  // Two rays span an edge iff their common facets cut out a 2-dimensional face.
  s.ray_adjacent.assign(s.m, std::vector<bool>(s.m));
  for (std::size_t i = 0; i < s.m; ++i)
    for (std::size_t k = i + 1; k < s.m; ++k) {
      std::vector<RVector> common;
      for (std::size_t j = 0; j < f; ++j)
        if (s.incident[i][j] && s.incident[k][j]) common.push_back(s.facets[j]);
      s.ray_adjacent[i][k] = s.ray_adjacent[k][i] = rank_of(common, s.d) + 2 == s.d;
    }
  // Facets are the rays of the dual cone; adjacency there is a shared ridge.
  s.facet_adjacent.assign(f, std::vector<bool>(f));
  for (std::size_t j = 0; j < f; ++j)
    for (std::size_t l = j + 1; l < f; ++l) {
      std::vector<RVector> common;
      for (std::size_t i = 0; i < s.m; ++i)
        if (s.incident[i][j] && s.incident[i][l]) common.push_back(s.rays[i]);
      s.facet_adjacent[j][l] = s.facet_adjacent[l][j] = rank_of(common, s.d) + 2 == s.d;
    }
  return s;
}

RMatrix map_from_solution(const SearchData& s, const RVector& sol, bool symmetric) {
  RMatrix t(s.d, s.d);
  std::size_t k = 0;
  if (symmetric) {
    for (std::size_t a = 0; a < s.d; ++a)
      for (std::size_t b = a; b < s.d; ++b) {
        t(a, b) = sol[k];
        t(b, a) = sol[k];
        ++k;
      }
  } else {
    for (std::size_t a = 0; a < s.d; ++a)
      for (std::size_t b = 0; b < s.d; ++b) t(a, b) = sol[k++];
  }
  return t;
}

// Solves T r_i = mu_i n_sigma(i) for one bijection. Returns the outcome word
// and, when found, the map.
std::string solve_bijection(const SearchData& s, const std::vector<std::size_t>& sigma, bool symmetric,
                            std::size_t& solution_dim, std::optional<RMatrix>& found) {
  const std::size_t d = s.d;
  const std::size_t tvars = symmetric ? d * (d + 1) / 2 : d * d;
  const std::size_t nvars = tvars + s.m;
  RMatrix a(d * s.m, nvars);
  auto tindex = [&](std::size_t r, std::size_t c) {
    if (!symmetric) return r * d + c;
    const std::size_t lo = std::min(r, c), hi = std::max(r, c);
    return lo * d - lo * (lo - 1) / 2 + (hi - lo);
  };
  for (std::size_t i = 0; i < s.m; ++i)
    for (std::size_t r = 0; r < d; ++r) {
      const std::size_t row = i * d + r;
      for (std::size_t c = 0; c < d; ++c) a(row, tindex(r, c)) += s.rays[i][c];
      a(row, tvars + i) = -s.facets[sigma[i]][r];
    }
  const auto ns = nullspace(a);
  solution_dim = ns.size();
  if (ns.empty()) return "no-solution";

  const std::size_t k = ns.size();
  auto mu_of = [&](const RVector& sol) {
    RVector mu(sol.begin() + static_cast<std::ptrdiff_t>(tvars), sol.end());
    return mu;
  };
  auto all_positive = [](const RVector& mu) {
    return std::all_of(mu.begin(), mu.end(), [](const Rational& x) { return x > 0; });
  };
  auto accept = [&](const RVector& sol) {
    const RMatrix t = map_from_solution(s, sol, symmetric);
    return symmetric ? is_positive_definite(t) : determinant(t) != 0;
  };

  RVector candidate;
  if (k == 1) {
    const RVector& v = ns.front();
    if (all_positive(mu_of(v)))
      candidate = v;
    else if (all_positive(mu_of(scale(v, -1))))
      candidate = scale(v, -1);
    else
      return "sign-infeasible";
    if (accept(candidate)) {
      found = map_from_solution(s, candidate, symmetric);
      return "found";
    }
    return symmetric ? "indefinite" : "singular";
  }

  // Several directions: find coefficients c with mu(c) >= 1 by an exact LP over
  // c = c+ - c-, then test that point and a few perturbations along the basis.
  RMatrix lp(s.m, 2 * k + s.m);
  RVector rhs(s.m, Rational(1));
  for (std::size_t i = 0; i < s.m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      lp(i, j) = ns[j][tvars + i];
      lp(i, k + j) = -ns[j][tvars + i];
    }
    lp(i, 2 * k + i) = -1;
  }
  const auto res = solve_standard_lp(lp, rhs);
  if (res.status != LpStatus::Optimal) return "sign-infeasible";
  RVector sol(nvars);
  for (std::size_t j = 0; j < k; ++j) sol = add(sol, scale(ns[j], res.x[j] - res.x[k + j]));
  if (accept(sol)) {
    found = map_from_solution(s, sol, symmetric);
    return "found";
  }
  for (std::size_t j = 0; j < k; ++j)
    for (const Rational& eps : {Rational(1, 7), Rational(-1, 7), Rational(1, 1000), Rational(-1, 1000)}) {
      const RVector trial = add(sol, scale(ns[j], eps));
      if (all_positive(mu_of(trial)) && accept(trial)) {
        found = map_from_solution(s, trial, symmetric);
        return "found";
      }
    }
  return "undecided";
}

DualitySearch run_search(const PolyhedralCone& cone, const SearchOptions& opts, bool symmetric) {
  if (!cone.full_dimensional() || !cone.pointed())
    throw PreconditionViolation("self-duality search needs a full-dimensional pointed cone");
  DualitySearch out;
  out.rays = cone.rays();
  out.facets = cone.facets();
  const std::size_t m = out.rays.size();
  if (out.facets.size() != m) {
    out.outcome = SearchOutcome::Infeasible;
    if (m <= opts.max_rays) out.total_bijections = out.pruned_by_incidence = factorial(m);
    out.note = "a linear isomorphism onto the dual maps rays onto dual rays (facet normals), but there are " +
               std::to_string(m) + " rays and " + std::to_string(out.facets.size()) + " facets";
    return out;
  }
  if (m > opts.max_rays) {
    out.outcome = SearchOutcome::SearchSpaceExceeded;
    out.note = std::to_string(m) + " rays exceed the search cap of " + std::to_string(opts.max_rays);
    return out;
  }
  out.total_bijections = factorial(m);
  const SearchData s = prepare(cone);

  bool undecided = false;
  std::vector<std::size_t> sigma(m);
  std::vector<bool> used(m, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t level) -> bool {
    if (level == m) {
      BijectionRecord rec;
      rec.facet_of_ray = sigma;
      std::optional<RMatrix> found;
      rec.outcome = solve_bijection(s, sigma, symmetric, rec.solution_dim, found);
      out.bijections.push_back(rec);
      if (found) {
        out.map = std::move(found);
        return true;
      }
      undecided = undecided || rec.outcome == "undecided";
      return false;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      bool ok = true;
      if (opts.use_incidence) {
        for (std::size_t prev = 0; prev < level && ok; ++prev) {
          ok = s.ray_adjacent[level][prev] == s.facet_adjacent[j][sigma[prev]];
          if (ok && symmetric) ok = s.incident[level][sigma[prev]] == s.incident[prev][j];
        }
      }
      if (!ok) {
        out.pruned_by_incidence += factorial(m - level - 1);
        continue;
      }
      sigma[level] = j;
      used[j] = true;
      const bool done = assign(level + 1);
      used[j] = false;
      if (done) return true;
    }
    return false;
  };
  if (assign(0))
    out.outcome = SearchOutcome::Found;
  else
    out.outcome = undecided ? SearchOutcome::Undecided : SearchOutcome::Infeasible;
  return out;
}

}  // namespace

nlohmann::json DualitySearch::to_json() const {
  json j;
  j["outcome"] = outcome_name(outcome);
  j["total_bijections"] = total_bijections;
  j["pruned_by_incidence"] = pruned_by_incidence;
  j["solved"] = bijections.size();
  json counts = json::object();
  for (const auto& b : bijections) counts[b.outcome] = counts.value(b.outcome, 0) + 1;
  j["outcome_counts"] = counts;
  j["rays"] = conelab::to_json(RMatrix::from_rows(rays, rays.empty() ? 0 : rays.front().size()));
  if (!facets.empty()) j["facets"] = conelab::to_json(RMatrix::from_rows(facets, facets.front().size()));
  auto list = json::array();
  for (const auto& b : bijections)
    list.push_back({{"facet_of_ray", b.facet_of_ray}, {"outcome", b.outcome}, {"solution_dim", b.solution_dim}});
  j["bijections"] = list;
  if (map) j["map"] = conelab::to_json(*map);
  if (!note.empty()) j["note"] = note;
  return j;
}

DualitySearch search_spd_self_duality(const PolyhedralCone& cone, const SearchOptions& opts) {
  return run_search(cone, opts, true);
}

DualitySearch search_weak_self_duality(const PolyhedralCone& cone, const SearchOptions& opts) {
  return run_search(cone, opts, false);
}

bool verify_duality_map(const PolyhedralCone& cone, const RMatrix& t, bool require_spd) {
  const auto d = cone.dim();
  if (t.rows() != d || t.cols() != d) return false;
  if (require_spd && (!(t == t.transpose()) || !is_positive_definite(t))) return false;
  if (determinant(t) == 0) return false;
  const auto& facets = cone.facets();
  if (facets.size() != cone.rays().size()) return false;
  std::vector<bool> hit(facets.size(), false);
  for (const auto& r : cone.rays()) {
    const RVector img = t * r;
    bool matched = false;
    for (std::size_t j = 0; j < facets.size() && !matched; ++j)
      if (!hit[j] && positively_parallel(img, facets[j])) hit[j] = matched = true;
    if (!matched) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Homogeneity

namespace {

Matrix homogeneity_matrix(const ConeModel& cone, const Vector& rho, const Vector& sigma) {
  switch (cone.kind()) {
    case ConeKind::Eja: {
      const JordanAlgebra& alg = cone.algebra();
      const Vector root_sigma = alg.apply(sigma, [](double v) { return std::sqrt(v); });
      const Vector inv_root_rho = alg.apply(rho, [](double v) { return 1.0 / std::sqrt(v); });
      return alg.quadratic_rep(root_sigma) * alg.quadratic_rep(inv_root_rho);
    }
    case ConeKind::Transformed: {
      const Matrix base = homogeneity_matrix(cone.base(), cone.transform_inverse() * rho,
                                             cone.transform_inverse() * sigma);
      return cone.transform() * base * cone.transform_inverse();
    }
    case ConeKind::SharedCorner: {
      const Matrix to_sigma = shared_corner::lower_action_to(sigma);
      const Matrix to_rho = shared_corner::lower_action_to(rho);
      return to_sigma * to_rho.inverse();
    }
    case ConeKind::Polyhedral: {
      const auto& p = cone.polyhedral_cone();
      if (!p.simplicial()) throw Unsupported("no witness constructor for a non-simplicial polyhedral cone");
      // Diagonal scaling in the ray basis.
      const Matrix r = p.rays_f().transpose();
      const Eigen::PartialPivLU<Matrix> lu(r);
      const Vector a = lu.solve(rho);
      const Vector b = lu.solve(sigma);
      return r * (b.array() / a.array()).matrix().asDiagonal() * lu.inverse();
    }
    case ConeKind::MaxTensor: break;
  }
  throw Unsupported("no homogeneity witness constructor for this cone");
}

}  // namespace

PositiveMap homogeneity_witness(const System& sys, const Vector& rho, const Vector& sigma, double tol) {
  check_dim(sys.cone, rho, "rho");
  check_dim(sys.cone, sigma, "sigma");
  if (sys.cone.kind() == ConeKind::MaxTensor) throw Unsupported("no homogeneity witness constructor for this cone");
  if (!(margin(sys.cone, rho) > tol) || !(margin(sys.cone, sigma) > tol))
    throw PreconditionViolation("homogeneity witness needs strictly interior points");
  return PositiveMap{homogeneity_matrix(sys.cone, rho, sigma), sys, sys, false};
}

std::size_t stabilizer_algebra_dim(const PolyhedralCone& cone) {
  const std::size_t d = cone.dim();
  const auto& rays = cone.rays();
  const std::size_t m = rays.size();
  RMatrix a(d * m, d * d + m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) a(i * d + r, r * d + c) = rays[i][c];
      a(i * d + r, d * d + i) = -rays[i][r];
    }
  // lambda_i is determined by T because r_i != 0, so the solution space is the algebra.
  return nullspace(a).size();
}

AxiomVerdict check_homogeneous(const System& sys, std::uint64_t seed, std::size_t pairs, double tol) {
  AxiomVerdict v;
  v.axiom = "homogeneous";
  if (sys.cone.kind() == ConeKind::MaxTensor) {
    v.status = Status::Unsupported;
    v.certificate["reason"] = "no witness constructor or invariant for a non-polyhedral max tensor";
    return v;
  }
  if (sys.cone.kind() == ConeKind::Polyhedral && !sys.cone.polyhedral_cone().simplicial()) {
    const auto& p = sys.cone.polyhedral_cone();
    if (!p.full_dimensional()) {
      v.status = Status::Unsupported;
      v.certificate["reason"] = "cone is not full-dimensional";
      return v;
    }
    const std::size_t k = stabilizer_algebra_dim(p);
    if (k < p.dim()) {
      v.status = Status::Fails;
      v.violation = {{"invariant", "automorphism Lie algebra dimension"},
                     {"value", k},
                     {"dim", p.dim()},
                     {"reason",
                      "the identity component of the automorphism group fixes every extremal ray, so its orbits "
                      "have dimension at most the stabilizer algebra dimension, below the cone dimension"}};
      return v;
    }
    v.status = Status::Inconclusive;
    v.certificate["stabilizer_algebra_dim"] = k;
    return v;
  }

  Rng rng(seed);
  double worst = 0.0;
  double worst_iso = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vector rho = random_interior(sys, rng);
    const Vector sigma = random_interior(sys, rng);
    const PositiveMap phi = homogeneity_witness(sys, rho, sigma, 0.0);
    const double res = rel_residual(phi.matrix * rho, sigma);
    const IsoVerdict iso = is_order_isomorphism(phi, tol, 100, seed + k);
    worst = std::max(worst, res);
    worst_iso = std::min(worst_iso, iso.margin);
    if (k == 0) {
      v.witness = phi.matrix;
      v.certificate["rho"] = to_json(rho);
      v.certificate["sigma"] = to_json(sigma);
    }
    if (!iso.holds || res > tol) {
      // A failed constructor is not a disproof.
      v.status = Status::Inconclusive;
      v.certificate["constructor_failure"] = iso.holds ? "residual above tolerance" : iso.reason;
      v.margin = res;
      return v;
    }
  }
  v.status = Status::Holds;
  v.margin = worst;
  v.certificate["method"] = "explicit witnesses on random interior pairs";
  v.certificate["pairs"] = pairs;
  v.certificate["max_residual"] = stable(worst);
  return v;
}

Reversibility probabilistic_inverse(const PositiveMap& phi, std::uint64_t seed) {
  Reversibility r;
  const Matrix inv = phi.matrix.inverse();
  const Vector pulled = inv.transpose() * phi.source.unit;  // omega -> u_source(Phi^{-1} omega)
  double worst = 0.0;
  if (phi.target.cone.kind() == ConeKind::Eja &&
      (phi.target.unit - phi.target.cone.algebra().trace_functional()).cwiseAbs().maxCoeff() < 1e-12) {
    // Maximum over the base of a linear functional is its largest eigenvalue.
    const JordanAlgebra& alg = phi.target.cone.algebra();
    const auto sd = alg.spectral(alg.gram().ldlt().solve(pulled));
    worst = *std::max_element(sd.eigenvalues.begin(), sd.eigenvalues.end());
  } else {
    Rng rng(seed);
    for (const Vector& w : pure_states(phi.target, 400, rng)) worst = std::max(worst, pulled.dot(w));
  }
  r.p = 1.0 / worst;
  r.sharp = r.p * inv;
  const auto n = phi.matrix.cols();
  r.residual = max_abs(r.sharp * phi.matrix - r.p * Matrix::Identity(n, n));
  return r;
}

// ---------------------------------------------------------------------------
// Pure transitivity

namespace {

// Block permutation exchanging two isomorphic summands.
Matrix summand_swap(const JordanAlgebra& alg, std::size_t s, std::size_t t) {
  const auto n = static_cast<Eigen::Index>(alg.dim());
  Matrix p = Matrix::Identity(n, n);
  if (s == t) return p;
  const auto d = static_cast<Eigen::Index>(alg.summands()[s].dim());
  const auto os = static_cast<Eigen::Index>(alg.offset(s));
  const auto ot = static_cast<Eigen::Index>(alg.offset(t));
  p.block(os, os, d, d).setZero();
  p.block(ot, ot, d, d).setZero();
  p.block(ot, os, d, d) = Matrix::Identity(d, d);
  p.block(os, ot, d, d) = Matrix::Identity(d, d);
  return p;
}

Matrix embed_block(const JordanAlgebra& alg, std::size_t s, const Matrix& local) {
  const auto n = static_cast<Eigen::Index>(alg.dim());
  Matrix m = Matrix::Identity(n, n);
  const auto o = static_cast<Eigen::Index>(alg.offset(s));
  m.block(o, o, local.rows(), local.cols()) = local;
  return m;
}

std::size_t owning_summand(const JordanAlgebra& alg, const Vector& y) {
  const auto s = alg.support_summand(y, 1e-9 * std::max(1.0, y.norm()));
  if (!s) throw PreconditionViolation("pure state is not supported in a single summand");
  return *s;
}

json summand_json(const JordanAlgebra& alg, std::size_t s) {
  const auto& f = alg.summands()[s];
  return {{"index", s}, {"type", f.describe()}, {"rank", f.rank()}, {"dim", f.dim()}};
}

AxiomVerdict eja_pure_witness(const System& sys, const EjaView& view, const Vector& w1, const Vector& w2) {
  AxiomVerdict v;
  v.axiom = "pure-transitive";
  const JordanAlgebra& alg = *view.alg;
  const Vector y1 = view.t_inverse * w1;
  const Vector y2 = view.t_inverse * w2;
  const std::size_t s1 = owning_summand(alg, y1);
  const std::size_t s2 = owning_summand(alg, y2);
  const auto& f1 = alg.summands()[s1];
  const auto& f2 = alg.summands()[s2];
  if (!f1.isomorphic_to(f2)) {
    v.status = Status::Fails;
    v.violation = {{"invariant", "summand type"},
                   {"summand_1", summand_json(alg, s1)},
                   {"summand_2", summand_json(alg, s2)},
                   {"reason",
                    "order isomorphisms permute the simple summands and preserve their type, so a pure state of "
                    "one type is never sent into a summand of another type"}};
    return v;
  }
  const Matrix swap = summand_swap(alg, s1, s2);
  const Vector moved = swap * y1;
  const PureRotation rot(f2, alg.block(moved, s2), alg.block(y2, s2));
  const Matrix base = embed_block(alg, s2, rot.at(1.0)) * swap;
  const Matrix phi = view.t * base * view.t_inverse;
  const double res = rel_residual(phi * w1, w2);
  const double norm_err = (phi.transpose() * sys.unit - sys.unit).cwiseAbs().maxCoeff();
  const IsoVerdict iso = is_order_isomorphism({phi, sys, sys, true}, kWitnessTol, 60, 17);
  v.witness = phi;
  v.margin = res;
  v.certificate = {{"method", s1 == s2 ? "rotation within one summand" : "summand swap then rotation"},
                   {"summand_1", summand_json(alg, s1)},
                   {"summand_2", summand_json(alg, s2)},
                   {"residual", stable(res)},
                   {"unit_error", stable(norm_err)},
                   {"condition_number", stable(iso.condition_number)}};
  v.status = (iso.holds && res < kWitnessTol && norm_err < kWitnessTol) ? Status::Holds : Status::Inconclusive;
  if (v.status != Status::Holds) v.certificate["constructor_failure"] = iso.holds ? "residual" : iso.reason;
  return v;
}

std::optional<std::size_t> match_ray(const std::vector<Vector>& normalized_rays, const Vector& w) {
  for (std::size_t i = 0; i < normalized_rays.size(); ++i)
    if ((normalized_rays[i] - w).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, w.cwiseAbs().maxCoeff())) return i;
  return std::nullopt;
}

// Orbits of the normalized automorphism group on the rays, by ray index.
std::vector<std::vector<std::size_t>> ray_orbits(const PolyhedralCone& cone, const std::vector<RMatrix>& group,
                                                 const Vector& unit) {
  const auto& rays = cone.rays();
  const RVector u = exact(unit);
  std::vector<RVector> normalized;
  for (const auto& r : rays) normalized.push_back(scale(r, 1 / dot(u, r)));
  std::vector<std::size_t> parent(rays.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& t : group)
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const RVector img = t * normalized[i];
      for (std::size_t k = 0; k < rays.size(); ++k)
        if (img == normalized[k]) parent[find(i)] = find(k);
    }
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::ptrdiff_t> slot(rays.size(), -1);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(orbits.size());
      orbits.emplace_back();
    }
    orbits[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return orbits;
}

std::vector<Vector> normalized_rays(const System& sys) {
  std::vector<Vector> out;
  const Matrix& r = sys.cone.polyhedral_cone().rays_f();
  for (Eigen::Index i = 0; i < r.rows(); ++i) out.push_back(r.row(i).transpose() / sys.unit.dot(r.row(i)));
  return out;
}

AxiomVerdict polyhedral_pure_witness(const System& sys, const Vector& w1, const Vector& w2) {
  AxiomVerdict v;
  v.axiom = "pure-transitive";
  const auto& p = sys.cone.polyhedral_cone();
  const auto rays = normalized_rays(sys);
  const auto i1 = match_ray(rays, w1);
  const auto i2 = match_ray(rays, w2);
  if (!i1 || !i2) throw PreconditionViolation("pure states must be normalized extremal rays");
  const auto group = polyhedral_automorphisms(p, sys.unit);
  if (!group) {
    v.status = Status::Unsupported;
    v.certificate["reason"] = "automorphism enumeration exceeds its assignment cap";
    return v;
  }
  const RVector u = exact(sys.unit);
  const RVector n1 = scale(p.rays()[*i1], 1 / dot(u, p.rays()[*i1]));
  const RVector n2 = scale(p.rays()[*i2], 1 / dot(u, p.rays()[*i2]));
  for (const auto& t : *group)
    if (t * n1 == n2) {
      v.status = Status::Holds;
      v.witness = to_double(t);
      v.certificate = {{"method", "exact automorphism enumeration"},
                       {"group_order", group->size()},
                       {"map", to_json(t)}};
      return v;
    }
  const auto orbits = ray_orbits(p, *group, sys.unit);
  v.status = Status::Fails;
  v.violation = {{"invariant", "automorphism orbit"},
                 {"group_order", group->size()},
                 {"orbits", orbits},
                 {"ray_1", *i1},
                 {"ray_2", *i2},
                 {"reason", "exhaustive enumeration of normalized automorphisms finds none sending ray_1 to ray_2"}};
  return v;
}

AxiomVerdict shared_corner_pure_witness(const System& sys, const Vector& w1, const Vector& w2) {
  AxiomVerdict v;
  v.axiom = "pure-transitive";
  const std::size_t f1 = face_profile(sys, w1);
  const std::size_t f2 = face_profile(sys, w2);
  if (f1 != f2) {
    v.status = Status::Fails;
    v.violation = {{"invariant", "face profile"},
                   {"profile_1", f1},
                   {"profile_2", f2},
                   {"samples", 200},
                   {"reason",
                    "normalized order isomorphisms permute pure states and preserve face dimensions, so they "
                    "preserve the largest face dimension of w + sigma over pure sigma"}};
    return v;
  }
  const Matrix swap = shared_corner::block_swap();
  for (const Matrix& phi : {Matrix(Matrix::Identity(5, 5)), swap})
    if (rel_residual(phi * w1, w2) < 1e-12) {
      v.status = Status::Holds;
      v.witness = phi;
      v.certificate = {{"method", "identity or block exchange"}};
      return v;
    }
  v.status = Status::Inconclusive;
  v.certificate = {{"profile", f1}, {"reason", "equal face profiles and no explicit witness"}};
  return v;
}

}  // namespace

std::optional<std::vector<RMatrix>> polyhedral_automorphisms(const PolyhedralCone& cone, const Vector& unit,
                                                             std::size_t cap) {
  if (!cone.full_dimensional()) throw PreconditionViolation("automorphism enumeration needs a full-dimensional cone");
  const std::size_t d = cone.dim();
  const auto& rays = cone.rays();
  const std::size_t m = rays.size();
  const RVector u = exact(unit);
  std::vector<RVector> normalized;
  for (const auto& r : rays) {
    const Rational ur = dot(u, r);
    if (ur <= 0) throw PreconditionViolation("unit must be positive on every ray");
    normalized.push_back(scale(r, 1 / ur));
  }
  // Greedy basis among the rays.
  std::vector<std::size_t> basis;
  std::vector<RVector> chosen;
  for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
    chosen.push_back(normalized[i]);
    if (rank(RMatrix::from_rows(chosen, d)) == chosen.size())
      basis.push_back(i);
    else
      chosen.pop_back();
  }
  std::size_t assignments = 1;
  for (std::size_t k = 0; k < d; ++k) {
    assignments *= (m - k);
    if (assignments > cap) return std::nullopt;
  }
  const auto binv = inverse(RMatrix::from_columns(chosen, d));
  std::vector<RMatrix> group;
  std::vector<std::size_t> image(d);
  std::vector<bool> used(m, false);
  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    if (level == d) {
      std::vector<RVector> cols;
      for (auto k : image) cols.push_back(normalized[k]);
      const RMatrix t = RMatrix::from_columns(cols, d) * *binv;
      std::vector<bool> hit(m, false);
      for (std::size_t i = 0; i < m; ++i) {
        const RVector img = t * normalized[i];
        bool found = false;
        for (std::size_t k = 0; k < m && !found; ++k)
          if (!hit[k] && img == normalized[k]) hit[k] = found = true;
        if (!found) return;
      }
      group.push_back(t);
      return;
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (used[k]) continue;
      used[k] = true;
      image[level] = k;
      rec(level + 1);
      used[k] = false;
    }
  };
  rec(0);
  return group;
}

std::size_t face_profile(const System& sys, const Vector& w, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t best = 0;
  for (const Vector& s : pure_states(sys, samples, rng)) best = std::max(best, face_dimension(sys.cone, w + s));
  return best;
}

AxiomVerdict pure_transitivity_witness(const System& sys, const Vector& w1, const Vector& w2, double tol) {
  if (sys.cone.kind() == ConeKind::MaxTensor) {
    AxiomVerdict v;
    v.axiom = "pure-transitive";
    v.status = Status::Unsupported;
    v.certificate["reason"] = "pure states of a non-polyhedral max tensor are not enumerable";
    return v;
  }
  require_pure(sys, w1, tol, "w1");
  require_pure(sys, w2, tol, "w2");
  if (auto view = eja_view(sys.cone)) return eja_pure_witness(sys, *view, w1, w2);
  if (sys.cone.kind() == ConeKind::Polyhedral) return polyhedral_pure_witness(sys, w1, w2);
  if (sys.cone.kind() == ConeKind::SharedCorner) return shared_corner_pure_witness(sys, w1, w2);
  throw Unsupported("no pure-transitivity procedure for this cone");
}

namespace {

Vector normalized(const System& sys, const Vector& x) { return x / sys.unit.dot(x); }

// Pure states of two different summands (first pair of non-isomorphic ones if any).
std::optional<std::pair<Vector, Vector>> cross_summand_pair(const System& sys, const EjaView& view, Rng& rng,
                                                            bool prefer_non_isomorphic) {
  const auto& alg = *view.alg;
  const auto& s = alg.summands();
  if (s.size() < 2) return std::nullopt;
  std::size_t a = 0, b = 1;
  if (prefer_non_isomorphic) {
    bool found = false;
    for (std::size_t i = 0; i < s.size() && !found; ++i)
      for (std::size_t j = i + 1; j < s.size() && !found; ++j)
        if (!s[i].isomorphic_to(s[j])) {
          a = i;
          b = j;
          found = true;
        }
  }
  return std::make_pair(normalized(sys, view.t * alg.random_pure_in(a, rng)),
                        normalized(sys, view.t * alg.random_pure_in(b, rng)));
}

bool all_isomorphic(const JordanAlgebra& alg) {
  const auto& s = alg.summands();
  return std::all_of(s.begin(), s.end(), [&](const SimpleFactor& f) { return f.isomorphic_to(s.front()); });
}

Vector sc_normalized(const Vector& x) { return x / shared_corner::unit().dot(x); }

}  // namespace

AxiomVerdict check_pure_transitive(const System& sys, std::uint64_t seed, std::size_t pairs) {
  Rng rng(seed);
  if (auto view = eja_view(sys.cone)) {
    if (!all_isomorphic(*view->alg)) {
      const auto pr = cross_summand_pair(sys, *view, rng, true);
      return pure_transitivity_witness(sys, pr->first, pr->second);
    }
    AxiomVerdict last;
    double worst = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
      auto ps = pure_states(sys, 2, rng);
      if (k == 0) {
        if (auto pr = cross_summand_pair(sys, *view, rng, false)) ps = {pr->first, pr->second};
      }
      AxiomVerdict v = pure_transitivity_witness(sys, ps[0], ps[1]);
      if (v.status != Status::Holds) return v;
      worst = std::max(worst, v.margin);
      if (k == 0) last = v;
    }
    last.margin = worst;
    last.certificate["pairs"] = pairs;
    last.certificate["max_residual"] = stable(worst);
    return last;
  }
  switch (sys.cone.kind()) {
    case ConeKind::Polyhedral: {
      AxiomVerdict v;
      v.axiom = "pure-transitive";
      const auto& p = sys.cone.polyhedral_cone();
      if (!p.full_dimensional()) {
        v.status = Status::Unsupported;
        v.certificate["reason"] = "cone is not full-dimensional";
        return v;
      }
      const auto group = polyhedral_automorphisms(p, sys.unit);
      if (!group) {
        v.status = Status::Unsupported;
        v.certificate["reason"] = "automorphism enumeration exceeds its assignment cap";
        v.certificate["rays"] = p.rays().size();
        return v;
      }
      const auto orbits = ray_orbits(p, *group, sys.unit);
      const auto rays = normalized_rays(sys);
      if (orbits.size() == 1) {
        v = rays.size() > 1 ? polyhedral_pure_witness(sys, rays[0], rays[1]) : polyhedral_pure_witness(sys, rays[0], rays[0]);
        v.certificate["orbits"] = orbits;
        return v;
      }
      return polyhedral_pure_witness(sys, rays[orbits[0][0]], rays[orbits[1][0]]);
    }
    case ConeKind::SharedCorner:
      // Designated pair: a corner ray against a ray from the two-parameter family.
      return pure_transitivity_witness(sys, sc_normalized(shared_corner::corner_ray(2)),
                                       sc_normalized(shared_corner::generic_ray(0, 0)));
    default: {
      AxiomVerdict v;
      v.axiom = "pure-transitive";
      v.status = Status::Unsupported;
      v.certificate["reason"] = "pure states of a non-polyhedral max tensor are not enumerable";
      return v;
    }
  }
}

PurePath continuous_pure_transitivity(const System& sys, const Vector& w1, const Vector& w2, std::size_t steps,
                                      double tol) {
  if (steps == 0) throw PreconditionViolation("a path needs at least one step");
  PurePath path;
  if (sys.cone.kind() == ConeKind::MaxTensor) {
    path.status = Status::Unsupported;
    path.obstruction = "pure states of a non-polyhedral max tensor are not enumerable";
    return path;
  }
  require_pure(sys, w1, tol, "w1");
  require_pure(sys, w2, tol, "w2");
  const bool same = rel_residual(w1, w2) < 1e-12;

  if (auto view = eja_view(sys.cone)) {
    const JordanAlgebra& alg = *view->alg;
    const Vector y1 = view->t_inverse * w1;
    const Vector y2 = view->t_inverse * w2;
    const std::size_t s1 = owning_summand(alg, y1);
    const std::size_t s2 = owning_summand(alg, y2);
    if (s1 != s2) {
      path.status = Status::Fails;
      path.obstruction =
          "pure states of distinct summands lie in subspaces intersecting only in {0}, so no continuous path of "
          "pure states joins them";
      path.certificate = {{"summand_1", summand_json(alg, s1)}, {"summand_2", summand_json(alg, s2)}};
      return path;
    }
    const PureRotation rot(alg.summands()[s1], alg.block(y1, s1), alg.block(y2, s1));
    double worst = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(steps);
      const Matrix phi = view->t * embed_block(alg, s1, rot.at(t)) * view->t_inverse;
      const Vector wt = phi * w1;
      if (!is_extremal_ray(sys.cone, wt, tol) || std::abs(sys.unit.dot(wt) - 1.0) > 1e-8) {
        path.status = Status::Inconclusive;
        path.obstruction = "constructed path left the pure states (constructor failure, not a disproof)";
        return path;
      }
      path.states.push_back(wt);
      path.maps.push_back(phi);
    }
    worst = rel_residual(path.states.back(), w2);
    path.status = worst < kWitnessTol ? Status::Holds : Status::Inconclusive;
    path.certificate = {{"method", "one-parameter rotation group"},
                        {"angle", stable(rot.angle())},
                        {"steps", steps},
                        {"endpoint_residual", stable(worst)}};
    return path;
  }

  if (same) {
    path.status = Status::Holds;
    const auto n = static_cast<Eigen::Index>(sys.dim());
    for (std::size_t k = 0; k <= steps; ++k) {
      path.states.push_back(w1);
      path.maps.push_back(Matrix::Identity(n, n));
    }
    path.certificate = {{"method", "constant path"}};
    return path;
  }
  if (sys.cone.kind() == ConeKind::Polyhedral) {
    path.status = Status::Fails;
    path.obstruction =
        "a polyhedral cone has finitely many pure states, so every continuous path of pure states is constant";
    path.certificate = {{"pure_states", sys.cone.polyhedral_cone().rays().size()}};
    return path;
  }
  // Continuous pure transitivity implies pure transitivity.
  const AxiomVerdict pt = pure_transitivity_witness(sys, w1, w2, tol);
  if (pt.status == Status::Fails) {
    path.status = Status::Fails;
    path.obstruction = "no normalized order isomorphism maps w1 to w2 (pure transitivity already fails)";
    path.certificate = pt.violation;
    return path;
  }
  path.status = Status::Inconclusive;
  path.obstruction = "no path constructor for this cone";
  return path;
}

AxiomVerdict check_continuous_pure_transitive(const System& sys, std::uint64_t seed, std::size_t steps) {
  AxiomVerdict v;
  v.axiom = "continuous-pure-transitive";
  Rng rng(seed);
  std::optional<std::pair<Vector, Vector>> pair;
  if (auto view = eja_view(sys.cone)) {
    pair = cross_summand_pair(sys, *view, rng, false);
    if (!pair) {
      const auto ps = pure_states(sys, 2, rng);
      pair = std::make_pair(ps[0], ps[1]);
    }
  } else if (sys.cone.kind() == ConeKind::Polyhedral) {
    const auto rays = normalized_rays(sys);
    pair = std::make_pair(rays[0], rays[rays.size() > 1 ? 1 : 0]);
  } else if (sys.cone.kind() == ConeKind::SharedCorner) {
    pair = std::make_pair(sc_normalized(shared_corner::corner_ray(2)), sc_normalized(shared_corner::generic_ray(0, 0)));
  } else {
    v.status = Status::Unsupported;
    v.certificate["reason"] = "pure states of a non-polyhedral max tensor are not enumerable";
    return v;
  }
  const PurePath path = continuous_pure_transitivity(sys, pair->first, pair->second, steps);
  v.status = path.status;
  if (path.status == Status::Holds) {
    v.witness = path.maps.back();
    v.certificate = path.certificate;
    v.certificate["w1"] = to_json(pair->first);
    v.certificate["w2"] = to_json(pair->second);
  } else {
    v.violation = path.certificate;
    v.violation["obstruction"] = path.obstruction;
    v.violation["w1"] = to_json(pair->first);
    v.violation["w2"] = to_json(pair->second);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Reducibility

namespace {

// Connected components of a matroid on m elements, from the fundamental
// circuits of one basis; `circuit_support(e)` lists the basis elements in the
// circuit of e.
template <typename Coeffs>
std::vector<std::vector<std::size_t>> matroid_components(std::size_t m, const std::vector<std::size_t>& basis,
                                                         Coeffs&& circuit_support) {
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t e = 0; e < m; ++e) {
    if (std::find(basis.begin(), basis.end(), e) != basis.end()) continue;
    for (std::size_t b : circuit_support(e)) parent[find(b)] = find(e);
  }
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::ptrdiff_t> slot(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return comps;
}

std::vector<std::vector<std::size_t>> exact_components(const std::vector<RVector>& rays, std::size_t d) {
  std::vector<std::size_t> basis;
  std::vector<RVector> chosen;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    chosen.push_back(rays[i]);
    if (rank(RMatrix::from_rows(chosen, d)) == chosen.size())
      basis.push_back(i);
    else
      chosen.pop_back();
  }
  const RMatrix b = RMatrix::from_columns(chosen, d);
  return matroid_components(rays.size(), basis, [&](std::size_t e) {
    // Coordinates of ray e in the basis; b has full column rank.
    const RMatrix bt = b.transpose();
    const auto c = solve(bt * b, bt * rays[e]);
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if ((*c)[k] != 0) support.push_back(basis[k]);
    return support;
  });
}

std::vector<std::vector<std::size_t>> numeric_components(const std::vector<Vector>& rays, double tol) {
  std::vector<std::size_t> basis;
  Matrix chosen(rays.front().size(), 0);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    Matrix trial(chosen.rows(), chosen.cols() + 1);
    trial << chosen, rays[i].normalized();
    if (numerical_rank(trial, 1e-8) == static_cast<std::size_t>(trial.cols())) {
      chosen = trial;
      basis.push_back(i);
    }
  }
  const auto qr = chosen.colPivHouseholderQr();
  return matroid_components(rays.size(), basis, [&](std::size_t e) {
    const Vector c = qr.solve(rays[e].normalized());
    std::vector<std::size_t> support;
    for (Eigen::Index k = 0; k < c.size(); ++k)
      if (std::abs(c[k]) > tol) support.push_back(basis[static_cast<std::size_t>(k)]);
    return support;
  });
}

}  // namespace

AxiomVerdict check_reducible(const System& sys, std::uint64_t seed) {
  AxiomVerdict v;
  v.axiom = "reducible";
  if (auto view = eja_view(sys.cone)) {
    const auto& alg = *view->alg;
    json summands = json::array();
    for (std::size_t s = 0; s < alg.summands().size(); ++s) summands.push_back(summand_json(alg, s));
    if (alg.summands().size() > 1) {
      v.status = Status::Holds;
      v.certificate = {{"method", "central decomposition"}, {"summands", summands}};
    } else {
      v.status = Status::Fails;
      v.violation = {{"method", "central decomposition"},
                     {"summands", summands},
                     {"reason", "a simple Jordan algebra has no nontrivial central idempotent"}};
    }
    return v;
  }
  switch (sys.cone.kind()) {
    case ConeKind::Polyhedral: {
      const auto& p = sys.cone.polyhedral_cone();
      if (!p.pointed()) {
        v.status = Status::Unsupported;
        v.certificate["reason"] = "cone is not pointed";
        return v;
      }
      const auto comps = exact_components(p.rays(), p.dim());
      if (comps.size() > 1) {
        v.status = Status::Holds;
        v.certificate = {{"method", "exact matroid components of the extremal rays"}, {"components", comps}};
      } else {
        v.status = Status::Fails;
        v.violation = {{"method", "exact matroid components of the extremal rays"},
                       {"components", comps},
                       {"reason", "the extremal rays form a connected matroid, so no direct-sum splitting exists"}};
      }
      return v;
    }
    case ConeKind::SharedCorner: {
      Rng rng(seed);
      std::vector<Vector> rays = {shared_corner::corner_ray(2), shared_corner::corner_ray(3)};
      for (const Vector& r : extremal_samples(sys.cone, 40, rng)) rays.push_back(r);
      const auto comps = numeric_components(rays, 1e-8);
      if (comps.size() == 1) {
        v.status = Status::Fails;
        v.violation = {{"method", "sampled matroid components of extremal rays"},
                       {"samples", rays.size()},
                       {"reason", "sampled extremal rays already form a connected matroid"}};
      } else {
        v.status = Status::Inconclusive;
        v.certificate = {{"method", "sampled matroid components of extremal rays"},
                         {"components", comps.size()},
                         {"reason", "sampling cannot certify a splitting"}};
      }
      return v;
    }
    default:
      v.status = Status::Unsupported;
      v.certificate["reason"] = "no reducibility procedure for a non-polyhedral max tensor";
      return v;
  }
}

bool classical_effect_test(const System& sys, const Vector& effect, double tol) {
  check_dim(sys.cone, effect, "effect");
  if (!dual_membership(sys.cone, effect, tol) || !dual_membership(sys.cone, sys.unit - effect, tol))
    throw PreconditionViolation("effect must lie between 0 and the unit");
  auto near01 = [&](double x) { return std::abs(x) <= tol || std::abs(x - 1.0) <= tol; };
  if (auto view = eja_view(sys.cone)) {
    const auto& alg = *view->alg;
    // Element representing the functional through the trace form.
    const Vector a = alg.gram().ldlt().solve(view->t.transpose() * effect);
    for (std::size_t s = 0; s < alg.summands().size(); ++s) {
      const auto ev = alg.summands()[s].eigenvalues(alg.block(a, s));
      const bool zeros = std::all_of(ev.begin(), ev.end(), [&](double x) { return std::abs(x) <= tol; });
      const bool ones = std::all_of(ev.begin(), ev.end(), [&](double x) { return std::abs(x - 1.0) <= tol; });
      if (!zeros && !ones) return false;
    }
    return true;
  }
  Rng rng(0);
  std::vector<Vector> states;
  if (sys.cone.kind() == ConeKind::Polyhedral)
    states = normalized_rays(sys);
  else
    states = pure_states(sys, 200, rng);
  return std::all_of(states.begin(), states.end(), [&](const Vector& w) { return near01(effect.dot(w)); });
}

}  // namespace conelab
