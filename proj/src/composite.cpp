#include "conelab/composite.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/errors.hpp"
#include "conelab/exact_lp.hpp"
#include "conelab/json_util.hpp"

namespace conelab {

namespace {

using nlohmann::json;

RVector kron(const RVector& a, const RVector& b) {
  RVector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

const SimpleFactor& simple_complex_factor(const System& s, const char* which) {
  if (s.cone.kind() != ConeKind::Eja || !s.cone.algebra().is_simple() ||
      s.cone.algebra().summands().front().family() != Family::ComplexHerm)
    throw PreconditionViolation(std::string("Hilbert composite needs a simple complex Hermitian factor ") + which);
  return s.cone.algebra().summands().front();
}

// Orthogonal change of coordinates from Herm(rA rB) coordinates to product
// coordinates x_ab = tr(rho (E_a (x) F_b)).
Matrix hilbert_transform(const SimpleFactor& fa, const SimpleFactor& fb, const SimpleFactor& joint) {
  const auto da = static_cast<Eigen::Index>(fa.dim());
  const auto db = static_cast<Eigen::Index>(fb.dim());
  std::vector<CMatrix> products;
  for (Eigen::Index a = 0; a < da; ++a) {
    const CMatrix ea = fa.to_matrix(Vector::Unit(da, a));
    for (Eigen::Index b = 0; b < db; ++b) products.push_back(kron(ea, fb.to_matrix(Vector::Unit(db, b))));
  }
  const auto n = static_cast<Eigen::Index>(joint.dim());
  Matrix t(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const CMatrix m = joint.to_matrix(Vector::Unit(n, k));
    for (Eigen::Index p = 0; p < n; ++p) t(p, k) = (m * products[static_cast<std::size_t>(p)]).trace().real();
  }
  if (max_abs(t.transpose() * t - Matrix::Identity(n, n)) > 1e-10)
    throw NumericalError("Hilbert composite basis change is not orthogonal");
  return t;
}

Matrix as_matrix(const CompositeSystem& c, const Vector& w) {
  check_dim(c.joint.cone, w, "bipartite element");
  return reshape_rows(w, c.a.dim(), c.b.dim());
}

void require_member(const CompositeSystem& c, const Vector& w, double tol) {
  if (joint_membership(c, w, tol) == JointMembership::Rejected)
    throw PreconditionViolation("bipartite element is not in the composite cone");
}

double scale_of(const Vector& v) { return std::max(1.0, v.cwiseAbs().maxCoeff()); }

SteerResult steer_exact_lp(const System& a, const Matrix& m, const std::vector<Vector>& ensemble) {
  SteerResult r;
  r.method = "exact LP over polyhedral effect coordinates";
  const auto& rays = a.cone.polyhedral_cone().rays();
  const std::size_t da = a.dim();
  const std::size_t db = static_cast<std::size_t>(m.rows());
  const std::size_t parts = ensemble.size();
  const std::size_t nr = rays.size();

  const RMatrix mx = exact(m);
  const RVector ua = simplest_rational(a.unit);
  // Targets: the last one is pinned so the exact sum equals the exact marginal.
  std::vector<RVector> targets;
  RVector rest = mx * ua;
  for (std::size_t i = 0; i + 1 < parts; ++i) {
    targets.push_back(simplest_rational(ensemble[i]));
    rest = add(rest, scale(targets.back(), -1));
  }
  targets.push_back(rest);

  // Variables per part i: p_i, q_i in R^da (e_i = p_i - q_i) and slacks s_ik.
  const std::size_t block = 2 * da + nr;
  const std::size_t rows = parts * nr + da + parts * db;
  RMatrix lp(rows, parts * block);
  RVector rhs(rows);
  std::size_t row = 0;
  for (std::size_t i = 0; i < parts; ++i)
    for (std::size_t k = 0; k < nr; ++k, ++row) {
      for (std::size_t j = 0; j < da; ++j) {
        lp(row, i * block + j) = rays[k][j];
        lp(row, i * block + da + j) = -rays[k][j];
      }
      lp(row, i * block + 2 * da + k) = -1;
    }
  for (std::size_t j = 0; j < da; ++j, ++row) {
    for (std::size_t i = 0; i < parts; ++i) {
      lp(row, i * block + j) = 1;
      lp(row, i * block + da + j) = -1;
    }
    rhs[row] = ua[j];
  }
  for (std::size_t i = 0; i < parts; ++i)
    for (std::size_t b = 0; b < db; ++b, ++row) {
      for (std::size_t j = 0; j < da; ++j) {
        lp(row, i * block + j) = mx(b, j);
        lp(row, i * block + da + j) = -mx(b, j);
      }
      rhs[row] = targets[i][b];
    }
  const LpResult res = solve_standard_lp(lp, rhs);
  if (res.status != LpStatus::Optimal) {
    r.status = SteerStatus::Infeasible;
    r.reason = "exact LP: no measurement on A reproduces the ensemble";
    return r;
  }
  for (std::size_t i = 0; i < parts; ++i) {
    RVector e(da);
    for (std::size_t j = 0; j < da; ++j) e[j] = res.x[i * block + j] - res.x[i * block + da + j];
    r.effects.push_back(to_double(e));
  }
  r.status = SteerStatus::Steered;
  return r;
}

}  // namespace

std::string model_name(CompositeModel m) {
  switch (m) {
    case CompositeModel::MinTensor: return "min-tensor";
    case CompositeModel::MaxTensor: return "max-tensor";
    case CompositeModel::Hilbert: return "hilbert";
    case CompositeModel::Classical: return "classical";
  }
  return "?";
}

CompositeModel parse_model(const std::string& s) {
  for (CompositeModel m :
       {CompositeModel::MinTensor, CompositeModel::MaxTensor, CompositeModel::Hilbert, CompositeModel::Classical})
    if (model_name(m) == s) return m;
  throw ParseError("unknown composite model '" + s + "'");
}

namespace {

System joint_system(const System& a, const System& b, CompositeModel model, Vector unit, std::string label) {
  switch (model) {
    case CompositeModel::Classical:
      for (const System* s : {&a, &b})
        if (s->cone.kind() != ConeKind::Polyhedral || !s->cone.polyhedral_cone().simplicial())
          throw PreconditionViolation("classical composite needs simplex factors");
      [[fallthrough]];
    case CompositeModel::MinTensor: {
      if (a.cone.kind() != ConeKind::Polyhedral || b.cone.kind() != ConeKind::Polyhedral)
        throw Unsupported("min tensor is only modelled for polyhedral factors");
      std::vector<RVector> gens;
      for (const auto& x : a.cone.polyhedral_cone().rays())
        for (const auto& y : b.cone.polyhedral_cone().rays()) gens.push_back(kron(x, y));
      return make_system(ConeModel::polyhedral(std::move(gens)), std::move(unit), std::move(label));
    }
    case CompositeModel::MaxTensor:
      return make_system(ConeModel::max_tensor(a, b), std::move(unit), std::move(label));
    case CompositeModel::Hilbert: {
      const SimpleFactor& fa = simple_complex_factor(a, "A");
      const SimpleFactor& fb = simple_complex_factor(b, "B");
      const SimpleFactor joint = SimpleFactor::complex_herm(fa.rank() * fb.rank());
      const Matrix t = hilbert_transform(fa, fb, joint);
      ConeModel cone = ConeModel::transformed(ConeModel::eja(JordanAlgebra::simple(joint)), t, t.transpose());
      return make_system(std::move(cone), std::move(unit), std::move(label));
    }
  }
  throw PreconditionViolation("unknown composite model");
}

}  // namespace

CompositeSystem make_composite(const System& a, const System& b, CompositeModel model, std::string label) {
  if (label.empty()) label = a.label + " x " + b.label + " (" + model_name(model) + ")";
  return {model, a, b, joint_system(a, b, model, kron(a.unit, b.unit), std::move(label))};
}

Vector product_state(const CompositeSystem& c, const Vector& wa, const Vector& wb, double tol) {
  check_dim(c.a.cone, wa, "state of A");
  check_dim(c.b.cone, wb, "state of B");
  if (!membership(c.a.cone, wa, tol) || !membership(c.b.cone, wb, tol))
    throw PreconditionViolation("product state of non-members");
  return kron(wa, wb);
}

Vector product_effect(const CompositeSystem& c, const Vector& ea, const Vector& eb, double tol) {
  check_dim(c.a.cone, ea, "effect of A");
  check_dim(c.b.cone, eb, "effect of B");
  if (!dual_membership(c.a.cone, ea, tol) || !dual_membership(c.b.cone, eb, tol))
    throw PreconditionViolation("product effect of functionals outside the dual cones");
  return kron(ea, eb);
}

std::string membership_name(JointMembership m) {
  switch (m) {
    case JointMembership::Member: return "member";
    case JointMembership::AcceptedSampled: return "accepted-sampled";
    case JointMembership::Rejected: return "rejected";
  }
  return "?";
}

JointMembership joint_membership(const CompositeSystem& c, const Vector& w, double tol) {
  const bool in = membership(c.joint.cone, w, tol);
  if (!in) return JointMembership::Rejected;
  return c.joint.cone.kind() == ConeKind::MaxTensor ? JointMembership::AcceptedSampled : JointMembership::Member;
}

Vector marginal(const CompositeSystem& c, const Vector& w, Side side, double tol) {
  const Matrix x = as_matrix(c, w);
  require_member(c, w, tol);
  return side == Side::A ? Vector(x * c.b.unit) : Vector(x.transpose() * c.a.unit);
}

ConditioningMap conditioning_map(const CompositeSystem& c, const Vector& w, double tol) {
  const Matrix x = as_matrix(c, w);
  require_member(c, w, tol);
  return {x.transpose(), w};
}

std::string steer_status_name(SteerStatus s) {
  switch (s) {
    case SteerStatus::Steered: return "steered";
    case SteerStatus::Infeasible: return "infeasible";
    case SteerStatus::Unsupported: return "solver-unsupported";
  }
  return "?";
}

SteerResult steer(const CompositeSystem& c, const Vector& w, const std::vector<Vector>& ensemble, double tol) {
  const ConditioningMap hat = conditioning_map(c, w);
  const Vector wb = hat.matrix * c.a.unit;
  if (ensemble.empty()) throw PreconditionViolation("ensemble is empty");
  Vector total = Vector::Zero(static_cast<Eigen::Index>(c.b.dim()));
  for (const Vector& s : ensemble) {
    check_dim(c.b.cone, s, "ensemble member");
    if (!membership(c.b.cone, s, tol * scale_of(s))) throw PreconditionViolation("ensemble member outside the cone of B");
    total += s;
  }
  if ((total - wb).cwiseAbs().maxCoeff() > tol * scale_of(wb))
    throw PreconditionViolation("ensemble does not sum to the marginal on B");

  const Matrix& m = hat.matrix;
  SteerResult r;
  auto finish = [&](SteerResult& out) {
    if (out.status != SteerStatus::Steered) return;
    for (std::size_t i = 0; i < ensemble.size(); ++i)
      out.residual = std::max(out.residual, (m * out.effects[i] - ensemble[i]).cwiseAbs().maxCoeff());
    if (!validate_measurement(c.a, out.effects, tol)) {
      out.status = SteerStatus::Infeasible;
      out.reason = "candidate effects do not form a measurement on A";
    }
  };

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const bool invertible = m.rows() == m.cols() && sv(sv.size() - 1) > 1e-10 * smax;
  if (invertible) {
    r.method = "inverse of the conditioning map";
    const auto lu = m.partialPivLu();
    for (const Vector& s : ensemble) r.effects.push_back(lu.solve(s));
    r.status = SteerStatus::Steered;
    finish(r);
    return r;
  }

  // Targets outside the range of the conditioning map are never reached.
  const std::size_t rk = numerical_rank(m, 1e-10);
  const Matrix range = svd.matrixU().leftCols(static_cast<Eigen::Index>(rk));
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const Vector off = ensemble[i] - range * (range.transpose() * ensemble[i]);
    if (off.cwiseAbs().maxCoeff() > tol * scale_of(ensemble[i])) {
      r.status = SteerStatus::Infeasible;
      r.method = "range of the conditioning map";
      r.reason = "ensemble member " + std::to_string(i) + " lies outside the range of the conditioning map (rank " +
                 std::to_string(rk) + ")";
      return r;
    }
  }
  if (c.a.cone.kind() == ConeKind::Polyhedral && c.a.cone.polyhedral_cone().full_dimensional()) {
    r = steer_exact_lp(c.a, m, ensemble);
    finish(r);
    return r;
  }
  r.status = SteerStatus::Unsupported;
  r.method = "none";
  r.reason = "conditioning map is singular and A is not polyhedral";
  return r;
}

std::vector<Vector> random_ensemble(const System& sys, const Vector& state, std::size_t parts, Rng& rng) {
  if (parts == 0) throw PreconditionViolation("an ensemble needs at least one part");
  if (!(margin(sys.cone, state) > 0)) throw PreconditionViolation("random ensembles need an interior state");
  std::uniform_real_distribution<double> frac(0.2, 0.8);
  std::vector<Vector> out;
  Vector rest = state;
  const double mass = sys.unit.dot(state);
  for (std::size_t i = 0; i + 1 < parts; ++i) {
    const Vector s = random_interior(sys, rng);
    double lambda = frac(rng) * mass / static_cast<double>(parts);
    for (int k = 0; k < 80 && !(margin(sys.cone, rest - lambda * s) > 1e-9 * mass); ++k) lambda /= 2;
    out.push_back(lambda * s);
    rest -= lambda * s;
  }
  out.push_back(rest);
  return out;
}

AxiomVerdict steering_order_iso_check(const CompositeSystem& c, const Vector& w, double tol, std::uint64_t seed,
                                      std::size_t ensembles) {
  AxiomVerdict v;
  v.axiom = "steering";
  const ConditioningMap hat = conditioning_map(c, w);
  const Vector wb = hat.matrix * c.a.unit;
  if (!(margin(c.b.cone, wb) > tol * scale_of(wb)))
    throw PreconditionViolation("steering check needs a strictly interior marginal on B");
  const Matrix& m = hat.matrix;
  const std::size_t rk = numerical_rank(m, 1e-10);
  v.certificate = {{"rank", rk}, {"dim_a", c.a.dim()}, {"dim_b", c.b.dim()}};
  if (rk < c.a.dim()) {
    v.status = Status::Fails;
    v.violation = {{"rank", rk},
                   {"dim_a", c.a.dim()},
                   {"reason", "conditioning map is not injective, so it is not an order isomorphism onto B"}};
    return v;
  }
  if (c.a.dim() != c.b.dim()) {
    v.status = Status::Fails;
    v.violation = {{"rank", rk}, {"reason", "conditioning map cannot be onto B: dimensions differ"}};
    return v;
  }
  std::optional<System> source;
  try {
    source = dual_system(c.a);
  } catch (const Unsupported& e) {
    v.status = Status::Unsupported;
    v.certificate["reason"] = e.what();
    return v;
  }
  const IsoVerdict iso = is_order_isomorphism({m, *source, c.b, false}, tol, 200, seed);
  v.certificate["condition_number"] = stable(iso.condition_number);
  if (!iso.holds) {
    v.status = Status::Fails;
    v.violation = {{"reason", iso.reason}};
    if (iso.violation) v.violation["extremal"] = to_json(*iso.violation);
    return v;
  }
  v.witness = m;
  v.margin = iso.margin;
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t k = 0; k < ensembles; ++k) {
    const auto ens = random_ensemble(c.b, wb, 2 + k % 3, rng);
    const SteerResult r = steer(c, w, ens, tol);
    if (r.status != SteerStatus::Steered || r.residual > 1e-8) {
      v.status = Status::Inconclusive;
      v.certificate["reason"] = "order isomorphism found but a sampled ensemble was not steered";
      v.certificate["failed_ensemble"] = k;
      return v;
    }
    worst = std::max(worst, r.residual);
  }
  v.status = Status::Holds;
  v.certificate["implication"] =
      "an injective conditioning map that is an order isomorphism onto B pulls every ensemble of the marginal back "
      "to a measurement on A";
  v.certificate["ensembles_steered"] = ensembles;
  v.certificate["max_residual"] = stable(worst);
  return v;
}

Vector canonical_self_steering_state(const CompositeSystem& c) {
  if (c.a.dim() != c.b.dim() || c.a.cone.describe() != c.b.cone.describe())
    throw PreconditionViolation("self-steering state needs two copies of one system");
  Matrix hat;  // conditioning map, dim_b x dim_a
  const auto n = static_cast<Eigen::Index>(c.a.dim());
  if (c.a.cone.kind() == ConeKind::Eja) {
    const JordanAlgebra& alg = c.a.cone.algebra();
    if (!alg.is_simple()) throw PreconditionViolation("non-simple factor: construct per summand and mix");
    const SimpleFactor& f = alg.summands().front();
    hat = alg.gram().inverse() / static_cast<double>(f.rank());
    if (c.model == CompositeModel::Hilbert) {
      // Transpose in coordinates; the identity map is not completely positive.
      Matrix tr(n, n);
      for (Eigen::Index k = 0; k < n; ++k) tr.col(k) = f.from_matrix(f.to_matrix(Vector::Unit(n, k)).transpose());
      hat = tr * hat;
    }
  } else if (c.a.cone.kind() == ConeKind::Polyhedral && c.a.cone.polyhedral_cone().simplicial()) {
    const Matrix& r = c.a.cone.polyhedral_cone().rays_f();
    hat = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < r.rows(); ++k) {
      const Vector p = r.row(k).transpose() / c.a.unit.dot(r.row(k));
      hat += p * p.transpose();
    }
    hat /= static_cast<double>(r.rows());
  } else {
    throw PreconditionViolation("self-steering state needs a simple Jordan-algebraic or simplex factor");
  }
  const Vector w = flatten_rows(Matrix(hat.transpose()));
  if (joint_membership(c, w, 1e-9) == JointMembership::Rejected)
    throw NumericalError("canonical self-steering element left the composite cone");
  return w;
}

bool purity_preservation_check(const CompositeSystem& c, const Vector& wa, const Vector& wb, double tol) {
  for (const auto& [sys, w, which] :
       {std::tuple{&c.a, &wa, "A"}, std::tuple{&c.b, &wb, "B"}}) {
    check_dim(sys->cone, *w, which);
    if (!membership(sys->cone, *w, tol) || !is_extremal_ray(sys->cone, *w, tol))
      throw PreconditionViolation(std::string("state of ") + which + " is not pure");
  }
  if (c.joint.cone.kind() == ConeKind::MaxTensor)
    throw Unsupported("extremality in a non-polyhedral max tensor is not decidable here");
  return is_extremal_ray(c.joint.cone, kron(wa, wb), tol);
}

nlohmann::json to_json(const SteerResult& r) {
  json j = {{"status", steer_status_name(r.status)}, {"method", r.method}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.status == SteerStatus::Steered) {
    json effects = json::array();
    for (const Vector& e : r.effects) effects.push_back(to_json(e));
    j["effects"] = effects;
    j["residual"] = stable(r.residual);
  }
  return j;
}

}  // namespace conelab
