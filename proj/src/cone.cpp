#include "conelab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conelab/errors.hpp"
#include "conelab/shared_corner.hpp"

namespace conelab {

namespace {

Vector product_vector(const Vector& a, const Vector& b) { return kron(a, b); }

// Exact max-tensor cone of two polyhedral systems: the dual of the cone spanned
// by products of facet normals.
PolyhedralCone polyhedral_max_tensor(const PolyhedralCone& a, const PolyhedralCone& b) {
  std::vector<RVector> effects;
  for (const auto& fa : a.facets())
    for (const auto& fb : b.facets()) {
      RVector p;
      p.reserve(fa.size() * fb.size());
      for (const auto& x : fa)
        for (const auto& y : fb) p.push_back(x * y);
      effects.push_back(std::move(p));
    }
  // The facet products generate the dual; its facets are our rays and its
  // irredundant generators our facets.
  PolyhedralCone dual(std::move(effects));
  return PolyhedralCone::from_rays_and_facets(dual.facets(), dual.rays());
}

// Least value of f . w over dual extremals f of the cone, with the minimizing f.
// Dual extremals are scaled to unit norm for polyhedral cones and to G p with
// p a trace-normalized primitive idempotent for Jordan-algebraic ones.
std::pair<double, Vector> min_over_dual_extremals(const ConeModel& cone, const Vector& w) {
  switch (cone.kind()) {
    case ConeKind::Polyhedral: {
      const Matrix& f = cone.polyhedral_cone().facets_f();
      Eigen::Index best = 0;
      const double v = (f * w).minCoeff(&best);
      return {v, f.row(best).transpose()};
    }
    case ConeKind::Eja: {
      const JordanAlgebra& alg = cone.algebra();
      const auto sd = alg.spectral(w);
      std::size_t best = 0;
      double bestv = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i)
        if (sd.eigenvalues[i] < bestv) {
          bestv = sd.eigenvalues[i];
          best = i;
        }
      const Vector p = sd.idempotents[best];
      // <G p, w> = trace_inner(p, w) = lambda_min for primitive p.
      return {alg.trace_inner(p, w), alg.gram() * p};
    }
    default:
      throw Unsupported("max-tensor factors must be polyhedral or Jordan-algebraic");
  }
}

double max_tensor_margin(const System& a, const System& b, const Vector& x) {
  const auto da = a.dim();
  const auto db = b.dim();
  const Matrix m = reshape_rows(x, da, db);
  Rng rng(0x6d6178u);
  double best = std::numeric_limits<double>::infinity();
  auto starts = dual_extremal_samples(a.cone, 48, rng);
  for (const Vector& start : starts) {
    Vector e = start;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
      auto [vb, f] = min_over_dual_extremals(b.cone, m.transpose() * e);
      auto [va, e_next] = min_over_dual_extremals(a.cone, m * f);
      e = e_next;
      best = std::min({best, vb, va});
      if (prev - va < 1e-14) break;
      prev = va;
    }
  }
  return best;
}

std::vector<CMatrix> lmi_blocks(const ConeModel& cone, const Vector& x) {
  switch (cone.kind()) {
    case ConeKind::Eja: return cone.algebra().lmi_blocks(x);
    case ConeKind::SharedCorner: {
      std::vector<CMatrix> out;
      for (const auto& b : shared_corner::blocks(x)) out.push_back(b.cast<Complex>());
      return out;
    }
    case ConeKind::Transformed: return lmi_blocks(cone.base(), cone.transform_inverse() * x);
    default: throw Unsupported("cone has no matrix-inequality description");
  }
}

Vector interior_point(const ConeModel& cone, Rng& rng) {
  std::uniform_real_distribution<double> w(0.2, 1.0);
  switch (cone.kind()) {
    case ConeKind::Polyhedral: {
      const Matrix& r = cone.polyhedral_cone().rays_f();
      Vector x = Vector::Zero(static_cast<Eigen::Index>(cone.dim()));
      for (Eigen::Index i = 0; i < r.rows(); ++i) x += w(rng) * r.row(i).transpose();
      return x;
    }
    case ConeKind::Eja: return cone.algebra().random_interior(rng);
    case ConeKind::SharedCorner: {
      Vector x = 0.1 * shared_corner::basepoint();
      for (const auto& e : extremal_samples(cone, 10, rng)) x += w(rng) * e / e.norm();
      return x;
    }
    case ConeKind::Transformed: return cone.transform() * interior_point(cone.base(), rng);
    case ConeKind::MaxTensor: {
      const auto& a = cone.factor_a();
      const auto& b = cone.factor_b();
      Vector x = Vector::Zero(static_cast<Eigen::Index>(cone.dim()));
      for (int k = 0; k < 4; ++k) x += w(rng) * product_vector(random_interior(a, rng), random_interior(b, rng));
      return x;
    }
  }
  throw Unsupported("no interior sampler");
}

}  // namespace

std::string kind_name(ConeKind k) {
  switch (k) {
    case ConeKind::Polyhedral: return "polyhedral";
    case ConeKind::Eja: return "eja";
    case ConeKind::SharedCorner: return "shared-corner";
    case ConeKind::MaxTensor: return "max-tensor";
    case ConeKind::Transformed: return "transformed";
  }
  return "?";
}

ConeModel::ConeModel(Data d, std::size_t dim) : data_(std::make_shared<const Data>(std::move(d))), dim_(dim) {}

ConeModel ConeModel::polyhedral(std::vector<RVector> generators) {
  return polyhedral(PolyhedralCone(std::move(generators)));
}

ConeModel ConeModel::polyhedral(PolyhedralCone cone) {
  const auto d = cone.dim();
  return ConeModel(Data(std::in_place_index<0>, std::move(cone)), d);
}

ConeModel ConeModel::eja(JordanAlgebra algebra) {
  const auto d = algebra.dim();
  return ConeModel(Data(std::in_place_index<1>, std::move(algebra)), d);
}

ConeModel ConeModel::shared_corner() { return ConeModel(Data(std::in_place_index<2>), shared_corner::kDim); }

ConeModel ConeModel::max_tensor(const System& a, const System& b) {
  if (a.cone.kind() == ConeKind::Polyhedral && b.cone.kind() == ConeKind::Polyhedral)
    return polyhedral(polyhedral_max_tensor(a.cone.polyhedral_cone(), b.cone.polyhedral_cone()));
  auto mt = std::make_shared<const MaxTensor>(MaxTensor{a, b});
  return ConeModel(Data(std::in_place_index<3>, std::move(mt)), a.dim() * b.dim());
}

ConeModel ConeModel::transformed(ConeModel base, Matrix t, Matrix t_inverse) {
  const auto d = base.dim();
  if (t.rows() != static_cast<Eigen::Index>(d) || t.cols() != static_cast<Eigen::Index>(d))
    throw DimensionMismatch("transform", d, t.rows());
  if (max_abs(t * t_inverse - Matrix::Identity(t.rows(), t.cols())) > 1e-9)
    throw PreconditionViolation("transform inverse does not invert the transform");
  auto tr = std::make_shared<const Transformed>(Transformed{std::move(base), std::move(t), std::move(t_inverse)});
  return ConeModel(Data(std::in_place_index<4>, std::move(tr)), d);
}

ConeKind ConeModel::kind() const { return static_cast<ConeKind>(data_->index()); }
std::size_t ConeModel::dim() const { return dim_; }

std::string ConeModel::describe() const {
  switch (kind()) {
    case ConeKind::Polyhedral:
      return "polyhedral cone with " + std::to_string(polyhedral_cone().rays().size()) + " rays in dimension " +
             std::to_string(dim_);
    case ConeKind::Eja: return "positive cone of " + algebra().describe();
    case ConeKind::SharedCorner: return "shared-corner cone";
    case ConeKind::MaxTensor: return "max tensor of " + factor_a().label + " and " + factor_b().label;
    case ConeKind::Transformed: return "linear image of the " + base().describe();
  }
  return "?";
}

const PolyhedralCone& ConeModel::polyhedral_cone() const {
  if (kind() != ConeKind::Polyhedral) throw PreconditionViolation("cone is not polyhedral");
  return std::get<0>(*data_);
}

const JordanAlgebra& ConeModel::algebra() const {
  if (kind() != ConeKind::Eja) throw PreconditionViolation("cone is not Jordan-algebraic");
  return std::get<1>(*data_);
}

const ConeModel& ConeModel::base() const {
  if (kind() != ConeKind::Transformed) throw PreconditionViolation("cone is not a linear image");
  return std::get<4>(*data_)->base;
}

const Matrix& ConeModel::transform() const {
  if (kind() != ConeKind::Transformed) throw PreconditionViolation("cone is not a linear image");
  return std::get<4>(*data_)->t;
}

const Matrix& ConeModel::transform_inverse() const {
  if (kind() != ConeKind::Transformed) throw PreconditionViolation("cone is not a linear image");
  return std::get<4>(*data_)->t_inverse;
}

const System& ConeModel::factor_a() const {
  if (kind() != ConeKind::MaxTensor) throw PreconditionViolation("cone is not a max tensor");
  return std::get<3>(*data_)->a;
}

const System& ConeModel::factor_b() const {
  if (kind() != ConeKind::MaxTensor) throw PreconditionViolation("cone is not a max tensor");
  return std::get<3>(*data_)->b;
}

// ---------------------------------------------------------------------------

System make_system(ConeModel cone, Vector unit, std::string label) {
  if (static_cast<std::size_t>(unit.size()) != cone.dim()) throw DimensionMismatch("unit", cone.dim(), unit.size());
  Rng rng(0x756e6974u);
  if (cone.kind() != ConeKind::MaxTensor) {
    for (const Vector& x : extremal_samples(cone, 64, rng))
      if (!(unit.dot(x) > 1e-12 * x.norm()))
        throw PreconditionViolation("unit is not strictly positive on the cone (" + label + ")");
  } else {
    const auto& a = cone.factor_a();
    const auto& b = cone.factor_b();
    if (max_abs(unit - kron(a.unit, b.unit)) > 1e-12)
      throw PreconditionViolation("max-tensor unit must be the product of the factor units");
  }
  return System{std::move(cone), std::move(unit), std::move(label)};
}

System eja_system(JordanAlgebra algebra, std::string label) {
  if (label.empty()) label = algebra.describe();
  Vector u = algebra.trace_functional();
  return make_system(ConeModel::eja(std::move(algebra)), std::move(u), std::move(label));
}

namespace {

// Dual cone together with a point interior to the original cone.
std::pair<ConeModel, Vector> dual_with_interior(const ConeModel& cone) {
  switch (cone.kind()) {
    case ConeKind::Polyhedral: {
      const auto& p = cone.polyhedral_cone();
      if (!p.full_dimensional() || !p.pointed()) throw Unsupported("dual of a degenerate polyhedral cone");
      Vector x = Vector::Zero(static_cast<Eigen::Index>(cone.dim()));
      const Matrix& r = p.rays_f();
      for (Eigen::Index i = 0; i < r.rows(); ++i) x += r.row(i).transpose() / r.row(i).norm();
      return {ConeModel::polyhedral(p.facets()), x};
    }
    case ConeKind::Eja: {
      const JordanAlgebra& alg = cone.algebra();
      const Matrix& g = alg.gram();
      const auto n = static_cast<Eigen::Index>(alg.dim());
      if (max_abs(g - Matrix::Identity(n, n)) == 0.0) return {cone, alg.unit()};
      return {ConeModel::transformed(cone, g, g.inverse()), alg.unit()};
    }
    case ConeKind::Transformed: {
      auto [base, x] = dual_with_interior(cone.base());
      return {ConeModel::transformed(std::move(base), cone.transform_inverse().transpose(), cone.transform().transpose()),
              cone.transform() * x};
    }
    case ConeKind::SharedCorner: throw Unsupported("the dual of the shared-corner cone has no cone model");
    case ConeKind::MaxTensor: throw Unsupported("dual of a non-polyhedral max tensor");
  }
  throw Unsupported("no dual construction");
}

}  // namespace

System dual_system(const System& sys) {
  auto [cone, x] = dual_with_interior(sys.cone);
  return make_system(std::move(cone), x / sys.unit.dot(x), "dual of " + sys.label);
}

void check_dim(const ConeModel& cone, const Vector& x, const char* what) {
  if (static_cast<std::size_t>(x.size()) != cone.dim()) throw DimensionMismatch(what, cone.dim(), x.size());
  if (!x.allFinite()) throw NumericalError(std::string(what) + ": non-finite coordinates");
}

double margin(const ConeModel& cone, const Vector& x) {
  check_dim(cone, x, "margin");
  switch (cone.kind()) {
    case ConeKind::Polyhedral: {
      const auto& p = cone.polyhedral_cone();
      if (p.full_dimensional()) return p.facet_margin(x);
      return p.contains(exact(x)) ? 0.0 : -1.0;
    }
    case ConeKind::Eja: return cone.algebra().min_eigenvalue(x);
    case ConeKind::SharedCorner: return shared_corner::min_eigenvalue(x);
    case ConeKind::Transformed: return margin(cone.base(), cone.transform_inverse() * x);
    case ConeKind::MaxTensor: return max_tensor_margin(cone.factor_a(), cone.factor_b(), x);
  }
  return 0.0;
}

bool membership(const ConeModel& cone, const Vector& x, double tol) {
  check_dim(cone, x, "membership");
  if (tol < 0) throw PreconditionViolation("tolerance must be nonnegative");
  if (cone.kind() == ConeKind::Polyhedral) {
    const auto& p = cone.polyhedral_cone();
    if (p.contains(exact(x))) return true;
    return tol > 0 && p.full_dimensional() && p.facet_margin(x) >= -tol;
  }
  return margin(cone, x) >= -tol;
}

bool dual_membership(const ConeModel& cone, const Vector& f, double tol) {
  check_dim(cone, f, "dual_membership");
  switch (cone.kind()) {
    case ConeKind::Polyhedral: {
      const Matrix& r = cone.polyhedral_cone().rays_f();
      for (Eigen::Index i = 0; i < r.rows(); ++i)
        if (r.row(i).dot(f) < -tol * r.row(i).norm()) return false;
      return true;
    }
    case ConeKind::Eja: {
      const JordanAlgebra& alg = cone.algebra();
      // The cone is self-dual for the trace form, so f = G y with y in the cone.
      return alg.min_eigenvalue(alg.gram().ldlt().solve(f)) >= -tol;
    }
    case ConeKind::SharedCorner: return shared_corner::dual_margin(f) >= -tol;
    case ConeKind::Transformed: return dual_membership(cone.base(), cone.transform().transpose() * f, tol);
    case ConeKind::MaxTensor: throw Unsupported("dual membership for a non-polyhedral max tensor");
  }
  return false;
}

std::size_t face_dimension(const ConeModel& cone, const Vector& x, std::size_t probes, double tol) {
  check_dim(cone, x, "face_dimension");
  const auto n = static_cast<Eigen::Index>(cone.dim());
  if (probes == 0) probes = 5 * cone.dim();
  if (probes < cone.dim()) throw PreconditionViolation("face_dimension needs at least as many probes as dimensions");
  if (!membership(cone, x, tol)) throw PreconditionViolation("face_dimension: point is not in the cone");
  if (x.norm() < tol) return 0;

  if (cone.kind() == ConeKind::Polyhedral) {
    const auto& p = cone.polyhedral_cone();
    if (!p.full_dimensional()) return p.face_dimension(exact(x));
    const Matrix& f = p.facets_f();
    const double slack = tol * std::max(1.0, x.norm());
    std::vector<RVector> rays;
    for (std::size_t i = 0; i < p.rays().size(); ++i) {
      bool on_all = true;
      for (Eigen::Index k = 0; k < f.rows() && on_all; ++k)
        if (std::abs(f.row(k).dot(x)) <= slack && dot(p.facets()[k], p.rays()[i]) != 0)
          on_all = false;
      if (on_all) rays.push_back(p.rays()[i]);
    }
    if (rays.empty()) return 0;
    return rank(RMatrix::from_rows(rays, cone.dim()));
  }
  if (cone.kind() == ConeKind::MaxTensor) throw Unsupported("face dimension in a non-polyhedral max tensor");

  // Feasible two-sided directions are exactly {d : B(d) K = 0} where K spans
  // the kernel of each defining block B(x).
  const auto blocks = lmi_blocks(cone, x);
  std::vector<CMatrix> kernels;
  Eigen::Index rows = 0;
  for (const auto& b : blocks) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (b + b.adjoint()));
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::Index k = 0;
    while (k < es.eigenvalues().size() && es.eigenvalues()(k) <= std::max(tol, 1e-12) * scale) ++k;
    kernels.push_back(es.eigenvectors().leftCols(k));
    rows += 2 * b.rows() * k;
  }
  Matrix constraints = Matrix::Zero(std::max<Eigen::Index>(rows, 1), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto bj = lmi_blocks(cone, Vector::Unit(n, j));
    Eigen::Index r = 0;
    for (std::size_t b = 0; b < bj.size(); ++b) {
      const CMatrix prod = bj[b] * kernels[b];
      for (Eigen::Index c = 0; c < prod.cols(); ++c)
        for (Eigen::Index i = 0; i < prod.rows(); ++i) {
          constraints(r++, j) = prod(i, c).real();
          constraints(r++, j) = prod(i, c).imag();
        }
    }
  }
  const Matrix d = null_space(constraints, 1e-9);
  if (d.cols() == 0) return 0;

  // Confirm the subspace: random directions inside it must be two-sided feasible.
  Rng rng(0x66616365u);
  const double xn = x.norm();
  for (std::size_t probe = 0; probe < probes; ++probe) {
    Vector dir = d * gaussian_vector(static_cast<std::size_t>(d.cols()), rng);
    dir *= xn / dir.norm();
    double eps = 1.0;
    bool ok = false;
    for (int depth = 0; depth < 60 && !ok; ++depth, eps *= 0.5)
      ok = membership(cone, x + eps * dir, tol) && membership(cone, x - eps * dir, tol);
    if (!ok) throw NumericalError("face_dimension: a computed face direction failed the feasibility probe");
  }
  return static_cast<std::size_t>(d.cols());
}

bool is_extremal_ray(const ConeModel& cone, const Vector& x, double tol) {
  check_dim(cone, x, "is_extremal_ray");
  if (x.norm() < tol) throw PreconditionViolation("is_extremal_ray: the zero element has no ray");
  if (cone.kind() == ConeKind::Eja) {
    const JordanAlgebra& alg = cone.algebra();
    if (alg.min_eigenvalue(x) < -tol) throw PreconditionViolation("is_extremal_ray: point is not in the cone");
    std::size_t positive = 0;
    double scale = 1.0;
    std::vector<double> all;
    for (std::size_t s = 0; s < alg.summands().size(); ++s)
      for (double v : alg.summands()[s].eigenvalues(alg.block(x, s))) {
        all.push_back(v);
        scale = std::max(scale, std::abs(v));
      }
    for (double v : all)
      if (v > tol * scale) ++positive;
    return positive == 1;
  }
  return is_extremal_ray_generic(cone, x, tol);
}

bool is_extremal_ray_generic(const ConeModel& cone, const Vector& x, double tol) {
  check_dim(cone, x, "is_extremal_ray");
  if (x.norm() < tol) throw PreconditionViolation("is_extremal_ray: the zero element has no ray");
  return face_dimension(cone, x, 0, tol) == 1;
}

std::vector<Vector> extremal_samples(const ConeModel& cone, std::size_t n, Rng& rng) {
  std::vector<Vector> out;
  switch (cone.kind()) {
    case ConeKind::Polyhedral: {
      const Matrix& r = cone.polyhedral_cone().rays_f();
      for (Eigen::Index i = 0; i < r.rows(); ++i) out.push_back(r.row(i).transpose());
      return out;
    }
    case ConeKind::Eja:
      for (std::size_t i = 0; i < n; ++i) out.push_back(cone.algebra().random_pure(rng));
      return out;
    case ConeKind::SharedCorner: {
      std::normal_distribution<double> g;
      out.push_back(shared_corner::corner_ray(2));
      out.push_back(shared_corner::corner_ray(3));
      while (out.size() < n) out.push_back(shared_corner::generic_ray(g(rng), g(rng)));
      out.resize(std::min(out.size(), std::max<std::size_t>(n, 1)));
      return out;
    }
    case ConeKind::Transformed:
      for (const Vector& v : extremal_samples(cone.base(), n, rng)) out.push_back(cone.transform() * v);
      return out;
    case ConeKind::MaxTensor: throw Unsupported("extremal rays of a non-polyhedral max tensor");
  }
  return out;
}

std::vector<Vector> dual_extremal_samples(const ConeModel& cone, std::size_t n, Rng& rng) {
  std::vector<Vector> out;
  switch (cone.kind()) {
    case ConeKind::Polyhedral: {
      const auto& p = cone.polyhedral_cone();
      if (!p.full_dimensional()) throw Unsupported("dual extremals of a lower-dimensional polyhedral cone");
      const Matrix& f = p.facets_f();
      for (Eigen::Index i = 0; i < f.rows(); ++i) out.push_back(f.row(i).transpose());
      return out;
    }
    case ConeKind::Eja:
      for (std::size_t i = 0; i < n; ++i) out.push_back(cone.algebra().gram() * cone.algebra().random_pure(rng));
      return out;
    case ConeKind::SharedCorner: {
      std::normal_distribution<double> g;
      for (std::size_t i = 0; i < n; ++i) out.push_back(shared_corner::dual_ray(i % 2 == 0 ? 1 : 2, g(rng), g(rng)));
      return out;
    }
    case ConeKind::Transformed: {
      const Matrix tinv_t = cone.transform_inverse().transpose();
      for (const Vector& v : dual_extremal_samples(cone.base(), n, rng)) out.push_back(tinv_t * v);
      return out;
    }
    case ConeKind::MaxTensor: {
      const auto& a = cone.factor_a();
      const auto& b = cone.factor_b();
      const auto ea = dual_extremal_samples(a.cone, n, rng);
      const auto eb = dual_extremal_samples(b.cone, n, rng);
      for (std::size_t i = 0; i < std::max(ea.size(), eb.size()); ++i)
        out.push_back(kron(ea[i % ea.size()], eb[i % eb.size()]));
      return out;
    }
  }
  return out;
}

std::vector<Vector> pure_states(const System& sys, std::size_t n, Rng& rng) {
  auto rays = extremal_samples(sys.cone, n, rng);
  for (auto& r : rays) r /= sys.unit.dot(r);
  return rays;
}

Vector random_interior(const System& sys, Rng& rng) {
  const Vector x = interior_point(sys.cone, rng);
  return x / sys.unit.dot(x);
}

bool validate_measurement(const System& sys, const std::vector<Vector>& effects, double tol) {
  if (effects.empty()) throw PreconditionViolation("a measurement needs at least one effect");
  Vector total = Vector::Zero(static_cast<Eigen::Index>(sys.dim()));
  for (const Vector& e : effects) {
    check_dim(sys.cone, e, "effect");
    if (!dual_membership(sys.cone, e, tol) || !dual_membership(sys.cone, sys.unit - e, tol)) return false;
    total += e;
  }
  return (total - sys.unit).cwiseAbs().maxCoeff() <= tol * std::max(1.0, sys.unit.cwiseAbs().maxCoeff());
}

IsoVerdict is_order_isomorphism(const PositiveMap& map, double tol, std::size_t samples, std::uint64_t seed) {
  const Matrix& m = map.matrix;
  if (m.rows() != m.cols()) throw PreconditionViolation("order isomorphism needs a square matrix");
  if (static_cast<std::size_t>(m.cols()) != map.source.dim())
    throw DimensionMismatch("map source", map.source.dim(), m.cols());
  if (static_cast<std::size_t>(m.rows()) != map.target.dim())
    throw DimensionMismatch("map target", map.target.dim(), m.rows());

  IsoVerdict v;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  v.condition_number = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(smin > 1e-12 * std::max(smax, 1e-300))) {
    v.reason = "singular map";
    v.violation = svd.matrixV().col(sv.size() - 1);
    return v;
  }
  const Matrix inv = m.inverse();
  v.margin = std::numeric_limits<double>::infinity();
  Rng rng(seed);

  auto check_side = [&](const ConeModel& from, const ConeModel& to, const Matrix& f, const char* what) {
    for (const Vector& x : extremal_samples(from, samples, rng)) {
      const Vector y = f * x;
      const double scale = std::max(y.norm(), 1e-300);
      v.margin = std::min(v.margin, margin(to, y) / scale);
      if (!membership(to, y, tol * std::max(1.0, y.norm()))) {
        v.reason = what;
        v.violation = x;
        return false;
      }
    }
    return true;
  };
  if (!check_side(map.source.cone, map.target.cone, m, "image of an extremal ray leaves the target cone")) return v;
  if (!check_side(map.target.cone, map.source.cone, inv, "inverse image of an extremal ray leaves the source cone"))
    return v;
  if (map.normalized) {
    const Vector pulled = m.transpose() * map.target.unit;
    if ((pulled - map.source.unit).cwiseAbs().maxCoeff() > tol * std::max(1.0, map.source.unit.norm())) {
      v.reason = "map does not preserve the unit";
      v.violation = pulled - map.source.unit;
      return v;
    }
  }
  v.holds = true;
  return v;
}

}  // namespace conelab
