#include "conelab/eja.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

CMatrix quaternion_unit(int which) {
  const Complex i(0.0, 1.0);
  CMatrix q = CMatrix::Zero(2, 2);
  switch (which) {
    case 0: q << 1.0, 0.0, 0.0, 1.0; break;
    case 1: q << i, 0.0, 0.0, -i; break;
    case 2: q << 0.0, 1.0, -1.0, 0.0; break;
    default: q << 0.0, i, i, 0.0; break;
  }
  return q;
}

std::vector<CMatrix> build_basis(Family family, std::size_t r) {
  std::vector<CMatrix> basis;
  const Complex i(0.0, 1.0);
  if (family == Family::RealSym || family == Family::ComplexHerm) {
    const auto n = static_cast<Eigen::Index>(r);
    for (Eigen::Index k = 0; k < n; ++k) {
      CMatrix e = CMatrix::Zero(n, n);
      e(k, k) = 1.0;
      basis.push_back(e);
    }
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        CMatrix s = CMatrix::Zero(n, n);
        s(p, q) = s(q, p) = kInvSqrt2;
        basis.push_back(s);
        if (family == Family::ComplexHerm) {
          CMatrix h = CMatrix::Zero(n, n);
          h(p, q) = i * kInvSqrt2;
          h(q, p) = -i * kInvSqrt2;
          basis.push_back(h);
        }
      }
  } else if (family == Family::QuatHerm) {
    const auto n = static_cast<Eigen::Index>(2 * r);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(r); ++k) {
      CMatrix e = CMatrix::Zero(n, n);
      e.block(2 * k, 2 * k, 2, 2) = CMatrix::Identity(2, 2);
      basis.push_back(e);
    }
    for (Eigen::Index p = 0; p < static_cast<Eigen::Index>(r); ++p)
      for (Eigen::Index q = p + 1; q < static_cast<Eigen::Index>(r); ++q)
        for (int u = 0; u < 4; ++u) {
          CMatrix e = CMatrix::Zero(n, n);
          const CMatrix rep = quaternion_unit(u);
          e.block(2 * p, 2 * q, 2, 2) = rep * kInvSqrt2;
          e.block(2 * q, 2 * p, 2, 2) = rep.adjoint() * kInvSqrt2;
          basis.push_back(e);
        }
  }
  return basis;
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Picks the next deterministic direction from a spectral subspace: project the
// standard basis vectors in order and take the first with a substantial residual.
CVector next_seeded_direction(const CMatrix& projector, const std::vector<CVector>& chosen) {
  const auto n = projector.rows();
  std::vector<CVector> residuals;
  double best = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    CVector w = projector.col(k);
    for (const auto& c : chosen) w -= c * c.dot(w);
    best = std::max(best, w.norm());
    residuals.push_back(std::move(w));
  }
  if (best < 1e-8) throw NumericalError("spectral subspace exhausted while splitting idempotents");
  for (auto& w : residuals)
    if (w.norm() >= 0.5 * best) return w.normalized();
  return residuals.front().normalized();
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::RealSym: return "RealSym";
    case Family::ComplexHerm: return "ComplexHerm";
    case Family::QuatHerm: return "QuatHerm";
    case Family::SpinFactor: return "SpinFactor";
    case Family::Albert: return "Albert";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::RealSym, Family::ComplexHerm, Family::QuatHerm, Family::SpinFactor, Family::Albert})
    if (family_name(f) == name) return f;
  throw ParseError("unknown Jordan algebra family '" + name + "'");
}

SimpleFactor::SimpleFactor(Family f, std::size_t rank, std::size_t dim) : family_(f), rank_(rank), dim_(dim) {
  basis_ = std::make_shared<const std::vector<CMatrix>>(build_basis(f, rank));
}

SimpleFactor SimpleFactor::real_sym(std::size_t rank) {
  if (rank == 0) throw PreconditionViolation("rank must be positive");
  return SimpleFactor(Family::RealSym, rank, rank * (rank + 1) / 2);
}

SimpleFactor SimpleFactor::complex_herm(std::size_t rank) {
  if (rank == 0) throw PreconditionViolation("rank must be positive");
  return SimpleFactor(Family::ComplexHerm, rank, rank * rank);
}

SimpleFactor SimpleFactor::quat_herm(std::size_t rank) {
  if (rank == 0) throw PreconditionViolation("rank must be positive");
  return SimpleFactor(Family::QuatHerm, rank, rank * (2 * rank - 1));
}

SimpleFactor SimpleFactor::spin(std::size_t dim) {
  if (dim < 3) throw PreconditionViolation("spin factors need dimension >= 3");
  return SimpleFactor(Family::SpinFactor, 2, dim);
}

std::size_t SimpleFactor::matrix_size() const {
  switch (family_) {
    case Family::RealSym:
    case Family::ComplexHerm: return rank_;
    case Family::QuatHerm: return 2 * rank_;
    default: return 0;
  }
}

std::string SimpleFactor::describe() const {
  if (family_ == Family::SpinFactor) return "SpinFactor(dim " + std::to_string(dim_) + ")";
  return family_name(family_) + "(" + std::to_string(rank_) + ")";
}

bool SimpleFactor::isomorphic_to(const SimpleFactor& other) const {
  return family_ == other.family_ && rank_ == other.rank_ && dim_ == other.dim_;
}

CMatrix SimpleFactor::to_matrix(const Vector& coords) const {
  if (!is_matrix_family()) throw Unsupported("spin factors have no matrix carrier");
  if (static_cast<std::size_t>(coords.size()) != dim_) throw DimensionMismatch("to_matrix", dim_, coords.size());
  const auto n = static_cast<Eigen::Index>(matrix_size());
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < dim_; ++k) m += coords(static_cast<Eigen::Index>(k)) * (*basis_)[k];
  return m;
}

Vector SimpleFactor::from_matrix(const CMatrix& m) const {
  if (!is_matrix_family()) throw Unsupported("spin factors have no matrix carrier");
  const double norm = family_ == Family::QuatHerm ? 2.0 : 1.0;
  Vector c(static_cast<Eigen::Index>(dim_));
  for (std::size_t k = 0; k < dim_; ++k)
    c(static_cast<Eigen::Index>(k)) = ((*basis_)[k] * m).trace().real() / norm;
  return c;
}

CVector SimpleFactor::quaternion_partner(const CVector& v) const {
  CVector w(v.size());
  for (Eigen::Index p = 0; p + 1 < v.size(); p += 2) {
    w(p) = std::conj(v(p + 1));
    w(p + 1) = -std::conj(v(p));
  }
  return w;
}

Vector SimpleFactor::unit() const {
  Vector u = Vector::Zero(static_cast<Eigen::Index>(dim_));
  if (family_ == Family::SpinFactor)
    u(0) = 1.0;
  else
    u.head(static_cast<Eigen::Index>(rank_)).setOnes();
  return u;
}

Vector SimpleFactor::product(const Vector& a, const Vector& b) const {
  if (family_ == Family::SpinFactor) {
    const auto n = static_cast<Eigen::Index>(dim_) - 1;
    Vector out(static_cast<Eigen::Index>(dim_));
    out(0) = a(0) * b(0) + a.tail(n).dot(b.tail(n));
    out.tail(n) = a(0) * b.tail(n) + b(0) * a.tail(n);
    return out;
  }
  const CMatrix ma = to_matrix(a);
  const CMatrix mb = to_matrix(b);
  return from_matrix(0.5 * (ma * mb + mb * ma));
}

std::vector<double> SimpleFactor::eigenvalues(const Vector& a) const {
  if (family_ == Family::SpinFactor) {
    const double r = a.tail(static_cast<Eigen::Index>(dim_) - 1).norm();
    return {a(0) - r, a(0) + r};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(to_matrix(a)), Eigen::EigenvaluesOnly);
  std::vector<double> vals;
  const auto& ev = es.eigenvalues();
  const Eigen::Index step = family_ == Family::QuatHerm ? 2 : 1;
  for (Eigen::Index i = 0; i < ev.size(); i += step) vals.push_back(step == 2 ? 0.5 * (ev(i) + ev(i + 1)) : ev(i));
  return vals;
}

Vector SimpleFactor::line_projector(const CVector& v) const {
  const CVector a = v.normalized();
  CMatrix p = a * a.adjoint();
  if (family_ == Family::QuatHerm) {
    const CVector b = quaternion_partner(a);
    p += b * b.adjoint();
  }
  return from_matrix(p);
}

Vector SimpleFactor::random_pure(Rng& rng) const {
  if (family_ == Family::SpinFactor) {
    const Vector v = gaussian_vector(dim_ - 1, rng).normalized();
    Vector p(static_cast<Eigen::Index>(dim_));
    p(0) = 0.5;
    p.tail(static_cast<Eigen::Index>(dim_) - 1) = 0.5 * v;
    return p;
  }
  CVector v;
  if (family_ == Family::RealSym)
    v = gaussian_vector(rank_, rng).cast<Complex>();
  else
    v = gaussian_cvector(matrix_size(), rng);
  return line_projector(v);
}

CMatrix SimpleFactor::lmi_block(const Vector& coords) const {
  if (family_ != Family::SpinFactor) return to_matrix(coords);
  const auto n = static_cast<Eigen::Index>(dim_);
  CMatrix arrow = CMatrix::Zero(n, n);
  arrow.diagonal().setConstant(coords(0));
  for (Eigen::Index k = 1; k < n; ++k) arrow(0, k) = arrow(k, 0) = coords(k);
  return arrow;
}

// ---------------------------------------------------------------------------

JordanAlgebra::JordanAlgebra(std::vector<SimpleFactor> summands) : summands_(std::move(summands)) {
  if (summands_.empty()) throw PreconditionViolation("a Jordan algebra needs at least one summand");
  for (const auto& s : summands_) {
    if (s.family() == Family::Albert) throw Unsupported("the Albert algebra is not constructed");
    offsets_.push_back(dim_);
    dim_ += s.dim();
    rank_ += s.rank();
  }
  gram_ = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const auto off = static_cast<Eigen::Index>(offsets_[i]);
    const auto d = static_cast<Eigen::Index>(summands_[i].dim());
    gram_.block(off, off, d, d) = summands_[i].gram_scale() * Matrix::Identity(d, d);
  }
}

std::string JordanAlgebra::describe() const {
  std::string out;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (i) out += " + ";
    out += summands_[i].describe();
  }
  return out;
}

void JordanAlgebra::check(const Vector& x, const char* what) const {
  if (static_cast<std::size_t>(x.size()) != dim_) throw DimensionMismatch(what, dim_, x.size());
  if (!x.allFinite()) throw NumericalError(std::string(what) + ": non-finite input");
}

Vector JordanAlgebra::block(const Vector& x, std::size_t summand) const {
  return x.segment(static_cast<Eigen::Index>(offsets_.at(summand)),
                   static_cast<Eigen::Index>(summands_.at(summand).dim()));
}

Vector JordanAlgebra::embed(const Vector& b, std::size_t summand) const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
  out.segment(static_cast<Eigen::Index>(offsets_.at(summand)), b.size()) = b;
  return out;
}

Vector JordanAlgebra::unit() const {
  Vector u(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < summands_.size(); ++i)
    u.segment(static_cast<Eigen::Index>(offsets_[i]), static_cast<Eigen::Index>(summands_[i].dim())) =
        summands_[i].unit();
  return u;
}

Vector JordanAlgebra::trace_functional() const { return gram_ * unit(); }

Vector JordanAlgebra::product(const Vector& a, const Vector& b) const {
  check(a, "jordan_product");
  check(b, "jordan_product");
  Vector out(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < summands_.size(); ++i)
    out.segment(static_cast<Eigen::Index>(offsets_[i]), static_cast<Eigen::Index>(summands_[i].dim())) =
        summands_[i].product(block(a, i), block(b, i));
  return out;
}

double JordanAlgebra::trace_inner(const Vector& a, const Vector& b) const {
  check(a, "trace_inner");
  check(b, "trace_inner");
  return a.dot(gram_ * b);
}

SpectralDecomposition JordanAlgebra::spectral(const Vector& a) const {
  check(a, "spectral");
  SpectralDecomposition out;
  for (std::size_t s = 0; s < summands_.size(); ++s) {
    const SimpleFactor& f = summands_[s];
    const Vector x = block(a, s);
    if (f.family() == Family::SpinFactor) {
      const auto n = static_cast<Eigen::Index>(f.dim()) - 1;
      const double r = x.tail(n).norm();
      Vector dir = Vector::Zero(n);
      if (r > 1e-14)
        dir = x.tail(n) / r;
      else
        dir(0) = 1.0;
      for (double sign : {-1.0, 1.0}) {
        Vector c(n + 1);
        c(0) = 0.5;
        c.tail(n) = 0.5 * sign * dir;
        out.eigenvalues.push_back(x(0) + sign * r);
        out.idempotents.push_back(embed(c, s));
        out.summand.push_back(s);
      }
      continue;
    }
    const CMatrix m = hermitian_part(f.to_matrix(x));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    const bool quat = f.family() == Family::QuatHerm;
    Eigen::Index i0 = 0;
    while (i0 < ev.size()) {
      Eigen::Index i1 = i0 + 1;
      while (i1 < ev.size() && ev(i1) - ev(i1 - 1) <= 1e-8 * scale) ++i1;
      const Eigen::Index m_dim = i1 - i0;
      if (quat && m_dim % 2 != 0) throw NumericalError("quaternionic eigenspace of odd complex dimension");
      const CMatrix v = es.eigenvectors().middleCols(i0, m_dim);
      const CMatrix proj = v * v.adjoint();
      const double value = ev.segment(i0, m_dim).mean();
      std::vector<CVector> chosen;
      const Eigen::Index lines = quat ? m_dim / 2 : m_dim;
      for (Eigen::Index l = 0; l < lines; ++l) {
        const CVector a_dir = next_seeded_direction(proj, chosen);
        chosen.push_back(a_dir);
        if (quat) chosen.push_back(f.quaternion_partner(a_dir));
        out.eigenvalues.push_back(value);
        out.idempotents.push_back(embed(f.line_projector(a_dir), s));
        out.summand.push_back(s);
      }
      i0 = i1;
    }
  }
  return out;
}

double JordanAlgebra::min_eigenvalue(const Vector& a) const {
  check(a, "min_eigenvalue");
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < summands_.size(); ++s) {
    const auto vals = summands_[s].eigenvalues(block(a, s));
    m = std::min(m, *std::min_element(vals.begin(), vals.end()));
  }
  return m;
}

Matrix JordanAlgebra::quadratic_rep(const Vector& a) const {
  check(a, "quadratic_rep");
  const auto n = static_cast<Eigen::Index>(dim_);
  const Vector a2 = product(a, a);
  Matrix u(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vector e = Vector::Unit(n, k);
    u.col(k) = 2.0 * product(a, product(a, e)) - product(a2, e);
  }
  return u;
}

std::optional<std::size_t> JordanAlgebra::support_summand(const Vector& x, double tol) const {
  std::optional<std::size_t> found;
  for (std::size_t s = 0; s < summands_.size(); ++s) {
    if (block(x, s).norm() <= tol) continue;
    if (found) return std::nullopt;
    found = s;
  }
  return found;
}

Vector JordanAlgebra::random_element(Rng& rng) const { return gaussian_vector(dim_, rng); }

Vector JordanAlgebra::random_pure(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, summands_.size() - 1);
  return random_pure_in(pick(rng), rng);
}

Vector JordanAlgebra::random_pure_in(std::size_t summand, Rng& rng) const {
  return embed(summands_.at(summand).random_pure(rng), summand);
}

Vector JordanAlgebra::random_interior(Rng& rng) const {
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  Vector x = 0.1 * unit();
  for (std::size_t k = 0; k < 2 * rank_; ++k) x += weight(rng) * random_pure(rng);
  return x / trace_functional().dot(x);
}

std::vector<CMatrix> JordanAlgebra::lmi_blocks(const Vector& x) const {
  check(x, "lmi_blocks");
  std::vector<CMatrix> blocks;
  for (std::size_t s = 0; s < summands_.size(); ++s) blocks.push_back(summands_[s].lmi_block(block(x, s)));
  return blocks;
}

// ---------------------------------------------------------------------------

Vector jordan_product(const JordanAlgebra& alg, const Vector& a, const Vector& b) { return alg.product(a, b); }

SpectralDecomposition spectral(const JordanAlgebra& alg, const Vector& a) { return alg.spectral(a); }

double trace_inner(const JordanAlgebra& alg, const Vector& a, const Vector& b) { return alg.trace_inner(a, b); }

std::vector<SummandInfo> central_decomposition(const JordanAlgebra& alg) {
  std::vector<SummandInfo> out;
  for (std::size_t s = 0; s < alg.summands().size(); ++s) {
    const auto& f = alg.summands()[s];
    Matrix e = Matrix::Zero(static_cast<Eigen::Index>(alg.dim()), static_cast<Eigen::Index>(f.dim()));
    e.block(static_cast<Eigen::Index>(alg.offset(s)), 0, static_cast<Eigen::Index>(f.dim()),
            static_cast<Eigen::Index>(f.dim())) = Matrix::Identity(static_cast<Eigen::Index>(f.dim()),
                                                                    static_cast<Eigen::Index>(f.dim()));
    out.push_back({f, alg.offset(s), std::move(e)});
  }
  return out;
}

Frame canonical_frame(const SimpleFactor& factor) {
  Frame frame;
  const auto d = static_cast<Eigen::Index>(factor.dim());
  if (factor.family() == Family::SpinFactor) {
    for (double sign : {1.0, -1.0}) {
      Vector w = Vector::Zero(d);
      w(0) = 0.5;
      w(1) = 0.5 * sign;
      frame.states.push_back(w);
      frame.effects.push_back(factor.gram_scale() * w);
    }
    return frame;
  }
  for (std::size_t i = 0; i < factor.rank(); ++i) {
    const Vector w = Vector::Unit(d, static_cast<Eigen::Index>(i));
    frame.states.push_back(w);
    frame.effects.push_back(w);
  }
  return frame;
}

Vector overlap_state(const SimpleFactor& factor) {
  if (factor.family() == Family::SpinFactor) {
    Vector w = Vector::Zero(static_cast<Eigen::Index>(factor.dim()));
    // Orthogonal to the frame axis on the sphere of pure states, so the frame
    // effects both read 1/2, as for the matrix families.
    w(0) = 0.5;
    w(2) = 0.5;
    return w;
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(factor.matrix_size()));
  const Eigen::Index stride = factor.family() == Family::QuatHerm ? 2 : 1;
  for (Eigen::Index i = 0; i < v.size(); i += stride) v(i) = 1.0;
  return factor.line_projector(v);
}

// ---------------------------------------------------------------------------

PureRotation::PureRotation(const SimpleFactor& factor, const Vector& p1, const Vector& p2) : factor_(factor) {
  if (factor.family() == Family::SpinFactor) {
    const auto n = static_cast<Eigen::Index>(factor.dim()) - 1;
    va_ = p1.tail(n).normalized();
    const Vector target = p2.tail(n).normalized();
    const double c = std::clamp(va_.dot(target), -1.0, 1.0);
    Vector w = target - c * va_;
    if (c < -1.0 + 1e-12) {
      // Antipodal: rotate through the first coordinate axis least aligned with va.
      std::vector<Vector> residuals;
      double best = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        Vector r = Vector::Unit(n, k) - va_(k) * va_;
        best = std::max(best, r.norm());
        residuals.push_back(r);
      }
      for (auto& r : residuals)
        if (r.norm() >= 0.5 * best) {
          w = r;
          break;
        }
      angle_ = std::numbers::pi;
    } else {
      angle_ = std::acos(c);
    }
    vb_ = w.norm() > 1e-14 ? Vector(w.normalized()) : Vector(Vector::Zero(n));
    if (w.norm() <= 1e-14) angle_ = 0.0;
    return;
  }
  const CMatrix m1 = factor.to_matrix(p1);
  const CMatrix m2 = factor.to_matrix(p2);
  Eigen::Index col = 0;
  m1.colwise().norm().maxCoeff(&col);
  a_ = m1.col(col).normalized();
  CVector v2 = m2 * a_;
  if (v2.norm() > 1e-12) {
    v2.normalize();
  } else {
    Eigen::Index c2 = 0;
    m2.colwise().norm().maxCoeff(&c2);
    v2 = m2.col(c2).normalized();
  }
  const double c = std::clamp(a_.dot(v2).real(), -1.0, 1.0);
  CVector w = v2 - c * a_;
  if (w.norm() <= 1e-14) {
    angle_ = 0.0;
    b_ = CVector::Zero(a_.size());
  } else {
    angle_ = std::acos(c);
    b_ = w.normalized();
  }
}

Matrix PureRotation::at(double t) const {
  const double th = t * angle_;
  const double cs = std::cos(th) - 1.0;
  const double sn = std::sin(th);
  const auto d = static_cast<Eigen::Index>(factor_.dim());
  if (factor_.family() == Family::SpinFactor) {
    const auto n = d - 1;
    Matrix r = Matrix::Identity(n, n);
    if (vb_.norm() > 0.0)
      r += cs * (va_ * va_.transpose() + vb_ * vb_.transpose()) + sn * (vb_ * va_.transpose() - va_ * vb_.transpose());
    Matrix phi = Matrix::Identity(d, d);
    phi.bottomRightCorner(n, n) = r;
    return phi;
  }
  const auto n = a_.size();
  CMatrix u = CMatrix::Identity(n, n);
  if (b_.norm() > 0.0) {
    CMatrix plane = a_ * a_.adjoint() + b_ * b_.adjoint();
    CMatrix gen = b_ * a_.adjoint() - a_ * b_.adjoint();
    if (factor_.family() == Family::QuatHerm) {
      const CVector at = factor_.quaternion_partner(a_);
      const CVector bt = factor_.quaternion_partner(b_);
      plane += at * at.adjoint() + bt * bt.adjoint();
      gen += bt * at.adjoint() - at * bt.adjoint();
    }
    u += cs * plane + sn * gen;
  }
  Matrix phi(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Vector e = Vector::Unit(d, k);
    phi.col(k) = factor_.from_matrix(u * factor_.to_matrix(e) * u.adjoint());
  }
  return phi;
}

}  // namespace conelab
