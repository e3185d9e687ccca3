#include "conelab/polyhedral.hpp"

#include <algorithm>
#include <numeric>

#include "conelab/errors.hpp"
#include "conelab/exact_lp.hpp"

namespace conelab {

namespace {

RMatrix columns_of(const std::vector<RVector>& gens, std::size_t dim) {
  return RMatrix::from_columns(gens, dim);
}

// Visit every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool in_conic_hull(const std::vector<RVector>& gens, const RVector& x) {
  if (is_zero(x)) return true;
  if (gens.empty()) return false;
  return lp_feasible(columns_of(gens, x.size()), x);
}

PolyhedralCone::PolyhedralCone(std::vector<RVector> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw PreconditionViolation("polyhedral cone needs at least one generator");
  dim_ = generators_.front().size();
  for (const auto& g : generators_) {
    if (g.size() != dim_) throw DimensionMismatch("polyhedral generator", dim_, g.size());
    if (is_zero(g)) throw PreconditionViolation("polyhedral generators must be nonzero");
  }

  // Deduplicate positively parallel generators, then drop redundant ones.
  std::vector<RVector> distinct;
  for (const auto& g : generators_) {
    const RVector p = primitive(g);
    const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                  [&](const RVector& d) { return d == p; });
    if (!seen) distinct.push_back(p);
  }
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    std::vector<RVector> others;
    for (std::size_t j = 0; j < distinct.size(); ++j)
      if (j != i) others.push_back(distinct[j]);
    if (!in_conic_hull(others, distinct[i])) rays_.push_back(distinct[i]);
  }

  const RMatrix span = columns_of(rays_, dim_);
  full_dimensional_ = rank(span) == dim_;

  // Pointed iff sum lambda_i r_i = 0, sum lambda_i = 1, lambda >= 0 is infeasible.
  {
    RMatrix a(dim_ + 1, rays_.size());
    RVector b(dim_ + 1);
    for (std::size_t j = 0; j < rays_.size(); ++j) {
      for (std::size_t i = 0; i < dim_; ++i) a(i, j) = rays_[j][i];
      a(dim_, j) = 1;
    }
    b[dim_] = 1;
    pointed_ = !lp_feasible(a, b);
  }

  if (full_dimensional_ && pointed_) {
    for_each_subset(rays_.size(), dim_ - 1, [&](const std::vector<std::size_t>& subset) {
      std::vector<RVector> rows;
      for (auto i : subset) rows.push_back(rays_[i]);
      const auto kernel = nullspace(RMatrix::from_rows(rows, dim_));
      if (kernel.size() != 1) return;
      RVector n = kernel.front();
      bool pos = false;
      bool neg = false;
      for (const auto& r : rays_) {
        const Rational v = dot(n, r);
        pos = pos || v > 0;
        neg = neg || v < 0;
      }
      if (pos && neg) return;
      if (neg) n = scale(n, -1);
      n = primitive(n);
      if (std::find(facets_.begin(), facets_.end(), n) == facets_.end()) facets_.push_back(n);
    });
    std::sort(facets_.begin(), facets_.end());
  }

  fill_float_views();
}

PolyhedralCone PolyhedralCone::from_rays_and_facets(std::vector<RVector> rays, std::vector<RVector> facets) {
  if (rays.empty() || facets.empty()) throw PreconditionViolation("double description needs rays and facets");
  PolyhedralCone c;
  c.dim_ = rays.front().size();
  for (const auto& v : rays)
    if (v.size() != c.dim_) throw DimensionMismatch("polyhedral ray", c.dim_, v.size());
  for (const auto& v : facets)
    if (v.size() != c.dim_) throw DimensionMismatch("polyhedral facet", c.dim_, v.size());
  for (auto& r : rays) r = primitive(r);
  for (auto& f : facets) f = primitive(f);

  auto supported = [&](const RVector& v, const std::vector<RVector>& others) {
    std::vector<RVector> tight;
    for (const auto& o : others) {
      const Rational d = dot(v, o);
      if (d < 0) throw PreconditionViolation("a facet is negative on a ray");
      if (d == 0) tight.push_back(o);
    }
    return !tight.empty() && rank(RMatrix::from_rows(tight, c.dim_)) + 1 == c.dim_;
  };
  for (const auto& f : facets)
    if (!supported(f, rays)) throw PreconditionViolation("a listed facet is not a facet");
  for (const auto& r : rays)
    if (!supported(r, facets)) throw PreconditionViolation("a listed ray is not extremal");

  c.full_dimensional_ = rank(columns_of(rays, c.dim_)) == c.dim_;
  c.pointed_ = rank(columns_of(facets, c.dim_)) == c.dim_;
  if (!c.full_dimensional_ || !c.pointed_)
    throw PreconditionViolation("double description needs a full-dimensional pointed cone");
  std::sort(facets.begin(), facets.end());
  c.generators_ = rays;
  c.rays_ = std::move(rays);
  c.facets_ = std::move(facets);
  c.fill_float_views();
  return c;
}

void PolyhedralCone::fill_float_views() {
  rays_f_.resize(static_cast<Eigen::Index>(rays_.size()), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < rays_.size(); ++i) rays_f_.row(static_cast<Eigen::Index>(i)) = to_double(rays_[i]).transpose();
  facets_f_.resize(static_cast<Eigen::Index>(facets_.size()), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    const Vector n = to_double(facets_[i]);
    facets_f_.row(static_cast<Eigen::Index>(i)) = n.normalized().transpose();
  }
}

bool PolyhedralCone::contains(const RVector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("polyhedral membership", dim_, x.size());
  return in_conic_hull(rays_, x);
}

std::vector<std::size_t> PolyhedralCone::face_rays(const RVector& x) const {
  if (!contains(x)) throw PreconditionViolation("face of a point outside the cone");
  std::vector<std::size_t> in_face;
  if (is_zero(x)) return in_face;
  const RMatrix a = columns_of(rays_, dim_);
  for (std::size_t k = 0; k < rays_.size(); ++k) {
    RVector c(rays_.size());
    c[k] = 1;
    const LpResult res = solve_standard_lp(a, x, c);
    // Bounded because the cone is pointed; unbounded only if it is not.
    if (res.status == LpStatus::Unbounded || (res.status == LpStatus::Optimal && res.objective > 0))
      in_face.push_back(k);
  }
  return in_face;
}

std::size_t PolyhedralCone::face_dimension(const RVector& x) const {
  const auto idx = face_rays(x);
  if (idx.empty()) return 0;
  std::vector<RVector> rows;
  for (auto i : idx) rows.push_back(rays_[i]);
  return rank(RMatrix::from_rows(rows, dim_));
}

std::vector<std::size_t> PolyhedralCone::rays_on_facet(std::size_t facet) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (dot(facets_.at(facet), rays_[i]) == 0) out.push_back(i);
  return out;
}

double PolyhedralCone::facet_margin(const Vector& x) const {
  if (facets_f_.rows() == 0) throw Unsupported("facet margin needs a full-dimensional pointed cone");
  return (facets_f_ * x).minCoeff();
}

}  // namespace conelab
