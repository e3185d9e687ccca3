#pragma once

#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

/// Finitely generated cone with exact rational generators.
///
/// Construction reduces the generator list to its extremal rays (redundant and
/// positively parallel generators removed) and, for full-dimensional cones,
/// enumerates facets by brute force over (dim - 1)-subsets of rays. Inputs here
/// stay small (at most a few dozen rays in dimension <= 16).
class PolyhedralCone {
 public:
  explicit PolyhedralCone(std::vector<RVector> generators);
  /// Skips enumeration when both descriptions are already known, e.g. from a
  /// dual cone. Checks that every facet is valid and supported by dim - 1
  /// independent rays and that every ray is extremal; completeness of the
  /// two lists is the caller's responsibility.
  static PolyhedralCone from_rays_and_facets(std::vector<RVector> rays, std::vector<RVector> facets);

  std::size_t dim() const { return dim_; }
  const std::vector<RVector>& generators() const { return generators_; }
  /// Extremal rays in primitive integer scaling, in first-appearance order.
  const std::vector<RVector>& rays() const { return rays_; }
  /// Inward primitive facet normals n with n.x >= 0 on the cone.
  const std::vector<RVector>& facets() const { return facets_; }
  bool full_dimensional() const { return full_dimensional_; }
  bool pointed() const { return pointed_; }
  bool simplicial() const { return full_dimensional_ && rays_.size() == dim_; }

  const Matrix& rays_f() const { return rays_f_; }      ///< rows are rays
  const Matrix& facets_f() const { return facets_f_; }  ///< rows are unit facet normals

  /// Exact LP: x = sum lambda_i r_i with lambda >= 0.
  bool contains(const RVector& x) const;
  /// Indices of rays lying in the smallest face containing x (x must be a member).
  std::vector<std::size_t> face_rays(const RVector& x) const;
  std::size_t face_dimension(const RVector& x) const;
  /// Rays r_i with n.r_i == 0 for the given facet index.
  std::vector<std::size_t> rays_on_facet(std::size_t facet) const;
  /// Minimum of n.x / |n| over facets; nonnegative iff x is a member.
  double facet_margin(const Vector& x) const;

 private:
  PolyhedralCone() = default;
  void fill_float_views();

  std::size_t dim_ = 0;
  std::vector<RVector> generators_;
  std::vector<RVector> rays_;
  std::vector<RVector> facets_;
  bool full_dimensional_ = false;
  bool pointed_ = false;
  Matrix rays_f_;
  Matrix facets_f_;
};

/// Whether x lies in cone(gens), exactly.
bool in_conic_hull(const std::vector<RVector>& gens, const RVector& x);

}  // namespace conelab
