#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conelab/eja.hpp"
#include "conelab/polyhedral.hpp"

namespace conelab {

enum class ConeKind { Polyhedral, Eja, SharedCorner, MaxTensor, Transformed };

std::string kind_name(ConeKind k);

struct System;

/// Closed pointed cone with a membership oracle. Cheap to copy; the
/// underlying data is shared and immutable.
class ConeModel {
 public:
  static ConeModel polyhedral(std::vector<RVector> generators);
  static ConeModel polyhedral(PolyhedralCone cone);
  static ConeModel eja(JordanAlgebra algebra);
  /// Pairs of 2x2 PSD blocks [[x1,x4],[x4,x2]] and [[x1,x5],[x5,x3]] sharing x1.
  static ConeModel shared_corner();
  /// Cone of elements nonnegative on every product effect of the two systems.
  /// Polyhedral factors are resolved to an exact polyhedral cone.
  static ConeModel max_tensor(const System& a, const System& b);
  /// The image T(base); `t_inverse` must be the inverse of `t`.
  static ConeModel transformed(ConeModel base, Matrix t, Matrix t_inverse);

  ConeKind kind() const;
  std::size_t dim() const;
  std::string describe() const;

  const PolyhedralCone& polyhedral_cone() const;
  const JordanAlgebra& algebra() const;
  const ConeModel& base() const;  ///< Transformed only
  const Matrix& transform() const;
  const Matrix& transform_inverse() const;
  const System& factor_a() const;  ///< MaxTensor only
  const System& factor_b() const;

  struct Transformed;
  struct MaxTensor;
  struct SharedCorner {};

 private:
  using Data = std::variant<PolyhedralCone, JordanAlgebra, SharedCorner, std::shared_ptr<const MaxTensor>,
                            std::shared_ptr<const Transformed>>;
  explicit ConeModel(Data d, std::size_t dim);
  std::shared_ptr<const Data> data_;
  std::size_t dim_ = 0;
};

struct ConeModel::Transformed {
  ConeModel base;
  Matrix t;
  Matrix t_inverse;
};

/// A cone with a distinguished interior unit functional; the base is
/// {x in cone : unit . x = 1} and effects are the interval [0, unit].
struct System {
  ConeModel cone;
  Vector unit;
  std::string label;

  std::size_t dim() const { return cone.dim(); }
};

struct ConeModel::MaxTensor {
  System a;
  System b;
};

/// Builds a system after checking that `unit` is strictly positive on sampled extremals.
System make_system(ConeModel cone, Vector unit, std::string label);
/// Jordan-algebraic system normalized by the trace.
System eja_system(JordanAlgebra algebra, std::string label = {});

/// The dual cone in functional coordinates, normalized by an interior point
/// of the original cone. Unsupported for cones without an exact dual.
System dual_system(const System& sys);

/// Dense linear map between two systems.
struct PositiveMap {
  Matrix matrix;
  System source;
  System target;
  bool normalized = false;
};

void check_dim(const ConeModel& cone, const Vector& x, const char* what);

bool membership(const ConeModel& cone, const Vector& x, double tol = kSpectralTol);
/// Signed distance-like margin: nonnegative iff x is a member. Polyhedral cones
/// report the minimum over unit facet normals, spectral cones the least eigenvalue.
double margin(const ConeModel& cone, const Vector& x);
/// f . x >= -tol for every member x of unit norm.
bool dual_membership(const ConeModel& cone, const Vector& f, double tol = kSpectralTol);

/// Dimension of the span of the smallest face containing x.
///
/// Polyhedral cones use the tight facets exactly. Spectral cones compute the
/// subspace D = {d : x +- eps d in cone for small eps} from the kernels of
/// the defining matrix blocks, then confirm `probes` random directions of D by
/// bisection on eps. `probes` must be at least the ambient dimension; 0 picks
/// the default of five probes per dimension.
std::size_t face_dimension(const ConeModel& cone, const Vector& x, std::size_t probes = 0, double tol = kSpectralTol);

/// Uses the spectral fast path for Jordan-algebraic cones.
bool is_extremal_ray(const ConeModel& cone, const Vector& x, double tol = kSpectralTol);
/// Always goes through face_dimension.
bool is_extremal_ray_generic(const ConeModel& cone, const Vector& x, double tol = kSpectralTol);

/// Extremal rays: all of them for polyhedral cones, `n` random ones otherwise.
std::vector<Vector> extremal_samples(const ConeModel& cone, std::size_t n, Rng& rng);
/// Extremal rays of the dual cone, same convention.
std::vector<Vector> dual_extremal_samples(const ConeModel& cone, std::size_t n, Rng& rng);

/// Pure states (extremals scaled into the base).
std::vector<Vector> pure_states(const System& sys, std::size_t n, Rng& rng);
/// Unit-normalized point with strictly positive margin.
Vector random_interior(const System& sys, Rng& rng);

bool validate_measurement(const System& sys, const std::vector<Vector>& effects, double tol = kSpectralTol);

struct IsoVerdict {
  bool holds = false;
  double condition_number = 0.0;
  double margin = 0.0;  ///< least image margin seen over the checked points
  std::string reason;
  std::optional<Vector> violation;
};

/// Invertibility plus positivity of the map and its inverse on extremal rays
/// (all rays for polyhedral cones, `samples` random ones otherwise).
IsoVerdict is_order_isomorphism(const PositiveMap& map, double tol = kWitnessTol, std::size_t samples = 200,
                                std::uint64_t seed = 0);

}  // namespace conelab
