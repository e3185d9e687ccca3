#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conelab/linalg.hpp"

namespace conelab {

enum class Family { RealSym, ComplexHerm, QuatHerm, SpinFactor, Albert };

std::string family_name(Family f);
Family parse_family(const std::string& name);

/// One simple Euclidean Jordan algebra in a fixed real coordinate basis.
///
/// Matrix families use a basis that is orthonormal for the trace form:
/// diagonal units first, then for each pair i < j the symmetrized units
/// (1 for RealSym; 1, i for ComplexHerm; 1, i, j, k for QuatHerm), each
/// scaled by 1/sqrt(2). Quaternionic matrices are carried as 2r x 2r complex
/// matrices; the trace form is then half the complex trace. Spin factors use
/// coordinates (s, x) with unit (1, 0, ..., 0) and trace 2s, so their Gram
/// matrix is 2I.
class SimpleFactor {
 public:
  static SimpleFactor real_sym(std::size_t rank);
  static SimpleFactor complex_herm(std::size_t rank);
  static SimpleFactor quat_herm(std::size_t rank);
  /// Spin factor R + R^(dim-1); dim >= 3.
  static SimpleFactor spin(std::size_t dim);

  Family family() const { return family_; }
  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return dim_; }
  bool is_matrix_family() const { return family_ != Family::SpinFactor; }
  /// Side length of the complex matrix carrying an element (0 for spin factors).
  std::size_t matrix_size() const;
  std::string describe() const;
  bool isomorphic_to(const SimpleFactor& other) const;

  CMatrix to_matrix(const Vector& coords) const;
  Vector from_matrix(const CMatrix& m) const;
  /// Quaternionic structure map v -> J conj(v) on C^(2r).
  CVector quaternion_partner(const CVector& v) const;

  Vector unit() const;
  double gram_scale() const { return family_ == Family::SpinFactor ? 2.0 : 1.0; }

  Vector product(const Vector& a, const Vector& b) const;
  std::vector<double> eigenvalues(const Vector& a) const;
  /// Idempotent projecting onto the line (quaternionic line for QuatHerm) of unit vector v.
  Vector line_projector(const CVector& v) const;

  Vector random_pure(Rng& rng) const;
  /// Block of the linear matrix inequality describing the cone at `coords`.
  CMatrix lmi_block(const Vector& coords) const;

 private:
  SimpleFactor(Family f, std::size_t rank, std::size_t dim);
  Family family_;
  std::size_t rank_;
  std::size_t dim_;
  std::shared_ptr<const std::vector<CMatrix>> basis_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  ///< ascending within each summand, summands in order
  std::vector<Vector> idempotents;  ///< primitive, pairwise orthogonal, summing to the unit
  std::vector<std::size_t> summand;  ///< owning summand of each idempotent
};

struct Frame {
  std::vector<Vector> states;   ///< trace-normalized primitive idempotents
  std::vector<Vector> effects;  ///< functionals with <state_i, effect_j> = delta_ij
};

struct SummandInfo {
  SimpleFactor factor;
  std::size_t offset;
  Matrix embedding;  ///< dim_total x dim_summand coordinate injection
};

/// Finite direct sum of simple factors; coordinates are concatenated.
class JordanAlgebra {
 public:
  explicit JordanAlgebra(std::vector<SimpleFactor> summands);
  static JordanAlgebra simple(SimpleFactor f) { return JordanAlgebra({std::move(f)}); }

  const std::vector<SimpleFactor>& summands() const { return summands_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rank_; }
  bool is_simple() const { return summands_.size() == 1; }
  std::size_t offset(std::size_t summand) const { return offsets_.at(summand); }
  std::string describe() const;

  Vector block(const Vector& x, std::size_t summand) const;
  Vector embed(const Vector& block, std::size_t summand) const;

  Vector unit() const;
  /// The trace functional, G * unit, as coordinates in the dual.
  Vector trace_functional() const;
  /// Trace-form Gram matrix (block diagonal).
  const Matrix& gram() const { return gram_; }

  Vector product(const Vector& a, const Vector& b) const;
  double trace_inner(const Vector& a, const Vector& b) const;
  SpectralDecomposition spectral(const Vector& a) const;
  double min_eigenvalue(const Vector& a) const;
  /// sum_i f(lambda_i) c_i over the spectral decomposition of a.
  template <typename Fn>
  Vector apply(const Vector& a, Fn&& f) const {
    const auto sd = spectral(a);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) out += f(sd.eigenvalues[i]) * sd.idempotents[i];
    return out;
  }
  /// Matrix of U_a(x) = 2 a*(a*x) - (a*a)*x.
  Matrix quadratic_rep(const Vector& a) const;

  /// Index of the only summand carrying x, if x is supported in a single one.
  std::optional<std::size_t> support_summand(const Vector& x, double tol) const;

  Vector random_element(Rng& rng) const;
  Vector random_pure(Rng& rng) const;
  Vector random_pure_in(std::size_t summand, Rng& rng) const;
  /// Trace-normalized strictly positive element.
  Vector random_interior(Rng& rng) const;

  std::vector<CMatrix> lmi_blocks(const Vector& x) const;

 private:
  void check(const Vector& x, const char* what) const;
  std::vector<SimpleFactor> summands_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
  std::size_t rank_ = 0;
  Matrix gram_;
};

Vector jordan_product(const JordanAlgebra& alg, const Vector& a, const Vector& b);
SpectralDecomposition spectral(const JordanAlgebra& alg, const Vector& a);
double trace_inner(const JordanAlgebra& alg, const Vector& a, const Vector& b);
std::vector<SummandInfo> central_decomposition(const JordanAlgebra& alg);
Frame canonical_frame(const SimpleFactor& factor);
Vector overlap_state(const SimpleFactor& factor);

/// Normalized rotation carrying pure state p1 to pure state p2 inside one
/// simple factor, as a one-parameter family: rotation(t) maps p1 to the
/// geodesic point at fraction t, rotation(1) p1 == p2.
class PureRotation {
 public:
  PureRotation(const SimpleFactor& factor, const Vector& p1, const Vector& p2);
  /// Coordinate matrix of the order automorphism at parameter t.
  Matrix at(double t) const;
  double angle() const { return angle_; }

 private:
  SimpleFactor factor_;
  double angle_ = 0.0;
  // Matrix families: rotation plane spanned by a, b in C^n.
  CVector a_;
  CVector b_;
  // Spin factors: plane spanned by real unit vectors va, vb.
  Vector va_;
  Vector vb_;
};

}  // namespace conelab
