#pragma once

#include <array>

#include "conelab/linalg.hpp"

namespace conelab::shared_corner {

// Coordinates (x1, ..., x5) describe the blocks [[x1, x4], [x4, x2]] and
// [[x1, x5], [x5, x3]]. The cone is homogeneous but not self-dual.

inline constexpr std::size_t kDim = 5;

std::array<Eigen::Matrix2d, 2> blocks(const Vector& x);
double min_eigenvalue(const Vector& x);

Vector basepoint();  ///< (1, 1, 1, 0, 0): both blocks the identity
Vector unit();       ///< the functional (1, 1, 1, 0, 0)

/// Extremal ray (1, s^2, t^2, s, t): both blocks rank one.
Vector generic_ray(double s, double t);
Vector corner_ray(int which);  ///< which = 2 or 3: the rays e2 and e3

/// Group element acting blockwise by x -> L x L^T with lower-triangular
/// L1 = [[a, 0], [b, c]] and L2 = [[a, 0], [b2, c2]].
Matrix lower_action(double a, double b, double c, double b2, double c2);
/// The group element carrying the basepoint to an interior point x.
Matrix lower_action_to(const Vector& x);

/// Least value of the dual constraint e1 - e4^2/(4 e2) - e5^2/(4 e3),
/// together with e2 and e3; nonnegative iff e lies in the dual cone.
double dual_margin(const Vector& e);
Vector dual_ray(int block, double p, double q);

/// Exchanges the two blocks; an automorphism fixing the unit.
Matrix block_swap();

}  // namespace conelab::shared_corner
