#pragma once

#include "conelab/rational.hpp"

namespace conelab {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RVector x;          ///< primal point when status == Optimal
  Rational objective;
};

/// maximize c.x subject to A x = b, x >= 0, in exact arithmetic.
/// Two-phase tableau simplex with Bland's rule, so it terminates on
/// degenerate problems. An empty `c` solves the feasibility problem only.
LpResult solve_standard_lp(const RMatrix& a, const RVector& b, const RVector& c = {});

/// Exists x >= 0 with A x = b.
inline bool lp_feasible(const RMatrix& a, const RVector& b) {
  return solve_standard_lp(a, b).status == LpStatus::Optimal;
}

}  // namespace conelab
