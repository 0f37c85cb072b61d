#pragma once

// Exact rational feasibility for homogeneous sign systems and cone membership,
// with certificates in both directions (primal witness or Farkas separator).

#include <vector>

#include "cxone/lattice.hpp"

namespace cxone {

using RationalMatrix = std::vector<RationalVector>;  // row-major

/// Outcome of {A x = b, x >= 0}: either a feasible x or a Farkas vector y
/// with y^T A >= 0 and y^T b < 0.
struct LpFeasibility {
  bool feasible = false;
  RationalVector x;
  RationalVector farkas;
};

/// Phase-one simplex over the rationals with Bland's rule. `A` has `cols`
/// columns even when it has no rows.
LpFeasibility solve_feasibility(const RationalMatrix& A, const RationalVector& b, std::size_t cols);

enum class SignRegime {
  StrictPositive,  // xi_j > 0 for all j
  NonnegNonzero,   // xi_j >= 0, not all zero
};

/// Result of deciding sum_j xi_j eta_j = 0 under a sign regime, where the
/// eta_j are the columns of the weight matrix.
///
/// feasible: witness is a primitive integer relation xi.
/// infeasible: witness is a primitive integer functional u on the weight
///   space. For StrictPositive, <u, eta_j> >= 0 for all j with at least one
///   strict; for NonnegNonzero, <u, eta_j> > 0 for all j.
struct ConeFeasibility {
  bool feasible = false;
  RationalVector witness;

  /// Re-checks the witness exactly against the weights.
  bool verify(const IntMatrix& weights, SignRegime regime) const;
};

ConeFeasibility exists_sign_relation(const IntMatrix& weights, SignRegime regime);

/// point in the nonnegative span of the generator columns?
struct ConeMembership {
  bool member = false;
  RationalVector coefficients;  // member: point = G * coefficients, coefficients >= 0
  RationalVector separator;     // non-member: y^T G >= 0 and y^T point < 0

  bool verify(const RationalVector& point, const IntMatrix& generators) const;
};

ConeMembership cone_member(const RationalVector& point, const IntMatrix& generators);

}  // namespace cxone
