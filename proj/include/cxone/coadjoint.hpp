#pragma once

// Coadjoint orbits of SO(2k+1) and SO(2k) through their root systems: Weyl
// orbits (the torus-fixed points), isotropy weights, moment polytopes, and
// half-space certificates for equivariant balls.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cxone/lattice.hpp"

namespace cxone {

enum class RootFamily { B, D };

std::string to_string(RootFamily f);

struct RootSystem {
  RootFamily family = RootFamily::B;
  std::size_t rank = 0;
  std::vector<IntVector> roots;  // sorted lexicographically

  /// 2^k k! for B_k, 2^(k-1) k! for D_k.
  Integer weyl_group_order() const;
};

/// B_k (k >= 1): {+-e_i} and {+-e_i +- e_j}. D_k (k >= 2): {+-e_i +- e_j}.
/// Error: InvalidRank.
RootSystem build_root_system(RootFamily family, std::size_t rank);

/// Closure of {x} under the simple reflections; sorted lexicographically.
/// Error: DimensionMismatch.
std::vector<RationalVector> weyl_orbit(const RootSystem& system, const RationalVector& x);

struct RootSystemOrbit {
  RootSystem system;
  RationalVector base_point;
  std::vector<RationalVector> fixed_points;
  std::vector<std::vector<IntVector>> weights;  // isotropy weights, per fixed point
  std::size_t weight_count = 0;
  long complexity = 0;  // weight_count - rank
};

/// Builds the orbit and its weights. Throws std::logic_error if the weight
/// count is not constant along the orbit.
RootSystemOrbit build_orbit(const RootSystem& system, const RationalVector& x);

/// Roots alpha with <alpha, y> < 0. Error: PointNotFixed if y is not in the orbit.
std::vector<IntVector> isotropy_weights_at(const RootSystemOrbit& orbit, const RationalVector& y);

struct Facet {
  IntVector normal;  // primitive; the facet is {x in P : <normal, x> = offset}
  Rational offset;
  std::vector<std::size_t> vertices;  // indices into MomentPolytope::vertices
};

struct MomentPolytope {
  std::vector<RationalVector> vertices;
  std::size_t dimension = 0;  // affine dimension of the hull
  std::vector<Facet> facets;  // facets relative to the affine hull
};

/// Convex hull of the fixed points. Each fixed point is a vertex (the Weyl
/// group acts transitively on them). Facet normals of B_k and D_k Weyl
/// polytopes are Weyl images of fundamental coweights, which after scaling
/// lie in {-1,0,1}^k; all such vectors are tried. Error: TooLarge for k > 6.
MomentPolytope moment_polytope(const RootSystemOrbit& orbit);

enum class Side { Plus, Minus };

std::string to_string(Side s);

/// Hyperplane {<normal, x> = 0} and one of its open sides.
struct BallCertificate {
  RationalVector point;
  IntVector normal;
  Side side = Side::Plus;
  bool differences_span_codim_one = false;  // weight differences span exactly normal-perp
  bool unique_fixed_point_on_side = false;  // p is the only fixed point strictly on `side`
  bool valid = false;
};

/// Errors: ComplexityNotOne, PointNotFixed, DimensionMismatch, ZeroNormal.
BallCertificate ball_certificate(const RootSystemOrbit& orbit, const RationalVector& p, const IntVector& normal,
                                 Side side);

/// Signed permutation: (w x)_i = signs[i] * x[permutation[i]].
struct WeylElement {
  std::vector<std::size_t> permutation;
  std::vector<int> signs;

  RationalVector apply(const RationalVector& x) const;
  IntVector apply(const IntVector& x) const;
  bool is_identity_permutation() const;
  /// 1-based coordinates whose sign is flipped.
  std::vector<std::size_t> flipped_coordinates() const;
};

struct PackingReport {
  bool complexity_one = false;
  bool found = false;
  IntVector hyperplane;                     // normal of the selected hyperplane
  std::vector<BallCertificate> certificates;  // (p, +) and (p', -) of the selected hyperplane
  std::optional<WeylElement> weyl_element;  // w p = p', w normal = -normal
  bool complement_measure_zero = false;     // polytope minus both open sides is a null hyperplane slice
  std::vector<IntVector> alternative_hyperplanes;  // other hyperplanes admitting a paired packing
  std::size_t candidates_examined = 0;
};

/// Tries coordinate axes, then facet normals, then orthogonal complements of
/// each fixed point's weight-difference span.
PackingReport full_packing_report(const RootSystemOrbit& orbit);

}  // namespace cxone
