#pragma once

// The local model Y = T x_H C^n x h0 with moment map
//   Phi_Y([t, z, nu]) = alpha + Phi_H(z) + nu,
// its moment cone, the trivializing map F = (Phi_Y, P) on Y/T, and numeric
// verification of the properties F is supposed to have.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cxone/cone.hpp"
#include "cxone/lattice.hpp"
#include "cxone/rep.hpp"

namespace cxone {

class LocalModel {
 public:
  /// `h0_basis` rows are vectors in t* (length d) spanning the annihilator of
  /// the Lie algebra of H. Throws DomainError("InvalidModel") when shapes or
  /// ranks are inconsistent.
  LocalModel(std::size_t d, SubtorusRep rep, RationalVector alpha, IntMatrix h0_basis);

  std::size_t d() const noexcept { return d_; }
  const SubtorusRep& rep() const noexcept { return rep_; }
  const RationalVector& alpha() const noexcept { return alpha_; }
  const IntMatrix& h0_basis() const noexcept { return h0_basis_; }
  /// d x h; columns are a lattice basis of h inside t (the annihilator of h0).
  const IntMatrix& h_basis() const noexcept { return h_basis_; }

  /// h* -> t* through the standard dot product on t.
  RationalVector embed(const RationalVector& eta) const;
  std::vector<double> embed(const std::vector<double>& eta) const;
  /// t* -> h*, restriction to h. Left inverse of embed; kills h0.
  std::vector<double> restrict_to_h(const std::vector<double>& beta) const;

  bool in_h0(const RationalVector& nu) const;

 private:
  std::size_t d_;
  SubtorusRep rep_;
  RationalVector alpha_;
  IntMatrix h0_basis_;
  IntMatrix h_basis_;
  std::vector<RationalVector> embedding_;  // d x h, rational
};

/// alpha + h0 + sum_j R_+ eta_j.
struct DelzantCone {
  RationalVector apex;
  IntMatrix rays;       // d x n, primitive positive multiples of the embedded weights
  IntMatrix lineality;  // d x (d - h), columns span h0

  /// Membership with exact witness; delegates to cone_member on
  /// [rays | lineality | -lineality].
  ConeMembership contains(const RationalVector& point) const;
};

DelzantCone moment_image(const LocalModel& model);

enum class FiberType { SingleOrbit, InfinitelyManyOrbits };
std::string to_string(FiberType f);

FiberType classify_fiber(const LocalModel& model);

struct QuotientPoint {
  std::vector<double> moment;  // in t*
  Complex p;
};

/// F([t, z, nu]) = (alpha + Phi_H(z) + nu, P(z)).
/// Errors: ProperMomentMap (single-orbit fibers), NotInAnnihilator, and those
/// of defining_polynomial.
QuotientPoint trivializing_map(const LocalModel& model, const ComplexVector& z, const RationalVector& nu);

/// Same map with nu given in floating point (no annihilator check).
QuotientPoint trivializing_map_numeric(const LocalModel& model, const ComplexVector& z, const std::vector<double>& nu);

struct FiberCheckReport {
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;             // trials passing every check below
  std::uint64_t invariance_passes = 0;  // |F(lambda z) - F(z)| < tol, lambda in H
  std::uint64_t projected_pair_passes = 0;  // z' = (torus phases projected onto H) z is found in H z
  std::uint64_t preimage_pair_passes = 0;   // independently constructed preimage of F(z) is found in H z
  double max_invariance_error = 0.0;
  double max_orbit_distance = 0.0;

  FiberCheckReport& operator+=(const FiberCheckReport& o);
};

/// Numeric check that the fibers of F are the H-orbits. Requires
/// InfinitelyManyOrbits and h <= 3. Trials are sharded in blocks of 1000 with
/// per-shard seed (seed + shard index).
FiberCheckReport fiber_orbit_check(const LocalModel& model, std::uint64_t trials, std::uint64_t seed, double tol);

/// Distance from z' to the orbit H z, minimized over a grid on H followed by
/// Gauss-Newton refinement. H must be connected and equal to ker P.
double orbit_distance(const LocalModel& model, const ComplexVector& z, const ComplexVector& z_prime);

/// A point z with (Phi_H(z), P(z)) = (a, zeta) for a in the image of Phi_H,
/// built by solving the radial system on the boundary of the orthant and then
/// fixing the phase through P. nullopt if a is not in the image.
std::optional<ComplexVector> preimage(const LocalModel& model, const std::vector<double>& a, Complex zeta);

struct SurjectivityReport {
  std::uint64_t targets = 0;
  std::uint64_t successes = 0;
  double max_error = 0.0;

  SurjectivityReport& operator+=(const SurjectivityReport& o);
};

/// Random targets (beta, zeta): beta = alpha + Phi_H(w) + nu with w in the
/// unit polydisc and nu in the unit box of h0 coordinates; zeta in the unit
/// disc. Each target is inverted with `preimage` and re-evaluated.
SurjectivityReport surjectivity_check(const LocalModel& model, std::uint64_t targets, std::uint64_t seed, double tol);

struct SubmersionReport {
  char subcase = 'A';     // 'A': all z_j != 0; 'B': z_i = 0 with xi_i = 1
  ComplexVector witness;  // zeta
  double dphi_witness = 0.0;    // |dPhi_H|_z(zeta)|
  double dphi_i_witness = 0.0;  // |dPhi_H|_z(i zeta)|
  Complex dp_witness;           // dP|_z(zeta)
  std::size_t real_rank = 0;
  std::size_t expected_rank = 0;  // h + 2
  bool full_rank = false;
};

/// Rank of (dPhi_H, dP) at z together with the explicit witness direction.
/// Errors: NotSurjective, ExceptionalPoint, DimensionMismatch.
SubmersionReport submersion_check(const LocalModel& model, const ComplexVector& z);

struct SubmersionSampleReport {
  std::uint64_t samples = 0;
  std::uint64_t rank_failures = 0;
  double max_witness_error = 0.0;  // max over samples of |dPhi(zeta)|, |dPhi(i zeta)|
  double min_dp_witness = 0.0;     // min over samples of |dP(zeta)|

  SubmersionSampleReport& operator+=(const SubmersionSampleReport& o);
};

/// Samples non-exceptional points (every non-exceptional support pattern with
/// equal probability) and runs submersion_check at each.
SubmersionSampleReport submersion_sampling(const LocalModel& model, std::uint64_t samples, std::uint64_t seed);

struct SheetMembership {
  ComplexVector z;
  bool on_sheet = false;
};

/// On the exceptional sheet P = 0: some z_j = 0 with xi_j > 0.
SheetMembership exceptional_sheet_member(const LocalModel& model, const ComplexVector& z);

}  // namespace cxone
