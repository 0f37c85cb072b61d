#pragma once

// Monte Carlo estimate of the Duistermaat-Heckman density of Phi_H on a
// truncated C^n: push forward Lebesgue measure on the radius-R polydisc and
// histogram it on a regular grid in h*.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cxone/rep.hpp"

namespace cxone {

/// Regular box grid in h*; bins along axis a have width (hi[a]-lo[a])/counts[a].
struct BinGrid {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::size_t> counts;

  std::size_t dimension() const { return counts.size(); }
  std::size_t bin_count() const;
  double bin_volume() const;
  /// Bins are flattened with axis 0 varying slowest.
  std::vector<double> bin_center(std::size_t flat) const;
  std::vector<std::size_t> bin_index(std::size_t flat) const;
};

struct DHEstimate {
  BinGrid grid;
  std::vector<double> density;  // one per bin, Lebesgue volume per unit volume of h*
  std::uint64_t samples = 0;
  std::uint64_t out_of_range = 0;
  double radius = 0.0;
  double polydisc_volume = 0.0;  // (pi R^2)^n

  double total_mass() const;
};

/// Errors: DegenerateGrid (dimension != h, zero bins, lo >= hi),
/// TooFewSamples (< 10^4), InvalidRadius (R <= 0 or not finite).
DHEstimate dh_estimate(const SubtorusRep& rep, double radius, const BinGrid& grid, std::uint64_t samples,
                       std::uint64_t seed);

/// '#'-prefixed metadata lines, a header "x1,...,xh,density", then one row
/// per bin.
void write_csv(std::ostream& out, const DHEstimate& est);

}  // namespace cxone
