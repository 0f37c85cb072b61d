#include "cxone/dh.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "cxone/error.hpp"
#include "sharding.hpp"

namespace cxone {

std::size_t BinGrid::bin_count() const {
  std::size_t total = 1;
  for (auto c : counts) total *= c;
  return total;
}

double BinGrid::bin_volume() const {
  double v = 1.0;
  for (std::size_t a = 0; a < counts.size(); ++a) v *= (hi[a] - lo[a]) / static_cast<double>(counts[a]);
  return v;
}

std::vector<std::size_t> BinGrid::bin_index(std::size_t flat) const {
  std::vector<std::size_t> idx(counts.size());
  for (std::size_t a = counts.size(); a-- > 0;) {
    idx[a] = flat % counts[a];
    flat /= counts[a];
  }
  return idx;
}

std::vector<double> BinGrid::bin_center(std::size_t flat) const {
  std::vector<std::size_t> idx = bin_index(flat);
  std::vector<double> c(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    c[a] = lo[a] + (static_cast<double>(idx[a]) + 0.5) * (hi[a] - lo[a]) / static_cast<double>(counts[a]);
  return c;
}

double DHEstimate::total_mass() const {
  double s = 0.0;
  for (double d : density) s += d;
  return s * grid.bin_volume();
}

namespace {

struct Histogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t out_of_range = 0;

  Histogram& operator+=(const Histogram& o) {
    if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0);
    for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    out_of_range += o.out_of_range;
    return *this;
  }
};

void validate(const SubtorusRep& rep, double radius, const BinGrid& grid, std::uint64_t samples) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("InvalidRadius", "truncation radius must be positive");
  if (samples < 10000) throw DomainError("TooFewSamples", "at least 10^4 samples are required");
  if (grid.counts.size() != rep.h() || grid.lo.size() != rep.h() || grid.hi.size() != rep.h())
    throw DomainError("DegenerateGrid", "grid dimension must equal dim H");
  if (rep.h() == 0) throw DomainError("DegenerateGrid", "dim H = 0 has no density to estimate");
  for (std::size_t a = 0; a < rep.h(); ++a) {
    if (grid.counts[a] == 0) throw DomainError("DegenerateGrid", "every axis needs at least one bin");
    if (!(grid.lo[a] < grid.hi[a]) || !std::isfinite(grid.lo[a]) || !std::isfinite(grid.hi[a]))
      throw DomainError("DegenerateGrid", "grid bounds must satisfy lo < hi");
  }
}

}  // namespace

DHEstimate dh_estimate(const SubtorusRep& rep, double radius, const BinGrid& grid, std::uint64_t samples,
                       std::uint64_t seed) {
  validate(rep, radius, grid, samples);
  const std::size_t n = rep.n(), h = rep.h(), bins = grid.bin_count();
  std::vector<double> w(h * n);
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t j = 0; j < n; ++j) w[a * n + j] = rep.weights()(a, j).get_d();

  auto shard = [&](std::uint64_t shard_seed, std::uint64_t count) {
    std::mt19937_64 rng(shard_seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Histogram hist;
    hist.counts.assign(bins, 0);
    std::vector<double> r2(n), phi(h);
    for (std::uint64_t s = 0; s < count; ++s) {
      // |z_j|^2 is uniform on [0, R^2] under Lebesgue measure on the disc;
      // the phase does not enter Phi_H.
      for (auto& x : r2) x = radius * radius * u(rng);
      std::size_t flat = 0;
      bool inside = true;
      for (std::size_t a = 0; a < h && inside; ++a) {
        double v = 0.0;
        for (std::size_t j = 0; j < n; ++j) v += 0.5 * w[a * n + j] * r2[j];
        const double pos = (v - grid.lo[a]) / (grid.hi[a] - grid.lo[a]) * static_cast<double>(grid.counts[a]);
        if (!(pos >= 0.0) || pos >= static_cast<double>(grid.counts[a])) {
          inside = false;
          break;
        }
        flat = flat * grid.counts[a] + static_cast<std::size_t>(pos);
      }
      if (inside)
        ++hist.counts[flat];
      else
        ++hist.out_of_range;
    }
    return hist;
  };
  Histogram hist = detail::run_sharded<Histogram>(samples, 100000, seed, shard);

  DHEstimate est;
  est.grid = grid;
  est.samples = samples;
  est.radius = radius;
  est.out_of_range = hist.out_of_range;
  est.polydisc_volume = std::pow(M_PI * radius * radius, static_cast<double>(n));
  const double scale = est.polydisc_volume / static_cast<double>(samples) / grid.bin_volume();
  est.density.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) est.density[b] = scale * static_cast<double>(hist.counts[b]);
  return est;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const DHEstimate& est) {
  const std::size_t h = est.grid.dimension();
  out << "# measure: Lebesgue on the polydisc |z_j| <= R\n";
  out << "# radius: " << fmt(est.radius) << "\n";
  out << "# polydisc_volume: " << fmt(est.polydisc_volume) << "\n";
  out << "# samples: " << est.samples << "\n";
  out << "# out_of_range: " << est.out_of_range << "\n";
  for (std::size_t a = 0; a < h; ++a)
    out << "# axis " << a + 1 << ": [" << fmt(est.grid.lo[a]) << ", " << fmt(est.grid.hi[a]) << "] in "
        << est.grid.counts[a] << " bins\n";
  for (std::size_t a = 0; a < h; ++a) out << "x" << a + 1 << ",";
  out << "density\n";
  for (std::size_t b = 0; b < est.density.size(); ++b) {
    for (double c : est.grid.bin_center(b)) out << fmt(c) << ",";
    out << fmt(est.density[b]) << "\n";
  }
}

}  // namespace cxone
