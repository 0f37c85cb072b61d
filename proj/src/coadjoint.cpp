#include "cxone/coadjoint.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "cxone/error.hpp"

namespace cxone {

std::string to_string(RootFamily f) { return f == RootFamily::B ? "B" : "D"; }
std::string to_string(Side s) { return s == Side::Plus ? "+" : "-"; }

Integer RootSystem::weyl_group_order() const {
  Integer order = 1;
  for (std::size_t i = 2; i <= rank; ++i) order *= static_cast<unsigned long>(i);
  const std::size_t flips = family == RootFamily::B ? rank : rank - 1;
  for (std::size_t i = 0; i < flips; ++i) order *= 2;
  return order;
}

RootSystem build_root_system(RootFamily family, std::size_t rank) {
  if (family == RootFamily::B && rank < 1) throw DomainError("InvalidRank", "B_k needs k >= 1");
  if (family == RootFamily::D && rank < 2) throw DomainError("InvalidRank", "D_k needs k >= 2");
  if (rank > 12) throw DomainError("InvalidRank", "rank above 12 is not supported");
  RootSystem sys{family, rank, {}};
  auto unit = [&](std::size_t i, long s) {
    IntVector v(rank, Integer(0));
    v[i] = s;
    return v;
  };
  if (family == RootFamily::B)
    for (std::size_t i = 0; i < rank; ++i)
      for (long s : {1L, -1L}) sys.roots.push_back(unit(i, s));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j)
      for (long si : {1L, -1L})
        for (long sj : {1L, -1L}) {
          IntVector v(rank, Integer(0));
          v[i] = si;
          v[j] = sj;
          sys.roots.push_back(std::move(v));
        }
  std::sort(sys.roots.begin(), sys.roots.end());
  return sys;
}

namespace {

// Simple reflections as signed-permutation actions on coordinates.
std::vector<RationalVector> reflect_all(const RootSystem& sys, const RationalVector& x) {
  const std::size_t k = sys.rank;
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    RationalVector y(x);
    std::swap(y[i], y[i + 1]);
    out.push_back(std::move(y));
  }
  RationalVector y(x);
  if (sys.family == RootFamily::B) {
    y[k - 1] = -y[k - 1];
  } else {
    Rational a = y[k - 2];
    y[k - 2] = -y[k - 1];
    y[k - 1] = -a;
  }
  out.push_back(std::move(y));
  return out;
}

Rational dot(const IntVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

// Rank over Q of a list of rational vectors.
std::size_t rational_rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

std::size_t affine_dimension(const std::vector<RationalVector>& pts, const std::vector<std::size_t>& idx) {
  if (idx.size() <= 1) return 0;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    RationalVector d(pts[idx[i]]);
    for (std::size_t c = 0; c < d.size(); ++c) d[c] -= pts[idx[0]][c];
    diffs.push_back(std::move(d));
  }
  return rational_rank(std::move(diffs));
}

// Primitive, first nonzero entry positive.
IntVector normalize_normal(const IntVector& v) {
  IntVector p = primitive(v);
  for (const auto& x : p) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : p) y = -y;
    break;
  }
  return p;
}

std::size_t index_of(const RootSystemOrbit& orbit, const RationalVector& y) {
  auto it = std::lower_bound(orbit.fixed_points.begin(), orbit.fixed_points.end(), y);
  if (y.size() != orbit.system.rank || it == orbit.fixed_points.end() || *it != y)
    throw DomainError("PointNotFixed", "point is not in the Weyl orbit");
  return static_cast<std::size_t>(it - orbit.fixed_points.begin());
}

}  // namespace

std::vector<RationalVector> weyl_orbit(const RootSystem& system, const RationalVector& x) {
  if (x.size() != system.rank) throw DomainError("DimensionMismatch", "base point dimension differs from the rank");
  std::set<RationalVector> seen{x};
  std::vector<RationalVector> frontier{x};
  while (!frontier.empty()) {
    std::vector<RationalVector> next;
    for (const auto& v : frontier)
      for (auto& y : reflect_all(system, v))
        if (seen.insert(y).second) next.push_back(std::move(y));
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

RootSystemOrbit build_orbit(const RootSystem& system, const RationalVector& x) {
  RootSystemOrbit orbit;
  orbit.system = system;
  orbit.base_point = x;
  orbit.fixed_points = weyl_orbit(system, x);
  for (const auto& y : orbit.fixed_points) {
    std::vector<IntVector> w;
    for (const auto& a : system.roots)
      if (dot(a, y) < 0) w.push_back(a);
    orbit.weights.push_back(std::move(w));
  }
  orbit.weight_count = orbit.weights.front().size();
  for (const auto& w : orbit.weights)
    if (w.size() != orbit.weight_count) throw std::logic_error("build_orbit: weight count varies along the orbit");
  orbit.complexity = static_cast<long>(orbit.weight_count) - static_cast<long>(system.rank);
  return orbit;
}

std::vector<IntVector> isotropy_weights_at(const RootSystemOrbit& orbit, const RationalVector& y) {
  return orbit.weights[index_of(orbit, y)];
}

MomentPolytope moment_polytope(const RootSystemOrbit& orbit) {
  const std::size_t k = orbit.system.rank;
  if (k > 6) throw DomainError("TooLarge", "facet enumeration supports rank <= 6");
  MomentPolytope poly;
  poly.vertices = orbit.fixed_points;
  std::vector<std::size_t> all(poly.vertices.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  poly.dimension = affine_dimension(poly.vertices, all);
  if (poly.dimension == 0) return poly;

  std::set<std::vector<std::size_t>> faces;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    IntVector c(k);
    std::size_t rest = code;
    bool nonzero = false;
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = static_cast<long>(rest % 3) - 1;
      nonzero |= c[i] != 0;
      rest /= 3;
    }
    if (!nonzero) continue;
    Rational best = dot(c, poly.vertices[0]);
    for (const auto& v : poly.vertices) best = std::max(best, dot(c, v));
    std::vector<std::size_t> face;
    for (std::size_t i = 0; i < poly.vertices.size(); ++i)
      if (dot(c, poly.vertices[i]) == best) face.push_back(i);
    if (face.size() == poly.vertices.size()) continue;
    if (affine_dimension(poly.vertices, face) + 1 != poly.dimension) continue;
    if (!faces.insert(face).second) continue;
    poly.facets.push_back(Facet{primitive(c), best / gcd_of(c), face});
  }
  return poly;
}

BallCertificate ball_certificate(const RootSystemOrbit& orbit, const RationalVector& p, const IntVector& normal,
                                 Side side) {
  const std::size_t k = orbit.system.rank;
  if (orbit.complexity != 1)
    throw DomainError("ComplexityNotOne", "orbit has complexity " + std::to_string(orbit.complexity) + ", not 1");
  if (normal.size() != k) throw DomainError("DimensionMismatch", "normal dimension differs from the rank");
  if (std::all_of(normal.begin(), normal.end(), [](const Integer& x) { return x == 0; }))
    throw DomainError("ZeroNormal", "hyperplane normal must be nonzero");
  const std::size_t idx = index_of(orbit, p);

  BallCertificate cert;
  cert.point = p;
  cert.normal = normal;
  cert.side = side;

  const auto& w = orbit.weights[idx];
  std::vector<RationalVector> diffs;
  bool perpendicular = true;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      IntVector d(k);
      for (std::size_t c = 0; c < k; ++c) d[c] = w[i][c] - w[j][c];
      Integer s = 0;
      for (std::size_t c = 0; c < k; ++c) s += d[c] * normal[c];
      perpendicular &= s == 0;
      diffs.push_back(to_rational(d));
    }
  cert.differences_span_codim_one = perpendicular && rational_rank(diffs) + 1 == k;

  const int sign = side == Side::Plus ? 1 : -1;
  std::size_t on_side = 0;
  bool p_on_side = false;
  for (std::size_t i = 0; i < orbit.fixed_points.size(); ++i) {
    if (sgn(dot(normal, orbit.fixed_points[i])) == sign) {
      ++on_side;
      p_on_side |= i == idx;
    }
  }
  cert.unique_fixed_point_on_side = p_on_side && on_side == 1;
  cert.valid = cert.differences_span_codim_one && cert.unique_fixed_point_on_side;
  return cert;
}

RationalVector WeylElement::apply(const RationalVector& x) const {
  RationalVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = signs[i] * x[permutation[i]];
  return y;
}

IntVector WeylElement::apply(const IntVector& x) const {
  IntVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = signs[i] * x[permutation[i]];
  return y;
}

bool WeylElement::is_identity_permutation() const {
  for (std::size_t i = 0; i < permutation.size(); ++i)
    if (permutation[i] != i) return false;
  return true;
}

std::vector<std::size_t> WeylElement::flipped_coordinates() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] < 0) out.push_back(i + 1);
  return out;
}

namespace {

// Sign patterns ordered by number of flips, then lexicographically by the
// flipped index set. D_k only allows an even number of flips.
std::vector<std::vector<int>> sign_patterns(const RootSystem& sys) {
  const std::size_t k = sys.rank;
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (sys.family == RootFamily::D && s.size() % 2) continue;
    sets.push_back(std::move(s));
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<std::vector<int>> out;
  for (const auto& s : sets) {
    std::vector<int> signs(k, 1);
    for (std::size_t i : s) signs[i] = -1;
    out.push_back(std::move(signs));
  }
  return out;
}

std::optional<WeylElement> exchanging_element(const RootSystem& sys, const RationalVector& p, const RationalVector& q,
                                              const IntVector& normal) {
  IntVector neg(normal);
  for (auto& x : neg) x = -x;
  const auto patterns = sign_patterns(sys);
  std::vector<std::size_t> perm(sys.rank);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    for (const auto& signs : patterns) {
      WeylElement w{perm, signs};
      if (w.apply(p) == q && w.apply(normal) == neg) return w;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace

PackingReport full_packing_report(const RootSystemOrbit& orbit) {
  PackingReport report;
  report.complexity_one = orbit.complexity == 1;
  if (!report.complexity_one) return report;
  const std::size_t k = orbit.system.rank;

  std::vector<IntVector> candidates;
  auto add = [&](const IntVector& v) {
    if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; })) return;
    IntVector n = normalize_normal(v);
    if (std::find(candidates.begin(), candidates.end(), n) == candidates.end()) candidates.push_back(n);
  };
  for (std::size_t i = 0; i < k; ++i) {
    IntVector e(k, Integer(0));
    e[i] = 1;
    add(e);
  }
  if (k <= 6)
    for (const auto& f : moment_polytope(orbit).facets) add(f.normal);
  for (const auto& w : orbit.weights) {
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < w.size(); ++i) {
      IntVector d(k);
      for (std::size_t c = 0; c < k; ++c) d[c] = w[i][c] - w[0][c];
      diffs.push_back(std::move(d));
    }
    if (diffs.empty()) continue;
    IntMatrix perp = lattice_kernel(IntMatrix::from_rows(diffs, k));
    if (perp.cols() == 1) add(perp.column(0));
  }
  report.candidates_examined = candidates.size();

  for (const auto& normal : candidates) {
    std::vector<BallCertificate> plus, minus;
    for (const auto& p : orbit.fixed_points) {
      BallCertificate a = ball_certificate(orbit, p, normal, Side::Plus);
      if (a.valid) plus.push_back(a);
      BallCertificate b = ball_certificate(orbit, p, normal, Side::Minus);
      if (b.valid) minus.push_back(b);
    }
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    std::optional<WeylElement> w;
    for (std::size_t i = 0; i < plus.size() && !w; ++i)
      for (std::size_t j = 0; j < minus.size() && !w; ++j)
        if ((w = exchanging_element(orbit.system, plus[i].point, minus[j].point, normal))) pair = {i, j};
    if (!w) continue;
    if (report.found) {
      report.alternative_hyperplanes.push_back(normal);
      continue;
    }
    report.found = true;
    report.hyperplane = normal;
    report.certificates = {plus[pair->first], minus[pair->second]};
    report.weyl_element = w;
    // What the two open half-spaces miss is the slice <normal, x> = 0, which
    // is null in the hull as soon as some vertex lies off the hyperplane.
    report.complement_measure_zero = std::any_of(orbit.fixed_points.begin(), orbit.fixed_points.end(),
                                                 [&](const RationalVector& v) { return dot(normal, v) != 0; });
  }
  return report;
}

}  // namespace cxone
