#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>

#include "cxone/coadjoint.hpp"
#include "cxone/error.hpp"
#include "oracles.hpp"

using namespace cxone;

namespace {

std::string error_code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.code();
  }
  return "";
}

RationalVector rv(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::set<IntVector> as_set(const std::vector<IntVector>& v) { return {v.begin(), v.end()}; }

Rational pair(const IntVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

// Orbit by brute force over the whole Weyl group (all signed permutations,
// even sign changes for D).
std::set<RationalVector> orbit_by_group(const RootSystem& sys, const RationalVector& x) {
  const std::size_t k = sys.rank;
  std::set<RationalVector> out;
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      if (sys.family == RootFamily::D && __builtin_popcountll(mask) % 2) continue;
      RationalVector y(k);
      for (std::size_t i = 0; i < k; ++i) y[i] = (mask >> i & 1 ? -1 : 1) * x[perm[i]];
      out.insert(y);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Facets of a full-dimensional hull: every hyperplane through k affinely
// independent vertices that leaves all vertices on one side. Returns the
// vertex sets of the facets.
std::set<std::vector<std::size_t>> facets_by_subsets(const std::vector<RationalVector>& v) {
  const std::size_t k = v[0].size();
  std::set<std::vector<std::size_t>> out;
  oracle::for_each_subset(v.size(), k, [&](const std::vector<std::size_t>& s) {
    // Normal c with <c, v_s0 - v_si> = 0: solve with the last coordinate
    // eliminated by trying each coordinate as the free one.
    for (std::size_t free = 0; free < k; ++free) {
      std::vector<RationalVector> a;
      RationalVector b;
      for (std::size_t i = 1; i < k; ++i) {
        RationalVector row;
        for (std::size_t c = 0; c < k; ++c)
          if (c != free) row.push_back(v[s[i]][c] - v[s[0]][c]);
        a.push_back(row);
        b.push_back(-(v[s[i]][free] - v[s[0]][free]));
      }
      auto sol = oracle::solve_unique(a, b);
      if (!sol) continue;
      RationalVector c;
      for (std::size_t i = 0, j = 0; i < k; ++i) c.push_back(i == free ? Rational(1) : (*sol)[j++]);
      Rational off = 0;
      for (std::size_t i = 0; i < k; ++i) off += c[i] * v[s[0]][i];
      int above = 0, below = 0;
      std::vector<std::size_t> face;
      for (std::size_t p = 0; p < v.size(); ++p) {
        Rational t = -off;
        for (std::size_t i = 0; i < k; ++i) t += c[i] * v[p][i];
        if (t > 0) ++above;
        if (t < 0) ++below;
        if (t == 0) face.push_back(p);
      }
      if (above == 0 || below == 0) out.insert(face);
      return;
    }
  });
  return out;
}

}  // namespace

TEST_CASE("root systems") {
  RootSystem b2 = build_root_system(RootFamily::B, 2);
  CHECK(as_set(b2.roots) == as_set({iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1}), iv({1, 1}), iv({1, -1}),
                                    iv({-1, 1}), iv({-1, -1})}));
  CHECK(build_root_system(RootFamily::B, 1).roots == std::vector<IntVector>{iv({-1}), iv({1})});
  CHECK(build_root_system(RootFamily::D, 3).roots.size() == 12);
  CHECK(error_code_of([] { build_root_system(RootFamily::B, 0); }) == "InvalidRank");
  CHECK(error_code_of([] { build_root_system(RootFamily::D, 1); }) == "InvalidRank");

  for (std::size_t k = 1; k <= 6; ++k) {
    for (RootFamily f : {RootFamily::B, RootFamily::D}) {
      if (f == RootFamily::D && k < 2) continue;
      RootSystem s = build_root_system(f, k);
      CHECK(s.roots.size() == (f == RootFamily::B ? 2 * k * k : 2 * k * (k - 1)));
      auto set = as_set(s.roots);
      for (const auto& a : s.roots) {
        IntVector neg(a);
        for (auto& x : neg) x = -x;
        CHECK(set.count(neg) == 1);
      }
    }
  }
  CHECK(build_root_system(RootFamily::B, 3).weyl_group_order() == 48);
  CHECK(build_root_system(RootFamily::D, 3).weyl_group_order() == 24);
}

TEST_CASE("weyl orbits") {
  RootSystem b2 = build_root_system(RootFamily::B, 2);
  auto o = weyl_orbit(b2, rv({1, 0}));
  CHECK(std::set<RationalVector>(o.begin(), o.end()) ==
        std::set<RationalVector>{rv({1, 0}), rv({-1, 0}), rv({0, 1}), rv({0, -1})});
  RootSystem d3 = build_root_system(RootFamily::D, 3);
  CHECK(weyl_orbit(d3, rv({1, 0, 0})).size() == 6);
  CHECK(weyl_orbit(d3, rv({0, 0, 0})) == std::vector<RationalVector>{rv({0, 0, 0})});
  CHECK(error_code_of([&] { weyl_orbit(d3, rv({1, 0})); }) == "DimensionMismatch");

  // Generator closure agrees with the full group; sizes divide |W|.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> e(-2, 2);
  for (int t = 0; t < 60; ++t) {
    const std::size_t k = 2 + t % 3;
    RootSystem sys = build_root_system(t % 2 ? RootFamily::D : RootFamily::B, k);
    RationalVector x(k);
    for (auto& c : x) c = Rational(e(rng), 1 + rng() % 2);
    for (auto& c : x) c.canonicalize();
    auto orbit = weyl_orbit(sys, x);
    CHECK(std::set<RationalVector>(orbit.begin(), orbit.end()) == orbit_by_group(sys, x));
    CHECK(sys.weyl_group_order() % Integer(static_cast<unsigned long>(orbit.size())) == 0);
  }
}

TEST_CASE("isotropy weights") {
  RootSystemOrbit b2 = build_orbit(build_root_system(RootFamily::B, 2), rv({1, 0}));
  CHECK(as_set(isotropy_weights_at(b2, rv({1, 0}))) == as_set({iv({-1, 1}), iv({-1, 0}), iv({-1, -1})}));
  CHECK(b2.weight_count == 3);
  CHECK(b2.complexity == 1);

  RootSystemOrbit d3 = build_orbit(build_root_system(RootFamily::D, 3), rv({1, 0, 0}));
  CHECK(as_set(isotropy_weights_at(d3, rv({1, 0, 0}))) ==
        as_set({iv({-1, 1, 0}), iv({-1, -1, 0}), iv({-1, 0, 1}), iv({-1, 0, -1})}));
  CHECK(d3.weight_count == 4);
  CHECK(d3.complexity == 1);

  RootSystemOrbit b1 = build_orbit(build_root_system(RootFamily::B, 1), rv({1}));
  CHECK(isotropy_weights_at(b1, rv({1})) == std::vector<IntVector>{iv({-1})});
  CHECK(error_code_of([&] { isotropy_weights_at(b2, rv({1, 1})); }) == "PointNotFixed");

  // Positive and negative pairings have equal counts at every fixed point.
  for (RationalVector x : {rv({1, 0}), rv({2, 1}), rv({1, 1})}) {
    RootSystemOrbit o = build_orbit(build_root_system(RootFamily::B, 2), x);
    for (std::size_t i = 0; i < o.fixed_points.size(); ++i) {
      std::size_t pos = 0;
      for (const auto& a : o.system.roots) pos += pair(a, o.fixed_points[i]) > 0;
      CHECK(pos == o.weights[i].size());
      CHECK(o.weights[i].size() == o.weight_count);
    }
  }
  // (1,1) in B_2 has three negative roots and hence complexity one.
  CHECK(build_orbit(build_root_system(RootFamily::B, 2), rv({1, 1})).complexity == 1);
  CHECK(build_orbit(build_root_system(RootFamily::B, 2), rv({2, 1})).complexity == 2);
}

TEST_CASE("moment polytopes") {
  MomentPolytope diamond = moment_polytope(build_orbit(build_root_system(RootFamily::B, 2), rv({1, 0})));
  CHECK(diamond.vertices.size() == 4);
  CHECK(diamond.dimension == 2);
  CHECK(diamond.facets.size() == 4);

  MomentPolytope oct = moment_polytope(build_orbit(build_root_system(RootFamily::D, 3), rv({1, 0, 0})));
  CHECK(oct.vertices.size() == 6);
  CHECK(oct.facets.size() == 8);
  for (const auto& f : oct.facets) CHECK(f.vertices.size() == 3);

  MomentPolytope point = moment_polytope(build_orbit(build_root_system(RootFamily::B, 3), rv({0, 0, 0})));
  CHECK(point.vertices.size() == 1);
  CHECK(point.dimension == 0);
  CHECK(point.facets.empty());

  // D_2 orbit of (1,1) is a segment.
  MomentPolytope seg = moment_polytope(build_orbit(build_root_system(RootFamily::D, 2), rv({1, 1})));
  CHECK(seg.dimension == 1);
  CHECK(seg.facets.size() == 2);

  // Against the subset oracle for full-dimensional orbits with k <= 3.
  for (RootFamily f : {RootFamily::B, RootFamily::D})
    for (RationalVector x : {rv({1, 0, 0}), rv({2, 1, 0}), rv({1, 1, 1}), rv({3, 2, 1}), rv({2, 1, 1})}) {
      RootSystemOrbit o = build_orbit(build_root_system(f, 3), x);
      MomentPolytope p = moment_polytope(o);
      REQUIRE(p.dimension == 3);
      std::set<std::vector<std::size_t>> ours;
      for (const auto& fa : p.facets) {
        ours.insert(fa.vertices);
        for (std::size_t i = 0; i < p.vertices.size(); ++i)
          CHECK(pair(fa.normal, p.vertices[i]) <= fa.offset);
      }
      CHECK(ours == facets_by_subsets(p.vertices));
    }
}

TEST_CASE("ball certificates") {
  RootSystemOrbit b2 = build_orbit(build_root_system(RootFamily::B, 2), rv({1, 0}));
  BallCertificate c = ball_certificate(b2, rv({1, 0}), iv({1, 0}), Side::Plus);
  CHECK(c.valid);
  CHECK(c.differences_span_codim_one);
  CHECK(c.unique_fixed_point_on_side);
  CHECK_FALSE(ball_certificate(b2, rv({1, 0}), iv({1, 0}), Side::Minus).valid);
  CHECK_FALSE(ball_certificate(b2, rv({0, 1}), iv({1, 0}), Side::Plus).valid);

  RootSystemOrbit d3 = build_orbit(build_root_system(RootFamily::D, 3), rv({1, 0, 0}));
  CHECK(ball_certificate(d3, rv({1, 0, 0}), iv({1, 0, 0}), Side::Plus).valid);

  RootSystemOrbit b21 = build_orbit(build_root_system(RootFamily::B, 2), rv({2, 1}));
  CHECK(error_code_of([&] { ball_certificate(b21, rv({2, 1}), iv({1, 0}), Side::Plus); }) == "ComplexityNotOne");
  CHECK(error_code_of([&] { ball_certificate(b2, rv({1, 1}), iv({1, 0}), Side::Plus); }) == "PointNotFixed");
  CHECK(error_code_of([&] { ball_certificate(b2, rv({1, 0}), iv({0, 0}), Side::Plus); }) == "ZeroNormal");

  // The orbit of (1,1) has complexity one, but no certificate is valid.
  RootSystemOrbit b11 = build_orbit(build_root_system(RootFamily::B, 2), rv({1, 1}));
  for (const auto& p : b11.fixed_points)
    for (IntVector n : {iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({1, -1})})
      for (Side s : {Side::Plus, Side::Minus}) CHECK_FALSE(ball_certificate(b11, p, n, s).valid);

  // Every valid certificate leaves the other fixed points on the closed
  // opposite side.
  for (const RootSystemOrbit* o : {&b2, &d3})
    for (const auto& p : o->fixed_points)
      for (std::size_t i = 0; i < o->system.rank; ++i) {
        IntVector n(o->system.rank, Integer(0));
        n[i] = 1;
        for (Side s : {Side::Plus, Side::Minus}) {
          BallCertificate cert = ball_certificate(*o, p, n, s);
          if (!cert.valid) continue;
          const int sign = s == Side::Plus ? 1 : -1;
          for (const auto& q : o->fixed_points)
            if (q != p) CHECK(sign * pair(n, q) <= 0);
        }
      }
}

TEST_CASE("packing") {
  PackingReport b2 = full_packing_report(build_orbit(build_root_system(RootFamily::B, 2), rv({1, 0})));
  REQUIRE(b2.found);
  CHECK(b2.hyperplane == iv({1, 0}));
  REQUIRE(b2.certificates.size() == 2);
  CHECK(b2.certificates[0].point == rv({1, 0}));
  CHECK(b2.certificates[1].point == rv({-1, 0}));
  REQUIRE(b2.weyl_element);
  CHECK(b2.weyl_element->is_identity_permutation());
  CHECK(b2.weyl_element->flipped_coordinates() == std::vector<std::size_t>{1});
  CHECK(b2.complement_measure_zero);

  PackingReport d3 = full_packing_report(build_orbit(build_root_system(RootFamily::D, 3), rv({1, 0, 0})));
  REQUIRE(d3.found);
  CHECK(d3.hyperplane == iv({1, 0, 0}));
  REQUIRE(d3.weyl_element);
  CHECK(d3.weyl_element->flipped_coordinates() == std::vector<std::size_t>{1, 2});
  CHECK(d3.weyl_element->apply(rv({1, 0, 0})) == rv({-1, 0, 0}));
  CHECK(d3.complement_measure_zero);
  CHECK(d3.alternative_hyperplanes.size() == 2);

  PackingReport zero = full_packing_report(build_orbit(build_root_system(RootFamily::B, 2), rv({0, 0})));
  CHECK_FALSE(zero.found);
  CHECK_FALSE(zero.complexity_one);
  PackingReport b11 = full_packing_report(build_orbit(build_root_system(RootFamily::B, 2), rv({1, 1})));
  CHECK_FALSE(b11.found);
}
