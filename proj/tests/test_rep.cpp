#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cxone/error.hpp"
#include "cxone/rep.hpp"
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

SubtorusRep kernel_rep(std::initializer_list<long> q) { return SubtorusRep::from_kernel(IntMatrix{q}); }

// Random primitive sign-semidefinite relation row: a connected, non-proper
// complexity-one kernel presentation.
SubtorusRep random_nonproper_kernel(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> e(-5, 5);
  for (;;) {
    IntVector q(n);
    bool pos = false, neg = false;
    for (auto& x : q) {
      x = e(rng);
      pos |= x > 0;
      neg |= x < 0;
    }
    if (pos == neg) continue;  // zero vector or mixed signs
    if (gcd_of(q) != 1) continue;
    return SubtorusRep::from_kernel(IntMatrix::from_rows({q}, n));
  }
}

}  // namespace

TEST_CASE("presentations") {
  SubtorusRep img = SubtorusRep::from_image(IntMatrix{{1, -1}});
  CHECK(img.n() == 2);
  CHECK(img.h() == 1);
  CHECK(img.effective());
  CHECK(img.connected());
  CHECK(same_row_lattice(img.relations(), IntMatrix{{1, 1}}));

  CHECK_FALSE(SubtorusRep::from_image(IntMatrix{{2, -2}}).effective());

  SubtorusRep disconnected = kernel_rep({2, 2});
  CHECK(disconnected.effective());
  CHECK_FALSE(disconnected.connected());
  CHECK(disconnected.component_orders() == IntVector{2});

  CHECK(error_code_of([] { SubtorusRep::from_kernel(IntMatrix{{1, 2}, {2, 4}}); }) == "InvalidPresentation");
}

TEST_CASE("image and kernel presentations interconvert") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> hd(1, 3), extra(0, 2);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t h = hd(rng);
    IntMatrix w = oracle::random_matrix(rng, h, h + extra(rng), -3, 3);
    SubtorusRep img = SubtorusRep::from_image(w);
    if (!img.effective()) continue;
    ++tested;
    SubtorusRep ker = SubtorusRep::from_kernel(img.relations());
    CHECK(ker.h() == img.h());
    CHECK(ker.connected());
    CHECK(same_row_lattice(ker.weights(), w));
  }
  CHECK(tested > 30);
}

TEST_CASE("moment map evaluation") {
  SubtorusRep r = SubtorusRep::from_image(IntMatrix{{1, -1}});
  CHECK(moment_eval(r, {0.0, 0.0}) == std::vector<double>{0.0});
  CHECK(moment_eval(r, {1.0, 1.0})[0] == doctest::Approx(0.0));
  SubtorusRep t2 = SubtorusRep::from_image(IntMatrix::identity(2));
  auto v = moment_eval(t2, {std::sqrt(2.0), 2.0});
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(2.0));
  CHECK(error_code_of([&] { moment_eval(t2, {1.0}); }) == "DimensionMismatch");
}

TEST_CASE("onto and proper criteria") {
  CHECK(is_onto(SubtorusRep::from_image(IntMatrix{{1, -1}})));
  CHECK_FALSE(is_onto(SubtorusRep::from_image(IntMatrix{{1, 1}})));
  CHECK(is_onto(SubtorusRep::from_image(IntMatrix{{1, 0, -1}, {0, 1, -1}})));

  CHECK(is_proper(SubtorusRep::from_image(IntMatrix{{1, 1}})));
  CHECK_FALSE(is_proper(SubtorusRep::from_image(IntMatrix{{1, -1}})));
  // Farkas: the functional (1,1) is positive on (1,0), (0,1) and (1,1).
  CHECK(is_proper(SubtorusRep::from_image(IntMatrix{{1, 0, 1}, {0, 1, 1}})));

  CHECK(error_code_of([] { is_onto(SubtorusRep::from_image(IntMatrix{{2, -2}})); }) == "Ineffective");
}

TEST_CASE("proper xor nonnegative relation, against brute-force oracle") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> hd(1, 3), nd(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix w = oracle::random_matrix(rng, hd(rng), nd(rng), -3, 3);
    SubtorusRep r = SubtorusRep::from_image(w);
    if (!r.effective()) continue;
    const bool relation = oracle::nonneg_relation_exists(w);
    CHECK(is_proper(r) != relation);
    CHECK(is_onto(r) == oracle::positive_relation_exists(w));
  }
}

TEST_CASE("defining polynomial examples and errors") {
  CHECK(defining_polynomial(SubtorusRep::from_image(IntMatrix{{1, -1}})).exponents == IntVector{1, 1});
  CHECK(defining_polynomial(kernel_rep({1, 1})).exponents == IntVector{1, 1});
  DefiningPolynomial p = defining_polynomial(kernel_rep({1, 2, 1}));
  CHECK(p.exponents == IntVector{1, 2, 1});
  CHECK(p.all_positive());
  CHECK(defining_polynomial(kernel_rep({-1, -2, -1})).exponents == IntVector{1, 2, 1});

  CHECK(error_code_of([] { defining_polynomial(SubtorusRep::from_image(IntMatrix::identity(2))); }) ==
        "NotComplexityOne");
  CHECK(error_code_of([] { defining_polynomial(SubtorusRep::from_image(IntMatrix{{1, 0}, {0, 1}, {0, 0}})); }) ==
        "Ineffective");
  CHECK(error_code_of([] { defining_polynomial(SubtorusRep::from_image(IntMatrix{{1, 0, 1}, {0, 1, 1}})); }) ==
        "NotNonProper");
  CHECK(error_code_of([] { defining_polynomial(kernel_rep({1, -1})); }) == "NotNonProper");
  CHECK(error_code_of([] { defining_polynomial(kernel_rep({2, 2})); }) == "ExactnessFailure");
}

TEST_CASE("defining polynomial property: relation, primitivity, onto iff positive") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> nd(2, 6);
  for (int trial = 0; trial < 100; ++trial) {
    SubtorusRep r = random_nonproper_kernel(rng, nd(rng));
    DefiningPolynomial p = defining_polynomial(r);
    CHECK((r.weights() * p.exponents) == IntVector(r.h(), Integer(0)));
    CHECK(gcd_of(p.exponents) == 1);
    CHECK(p.all_positive() == is_onto(r));
    CHECK_FALSE(is_proper(r));
  }
}

TEST_CASE("polynomial evaluation and gradient") {
  DefiningPolynomial p{{1, 2, 1}};
  Complex z0(0.3, 0.4), z1(-1.1, 0.2), z2(0.5, -0.7);
  Complex direct = z0 * z1 * z1 * z2;
  Complex v = p.evaluate({z0, z1, z2});
  CHECK(std::abs(v - direct) < 1e-14);
  CHECK(p.evaluate({0.0, z1, z2}) == Complex(0.0, 0.0));
  auto g = p.gradient({z0, z1, z2});
  CHECK(std::abs(g[1] - 2.0 * z0 * z1 * z2) < 1e-14);
  // z1 = 0 with exponent 2 kills the derivative too; z0 = 0 with exponent 1 does not.
  CHECK(std::abs(p.gradient({z0, 0.0, z2})[1]) == 0.0);
  CHECK(std::abs(p.gradient({0.0, z1, z2})[0] - z1 * z1 * z2) < 1e-14);

  DefiningPolynomial big{{400, 400}};
  Complex w = big.evaluate({Complex(1.001, 0.0), Complex(0.999, 0.0)});
  CHECK(std::isfinite(w.real()));
  CHECK(w.real() == doctest::Approx(std::pow(1.001 * 0.999, 400)));
}

TEST_CASE("split") {
  Splitting s = split(kernel_rep({1, 1, 0}));
  CHECK(s.h_double_prime == 1);
  CHECK(s.h_prime == 1);
  CHECK(s.permutation == std::vector<std::size_t>{0, 1, 2});
  CHECK(s.onto_polynomial.exponents == IntVector{1, 1});
  CHECK(s.onto_part.n() == 2);
  CHECK(s.toric_part.n() == 1);
  CHECK(is_onto(s.onto_part));
  CHECK(splitting_reassembles(kernel_rep({1, 1, 0}), s));

  Splitting permuted = split(kernel_rep({0, 3, 1}));
  CHECK(permuted.permutation == std::vector<std::size_t>{1, 2, 0});
  CHECK(permuted.onto_polynomial.exponents == IntVector{3, 1});
  CHECK(splitting_reassembles(kernel_rep({0, 3, 1}), permuted));

  Splitting id = split(kernel_rep({1, 2, 1}));
  CHECK(id.h_double_prime == 0);
  CHECK(id.permutation == std::vector<std::size_t>{0, 1, 2});

  CHECK(error_code_of([] { split(SubtorusRep::from_image(IntMatrix{{1, 1}})); }) == "NotNonProper");
  CHECK(error_code_of([] { split(kernel_rep({1, -2})); }) == "NotNonProper");
}

TEST_CASE("split reassembles for random non-proper reps") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> nd(2, 6);
  for (int trial = 0; trial < 100; ++trial) {
    SubtorusRep r = random_nonproper_kernel(rng, nd(rng));
    Splitting s = split(r);
    CHECK(splitting_reassembles(r, s));
    for (std::size_t k = 0; k <= s.h_prime; ++k) CHECK(s.onto_polynomial.exponents[k] > 0);
  }
}

TEST_CASE("stabilizers") {
  SubtorusRep r = kernel_rep({1, 2, 1});
  StabilizerInfo z2 = stabilizer(r, {0, 2});
  CHECK(z2.dimension == 0);
  CHECK(z2.component_group == IntVector{2});
  CHECK_FALSE(z2.is_trivial());
  CHECK(stabilizer(r, {0, 1, 2}).is_trivial());
  StabilizerInfo all = stabilizer(r, {});
  CHECK(all.dimension == 2);
  CHECK(all.component_group.empty());
}

TEST_CASE("exceptional orbits") {
  SubtorusRep r = kernel_rep({1, 2, 1});
  CHECK_FALSE(is_exceptional_orbit(r, {0, 1, 2}));
  CHECK_FALSE(is_exceptional_orbit(r, {1, 2}));
  CHECK(is_exceptional_orbit(r, {0, 2}));
  CHECK(is_exceptional_orbit(r, {0}));
  CHECK(error_code_of([] { is_exceptional_orbit(kernel_rep({1, 1, 0}), {0, 1, 2}); }) == "NotSurjective");
}

TEST_CASE("exceptional iff nontrivial stabilizer, all supports, determinantal-divisor oracle") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> nd(2, 6);
  int reps = 0;
  while (reps < 40) {
    SubtorusRep r = random_nonproper_kernel(rng, nd(rng));
    if (!is_onto(r)) continue;
    ++reps;
    const std::size_t n = r.n();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      IndexSet support;
      std::vector<IntVector> rows{r.relations().row(0)};
      for (std::size_t j = 0; j < n; ++j)
        if (mask & (1u << j)) {
          support.push_back(j);
          IntVector e(n, Integer(0));
          e[j] = 1;
          rows.push_back(e);
        }
      auto f = oracle::invariant_factors(IntMatrix::from_rows(rows, n));
      const bool trivial = f.size() == n && std::all_of(f.begin(), f.end(), [](const Integer& d) { return d == 1; });
      CHECK(is_exceptional_orbit(r, support) == !trivial);
      CHECK(stabilizer(r, support).is_trivial() == trivial);
    }
  }
}
