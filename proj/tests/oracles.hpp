#pragma once

// Independent test oracles. Nothing here calls into the library's normal-form
// or simplex code; each routine is a brute-force or textbook reformulation.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "cxone/lattice.hpp"

namespace oracle {

using cxone::IntMatrix;
using cxone::Integer;
using cxone::Rational;
using cxone::RationalVector;

/// Exact determinant by cofactor expansion over rationals (small sizes only).
inline Rational det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

/// Invariant factors via determinantal divisors: d_k = gcd of all k x k minors,
/// factor_k = d_k / d_{k-1}. Returns the nonzero factors.
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
        std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rs[i], cs[j]);
        Rational d = det(sub);
        Integer di = abs(d.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), di.get_mpz_t());
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Unique solution of a rational linear system with independent columns, or
/// nullopt if the columns are dependent or the system is inconsistent.
inline std::optional<RationalVector> solve_unique(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t r = 0; r < rows; ++r) a[r].push_back(b[r]);
  std::size_t pr = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = pr;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;  // dependent column
    std::swap(a[p], a[pr]);
    Rational inv = 1 / a[pr][c];
    for (auto& x : a[pr]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k <= cols; ++k) a[r][k] -= f * a[pr][k];
    }
    pivots.push_back(c);
    ++pr;
  }
  for (std::size_t r = pr; r < rows; ++r)
    if (a[r][cols] != 0) return std::nullopt;
  RationalVector x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
  return x;
}

/// Vertices of {xi >= 0, sum xi = 1, W xi = 0} by enumerating basic solutions.
inline std::vector<RationalVector> relation_polytope_vertices(const IntMatrix& w) {
  const std::size_t h = w.rows(), n = w.cols();
  std::vector<RationalVector> verts;
  for (std::size_t k = 1; k <= std::min(n, h + 1); ++k) {
    for_each_subset(n, k, [&](const std::vector<std::size_t>& s) {
      std::vector<RationalVector> a(h + 1, RationalVector(k));
      RationalVector b(h + 1, Rational(0));
      for (std::size_t r = 0; r < h; ++r)
        for (std::size_t i = 0; i < k; ++i) a[r][i] = w(r, s[i]);
      for (std::size_t i = 0; i < k; ++i) a[h][i] = 1;
      b[h] = 1;
      auto sol = solve_unique(a, b);
      if (!sol) return;
      for (const auto& x : *sol)
        if (x < 0) return;
      RationalVector full(n, Rational(0));
      for (std::size_t i = 0; i < k; ++i) full[s[i]] = (*sol)[i];
      verts.push_back(full);
    });
  }
  return verts;
}

/// Nonnegative nonzero relation exists?
inline bool nonneg_relation_exists(const IntMatrix& w) { return !relation_polytope_vertices(w).empty(); }

/// Strictly positive relation exists? (A strictly positive point exists iff
/// every coordinate is positive at some vertex; average those vertices.)
inline bool positive_relation_exists(const IntMatrix& w) {
  auto verts = relation_polytope_vertices(w);
  std::vector<bool> hit(w.cols(), false);
  for (const auto& v : verts)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] > 0) hit[j] = true;
  return !verts.empty() && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}

}  // namespace oracle
