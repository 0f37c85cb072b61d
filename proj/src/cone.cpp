#include "cxone/cone.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace cxone {

LpFeasibility solve_feasibility(const RationalMatrix& A, const RationalVector& b, std::size_t cols) {
  const std::size_t m = A.size(), n = cols;
  if (b.size() != m) throw std::invalid_argument("solve_feasibility: rhs length mismatch");
  LpFeasibility out;
  if (m == 0) {
    out.feasible = true;
    out.x.assign(n, Rational(0));
    return out;
  }

  // Tableau columns: n structural, m artificial, then rhs.
  const std::size_t width = n + m + 1;
  std::vector<RationalVector> T(m, RationalVector(width, Rational(0)));
  std::vector<int> flip(m, 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (A[i].size() != n) throw std::invalid_argument("solve_feasibility: ragged matrix");
    flip[i] = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = flip[i] * A[i][j];
    T[i][n + i] = 1;
    T[i][width - 1] = flip[i] * b[i];
    basis[i] = n + i;
  }
  auto cost = [&](std::size_t j) { return j >= n ? Rational(1) : Rational(0); };

  for (;;) {
    // Reduced costs c_j - c_B^T B^{-1} A_j; Bland: first negative.
    std::size_t entering = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      Rational rc = cost(j);
      for (std::size_t i = 0; i < m; ++i) rc -= cost(basis[i]) * T[i][j];
      if (rc < 0) {
        entering = j;
        break;
      }
    }
    if (entering == width) break;

    std::size_t leaving = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][entering] <= 0) continue;
      Rational ratio = T[i][width - 1] / T[i][entering];
      if (leaving == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    // Phase-one objective is bounded below by zero.
    assert(leaving != m);

    Rational piv = T[leaving][entering];
    for (auto& v : T[leaving]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving || T[i][entering] == 0) continue;
      Rational f = T[i][entering];
      for (std::size_t j = 0; j < width; ++j) T[i][j] -= f * T[leaving][j];
    }
    basis[leaving] = entering;
  }

  Rational objective = 0;
  for (std::size_t i = 0; i < m; ++i) objective += cost(basis[i]) * T[i][width - 1];

  if (objective == 0) {
    out.feasible = true;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) out.x[basis[i]] = T[i][width - 1];
    return out;
  }

  // Simplex multipliers pi = c_B^T B^{-1}; B^{-1} sits in the artificial block.
  // Optimality gives pi^T A' <= 0 and pi^T b' = objective > 0, so -pi
  // (undoing the row flips) is a Farkas certificate for the original system.
  out.farkas.assign(m, Rational(0));
  for (std::size_t k = 0; k < m; ++k) {
    Rational pi = 0;
    for (std::size_t i = 0; i < m; ++i) pi += cost(basis[i]) * T[i][n + k];
    out.farkas[k] = -pi * flip[k];
  }
  return out;
}

namespace {

RationalMatrix to_rational_rows(const IntMatrix& m) {
  RationalMatrix out(m.rows(), RationalVector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

Rational pair(const RationalVector& u, const IntMatrix& m, std::size_t col) {
  Rational s = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += u[r] * m(r, col);
  return s;
}

}  // namespace

bool ConeFeasibility::verify(const IntMatrix& weights, SignRegime regime) const {
  const std::size_t h = weights.rows(), n = weights.cols();
  if (feasible) {
    if (witness.size() != n) return false;
    bool any_positive = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (regime == SignRegime::StrictPositive && witness[j] <= 0) return false;
      if (witness[j] < 0) return false;
      if (witness[j] > 0) any_positive = true;
    }
    if (!any_positive) return false;
    for (std::size_t r = 0; r < h; ++r) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += witness[j] * weights(r, j);
      if (s != 0) return false;
    }
    return true;
  }
  if (witness.size() != h) return false;
  bool any_strict = false;
  for (std::size_t j = 0; j < n; ++j) {
    Rational p = pair(witness, weights, j);
    if (p < 0) return false;
    if (regime == SignRegime::NonnegNonzero && p == 0) return false;
    if (p > 0) any_strict = true;
  }
  return any_strict;
}

ConeFeasibility exists_sign_relation(const IntMatrix& weights, SignRegime regime) {
  const std::size_t h = weights.rows(), n = weights.cols();
  if (n == 0) throw std::invalid_argument("exists_sign_relation: no weights");
  RationalMatrix A = to_rational_rows(weights);
  RationalVector b(h, Rational(0));
  ConeFeasibility out;

  if (regime == SignRegime::StrictPositive) {
    // xi = 1 + s with s >= 0: W s = -W 1.
    IntVector sums = weights * IntVector(n, Integer(1));
    for (std::size_t r = 0; r < h; ++r) b[r] = -sums[r];
    LpFeasibility lp = solve_feasibility(A, b, n);
    out.feasible = lp.feasible;
    if (lp.feasible) {
      RationalVector xi(n);
      for (std::size_t j = 0; j < n; ++j) xi[j] = lp.x[j] + 1;
      out.witness = to_rational(primitive_integer_multiple(xi));
    } else {
      out.witness = to_rational(primitive_integer_multiple(lp.farkas));
    }
  } else {
    A.emplace_back(n, Rational(1));
    b.emplace_back(1);
    LpFeasibility lp = solve_feasibility(A, b, n);
    out.feasible = lp.feasible;
    if (lp.feasible) {
      out.witness = to_rational(primitive_integer_multiple(lp.x));
    } else {
      RationalVector u(lp.farkas.begin(), lp.farkas.begin() + static_cast<std::ptrdiff_t>(h));
      out.witness = to_rational(primitive_integer_multiple(u));
    }
  }
  assert(out.verify(weights, regime));
  return out;
}

bool ConeMembership::verify(const RationalVector& point, const IntMatrix& generators) const {
  const std::size_t d = generators.rows(), m = generators.cols();
  if (member) {
    if (coefficients.size() != m) return false;
    for (const auto& c : coefficients)
      if (c < 0) return false;
    for (std::size_t r = 0; r < d; ++r) {
      Rational s = 0;
      for (std::size_t j = 0; j < m; ++j) s += coefficients[j] * generators(r, j);
      if (s != point[r]) return false;
    }
    return true;
  }
  if (separator.size() != d) return false;
  for (std::size_t j = 0; j < m; ++j)
    if (pair(separator, generators, j) < 0) return false;
  Rational s = 0;
  for (std::size_t r = 0; r < d; ++r) s += separator[r] * point[r];
  return s < 0;
}

ConeMembership cone_member(const RationalVector& point, const IntMatrix& generators) {
  if (point.size() != generators.rows())
    throw std::invalid_argument("cone_member: point and generators disagree in dimension");
  ConeMembership out;
  LpFeasibility lp = solve_feasibility(to_rational_rows(generators), point, generators.cols());
  out.member = lp.feasible;
  if (lp.feasible)
    out.coefficients = std::move(lp.x);
  else
    out.separator = to_rational(primitive_integer_multiple(lp.farkas));
  assert(out.verify(point, generators));
  return out;
}

}  // namespace cxone
