#pragma once

// Exact integer lattice algebra: dense GMP-backed integer matrices, Smith and
// Hermite normal forms, saturated lattice kernels.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace cxone {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  /// Builds a matrix whose rows are the given vectors (all the same length).
  /// `cols` disambiguates the zero-row case.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;
  /// Rows [first, first+count) as a new matrix.
  IntMatrix row_block(std::size_t first, std::size_t count) const;
  IntMatrix column_block(std::size_t first, std::size_t count) const;
  /// Vertical concatenation; column counts must agree.
  IntMatrix stacked(const IntMatrix& below) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);

  bool is_zero() const;
  bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal, d1 | d2 | ... , nonnegative
  IntMatrix V;  // cols x cols, unimodular

  /// Nonzero diagonal entries of D in order.
  IntVector invariant_factors() const;
  std::size_t rank() const { return invariant_factors().size(); }
};

/// U * m * V = D with D in Smith normal form.
SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form of the row lattice of m: echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Saturated basis of {v in Z^cols : m v = 0}, one basis vector per column.
/// The basis is canonical: its transpose is in Hermite normal form.
IntMatrix lattice_kernel(const IntMatrix& m);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// Exact determinant (Bareiss) of a square matrix.
Integer determinant(const IntMatrix& m);

/// True iff v is an integer combination of the rows of m.
bool in_row_lattice(const IntVector& v, const IntMatrix& m);
bool same_row_lattice(const IntMatrix& a, const IntMatrix& b);

Integer gcd_of(const IntVector& v);
/// v divided by the gcd of its entries (zero vector unchanged).
IntVector primitive(const IntVector& v);
/// Smallest positive integer multiple of a rational vector with gcd 1.
IntVector primitive_integer_multiple(const RationalVector& v);

RationalVector to_rational(const IntVector& v);
IntVector column_sums(const IntMatrix& m);

}  // namespace cxone
