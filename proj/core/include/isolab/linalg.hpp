#pragma once

// Dense matrices over Q_q and the finite-precision linear algebra used by
// the isocrystal and Lie-algebra modules. All eliminations pivot on the
// entry of smallest valuation, so elimination multipliers are integral and
// no relative precision is lost to row operations.

#include <cstddef>
#include <optional>
#include <vector>

#include "isolab/padic.hpp"

namespace isolab {

// Polynomial with coefficients low-to-high.
using Poly = std::vector<PadicScalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpecPtr spec, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldSpecPtr spec, std::size_t n);
  static Matrix from_rationals(FieldSpecPtr spec,
                               const std::vector<std::vector<Rational>>& rows);
  static Matrix from_column(const std::vector<PadicScalar>& entries);
  static Matrix diagonal(const std::vector<PadicScalar>& entries);

  const FieldSpecPtr& spec() const { return spec_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  PadicScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const PadicScalar& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix col(std::size_t j) const;
  std::vector<PadicScalar> column_entries(std::size_t j) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  void set_col(std::size_t j, const Matrix& column);
  Matrix hcat(const Matrix& right) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  Matrix transpose() const;
  Matrix sigma() const;
  Matrix sigma_inv() const;
  Matrix sigma_power(int k) const;
  Matrix scaled(const PadicScalar& s) const;
  Matrix shifted(std::int64_t k) const;  // times p^k

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;

  // Every entry zero to its precision.
  bool is_zero() const;
  bool is_integral() const;
  // Smallest valuation over nonzero entries.
  std::optional<std::int64_t> min_valuation() const;

 private:
  FieldSpecPtr spec_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<PadicScalar> data_;
};

struct Echelon {
  Matrix reduced;                      // reduced row echelon form (pivots = 1)
  std::vector<std::size_t> pivot_cols;  // pivot_cols[k] is the pivot of row k
  std::size_t rank = 0;
};

// Row reduction; pivots are only sought among the first `pivot_limit`
// columns (all columns when omitted). Residual entries are accepted as zero
// only if they are known to vanish beyond the valuation of every pivot.
Echelon echelon(const Matrix& a, std::optional<std::size_t> pivot_limit = std::nullopt);

std::size_t rank(const Matrix& a);
// Basis of {x : a x = 0} as columns.
Matrix kernel(const Matrix& a);
// Linearly independent subset of the columns of a spanning its column space.
Matrix column_span(const Matrix& a);
// Solution of a x = b (particular solution when a is rank deficient);
// nullopt when the system is inconsistent to precision.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);
PadicScalar determinant(const Matrix& a);

// Characteristic polynomial det(T - a), monic, division-free (Berkowitz).
Poly charpoly(const Matrix& a);
Matrix evaluate(const Poly& poly, const Matrix& a);

// Z_q-basis of (column span of w) intersected with Z_q^n, as columns with a
// unit pivot each; the result spans a saturated sublattice.
Matrix saturate(const Matrix& w);

// True if every column of `sub` lies in the column span of `basis`.
bool spans_contain(const Matrix& basis, const Matrix& sub);

}  // namespace isolab
