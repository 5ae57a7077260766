#include "isolab/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "isolab/errors.hpp"

namespace isolab {

Matrix::Matrix(FieldSpecPtr spec, std::size_t rows, std::size_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols) {
  data_.assign(rows * cols, PadicScalar::exact_zero(spec_));
}

Matrix Matrix::identity(FieldSpecPtr spec, std::size_t n) {
  Matrix m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = PadicScalar::one(spec);
  return m;
}

Matrix Matrix::from_rationals(FieldSpecPtr spec,
                              const std::vector<std::vector<Rational>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(spec, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      fail(ErrorCode::kMalformedInput, "ragged matrix rows");
    }
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = PadicScalar::from_rational(spec, rows[i][j]);
    }
  }
  return m;
}

Matrix Matrix::from_column(const std::vector<PadicScalar>& entries) {
  Matrix m(entries.at(0).spec(), entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

Matrix Matrix::diagonal(const std::vector<PadicScalar>& entries) {
  Matrix m(entries.at(0).spec(), entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::col(std::size_t j) const {
  Matrix m(spec_, rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) m(i, 0) = (*this)(i, j);
  return m;
}

std::vector<PadicScalar> Matrix::column_entries(std::size_t j) const {
  std::vector<PadicScalar> v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix m(spec_, rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, idx[k]);
  }
  return m;
}

void Matrix::set_col(std::size_t j, const Matrix& column) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = column(i, 0);
}

Matrix Matrix::hcat(const Matrix& right) const {
  if (cols_ == 0) return right;
  if (right.cols_ == 0) return *this;
  if (right.rows_ != rows_) fail(ErrorCode::kPreconditionViolated, "hcat row mismatch");
  Matrix m(spec_, rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  Matrix m(spec_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(spec_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

Matrix Matrix::sigma() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = x.sigma();
  return m;
}

Matrix Matrix::sigma_inv() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = x.sigma_inv();
  return m;
}

Matrix Matrix::sigma_power(int k) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = x.sigma_power(k);
  return m;
}

Matrix Matrix::scaled(const PadicScalar& s) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = x * s;
  return m;
}

Matrix Matrix::shifted(std::int64_t k) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = x.shifted(k);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::kPreconditionViolated, "matrix product shape mismatch");
  Matrix m(spec_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < o.cols_; ++j) {
      PadicScalar acc = PadicScalar::exact_zero(spec_);
      for (std::size_t k = 0; k < cols_; ++k) {
        const PadicScalar& a = (*this)(i, k);
        const PadicScalar& b = o(k, j);
        acc += a * b;
      }
      m(i, j) = acc;
    }
  }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    fail(ErrorCode::kPreconditionViolated, "matrix sum shape mismatch");
  }
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += o.data_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& x) { return x.is_zero(); });
}

bool Matrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const auto& x) { return x.is_integral(); });
}

std::optional<std::int64_t> Matrix::min_valuation() const {
  std::optional<std::int64_t> best;
  for (const auto& x : data_) {
    if (auto v = x.valuation(); v && (!best || *v < *best)) best = v;
  }
  return best;
}

// ---------------------------------------------------------------------------

Echelon echelon(const Matrix& a, std::optional<std::size_t> pivot_limit) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t limit = std::min(pivot_limit.value_or(n), n);
  Matrix r = a;
  std::vector<bool> col_used(n, false);
  std::vector<std::size_t> pivot_cols;
  std::optional<std::int64_t> worst_pivot;
  std::size_t row = 0;

  while (row < m) {
    std::optional<std::int64_t> best;
    std::size_t bi = 0, bj = 0;
    for (std::size_t j = 0; j < limit; ++j) {
      if (col_used[j]) continue;
      for (std::size_t i = row; i < m; ++i) {
        const auto v = r(i, j).valuation();
        if (v && (!best || *v < *best)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (!best) break;
    if (bi != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(bi, j), r(row, j));
    }
    const PadicScalar inv = r(row, bj).inverse();
    for (std::size_t j = 0; j < n; ++j) r(row, j) = r(row, j) * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r(i, bj).is_zero()) continue;
      const PadicScalar factor = r(i, bj);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == bj) continue;
        r(i, j) = r(i, j) - factor * r(row, j);
      }
      r(i, bj) = PadicScalar::zero(a.spec(), r(i, bj).absolute_precision() + 32);
    }
    col_used[bj] = true;
    pivot_cols.push_back(bj);
    worst_pivot = worst_pivot ? std::max(*worst_pivot, *best) : *best;
    ++row;
  }

  // Certification of the residual block.
  if (worst_pivot) {
    for (std::size_t i = row; i < m; ++i) {
      for (std::size_t j = 0; j < limit; ++j) {
        if (col_used[j]) continue;
        if (r(i, j).precision_bound() <= *worst_pivot) {
          fail(ErrorCode::kInsufficientPrecision,
               "rank not certified: residual entry known only modulo p^" +
                   std::to_string(r(i, j).precision_bound()));
        }
      }
    }
  }
  return Echelon{std::move(r), std::move(pivot_cols), row};
}

std::size_t rank(const Matrix& a) { return echelon(a).rank; }

Matrix kernel(const Matrix& a) {
  const std::size_t n = a.cols();
  const Echelon e = echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  Matrix basis(a.spec(), n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    basis(fc, k) = PadicScalar::one(a.spec());
    for (std::size_t r = 0; r < e.rank; ++r) {
      basis(e.pivot_cols[r], k) = -e.reduced(r, fc);
    }
  }
  return basis;
}

Matrix column_span(const Matrix& a) {
  const Echelon e = echelon(a);
  std::vector<std::size_t> cols = e.pivot_cols;
  std::sort(cols.begin(), cols.end());
  return a.select_columns(cols);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  const std::size_t k = a.cols();
  const Echelon e = echelon(a.hcat(b), k);
  // Rows below the rank must have vanished in the right-hand block.
  for (std::size_t i = e.rank; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (!e.reduced(i, k + j).is_zero()) return std::nullopt;
    }
  }
  Matrix x(a.spec(), k, b.cols());
  for (std::size_t r = 0; r < e.rank; ++r) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      x(e.pivot_cols[r], j) = e.reduced(r, k + j);
    }
  }
  return x;
}

Matrix inverse(const Matrix& a) {
  if (!a.square()) fail(ErrorCode::kNonInvertible, "non-square matrix");
  const Echelon e = echelon(a);
  if (e.rank != a.rows()) fail(ErrorCode::kNonInvertible, "matrix is singular to precision");
  auto x = solve(a, Matrix::identity(a.spec(), a.rows()));
  if (!x) fail(ErrorCode::kNonInvertible, "matrix is singular to precision");
  return *x;
}

PadicScalar determinant(const Matrix& a) {
  Poly cp = charpoly(a);
  return a.rows() % 2 == 0 ? cp[0] : -cp[0];
}

Poly charpoly(const Matrix& a) {
  if (!a.square()) fail(ErrorCode::kPreconditionViolated, "charpoly of non-square matrix");
  const auto& spec = a.spec();
  const std::size_t n = a.rows();
  // Coefficients high-to-low during the recursion.
  std::vector<PadicScalar> poly{PadicScalar::one(spec)};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<PadicScalar> t;
    t.reserve(k + 2);
    t.push_back(PadicScalar::one(spec));
    t.push_back(-a(k, k));
    // Column C = a[0..k-1][k]; successive products M^j C.
    std::vector<PadicScalar> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = a(i, k);
    for (std::size_t j = 0; j < k; ++j) {
      PadicScalar acc = PadicScalar::exact_zero(spec);
      for (std::size_t i = 0; i < k; ++i) acc += a(k, i) * v[i];
      t.push_back(-acc);
      std::vector<PadicScalar> next(k);
      for (std::size_t i = 0; i < k; ++i) {
        PadicScalar s = PadicScalar::exact_zero(spec);
        for (std::size_t l = 0; l < k; ++l) s += a(i, l) * v[l];
        next[i] = s;
      }
      v = std::move(next);
    }
    std::vector<PadicScalar> updated;
    updated.reserve(k + 2);
    for (std::size_t i = 0; i < k + 2; ++i) {
      PadicScalar s = PadicScalar::exact_zero(spec);
      for (std::size_t j = 0; j <= std::min(i, k); ++j) s += t[i - j] * poly[j];
      updated.push_back(s);
    }
    poly = std::move(updated);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

Matrix evaluate(const Poly& poly, const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix result(a.spec(), n, n);
  for (std::size_t d = poly.size(); d-- > 0;) {
    result = result * a;
    for (std::size_t i = 0; i < n; ++i) result(i, i) += poly[d];
  }
  return result;
}

Matrix saturate(const Matrix& w) {
  Matrix c = column_span(w);
  const std::size_t n = c.rows();
  const std::size_t k = c.cols();
  std::vector<bool> row_used(n, false), col_done(k, false);
  for (std::size_t step = 0; step < k; ++step) {
    std::optional<std::int64_t> best;
    std::size_t bi = 0, bj = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (col_done[j]) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (row_used[i]) continue;
        const auto v = c(i, j).valuation();
        if (v && (!best || *v < *best)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (!best) fail(ErrorCode::kInsufficientPrecision, "saturation lost rank");
    const PadicScalar inv = c(bi, bj).inverse();
    for (std::size_t i = 0; i < n; ++i) c(i, bj) = c(i, bj) * inv;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == bj || c(bi, j).is_zero()) continue;
      const PadicScalar factor = c(bi, j);
      for (std::size_t i = 0; i < n; ++i) c(i, j) = c(i, j) - factor * c(i, bj);
    }
    row_used[bi] = true;
    col_done[bj] = true;
  }
  return c;
}

bool spans_contain(const Matrix& basis, const Matrix& sub) {
  if (sub.cols() == 0) return true;
  if (basis.cols() == 0) return sub.is_zero();
  return solve(basis, sub).has_value();
}

}  // namespace isolab
