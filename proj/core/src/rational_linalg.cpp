#include "isolab/rational_linalg.hpp"

#include "isolab/errors.hpp"

namespace isolab {

QMatrix q_zero(std::size_t rows, std::size_t cols) {
  return QMatrix(rows, QVector(cols, Rational(0)));
}

QMatrix q_identity(std::size_t n) {
  QMatrix m = q_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMatrix q_mul(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMatrix c = q_zero(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

QMatrix q_add(const QMatrix& a, const QMatrix& b) {
  QMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  }
  return c;
}

QMatrix q_sub(const QMatrix& a, const QMatrix& b) { return q_add(a, q_scale(b, -1)); }

QMatrix q_scale(const QMatrix& a, const Rational& s) {
  QMatrix c = a;
  for (auto& row : c) {
    for (auto& x : row) x *= s;
  }
  return c;
}

QMatrix q_commutator(const QMatrix& a, const QMatrix& b) {
  return q_sub(q_mul(a, b), q_mul(b, a));
}

std::vector<std::size_t> q_rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  if (rows == 0) return pivots;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && a[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[pr], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t q_rank(QMatrix a) { return q_rref(a).size(); }

std::vector<QVector> q_kernel(QMatrix a, std::size_t cols) {
  const auto pivots = q_rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> out;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    QVector v(cols, Rational(0));
    v[fc] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][fc];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<QVector> q_independent(const std::vector<QVector>& vectors) {
  std::vector<QVector> out;
  QMatrix basis;
  for (const auto& v : vectors) {
    QMatrix trial = basis;
    trial.push_back(v);
    if (q_rank(trial) > basis.size()) {
      basis.push_back(v);
      out.push_back(v);
    }
  }
  return out;
}

QVector q_solve(QMatrix a, QVector b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  const auto pivots = q_rref(a);
  if (pivots.size() != n || (n > 0 && pivots.back() >= n)) {
    fail(ErrorCode::kNonInvertible, "singular rational system");
  }
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace isolab
