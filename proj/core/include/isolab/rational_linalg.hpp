#pragma once

// Small dense linear algebra over Q with exact GMP rationals.

#include <cstddef>
#include <vector>

#include "isolab/padic.hpp"

namespace isolab {

using QVector = std::vector<Rational>;
// Row-major list of rows.
using QMatrix = std::vector<QVector>;

QMatrix q_zero(std::size_t rows, std::size_t cols);
QMatrix q_identity(std::size_t n);
QMatrix q_mul(const QMatrix& a, const QMatrix& b);
QMatrix q_add(const QMatrix& a, const QMatrix& b);
QMatrix q_sub(const QMatrix& a, const QMatrix& b);
QMatrix q_scale(const QMatrix& a, const Rational& s);
QMatrix q_commutator(const QMatrix& a, const QMatrix& b);

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> q_rref(QMatrix& a);
std::size_t q_rank(QMatrix a);
// Basis of {x : a x = 0}, one vector per entry; `cols` is the column count
// (needed when a has no rows).
std::vector<QVector> q_kernel(QMatrix a, std::size_t cols);
// Maximal linearly independent subset of the vectors, in order.
std::vector<QVector> q_independent(const std::vector<QVector>& vectors);
// Unique solution of a square nonsingular system.
QVector q_solve(QMatrix a, QVector b);

}  // namespace isolab
