#pragma once

// F-isocrystals over Q_q: a Frobenius matrix F acting semilinearly by
// Phi(v) = F * sigma(v). Slopes follow the covariant normalization, so the
// isocrystal with F = [1/p] has slope -1.

#include <cstdint>
#include <utility>
#include <vector>

#include "isolab/linalg.hpp"

namespace isolab {

struct SlopeEntry {
  Rational slope;
  int multiplicity = 0;
};

// Entries strictly increasing in slope.
using SlopeMultiset = std::vector<SlopeEntry>;

SlopeMultiset make_slope_multiset(std::vector<Rational> slopes);
std::vector<Rational> expand(const SlopeMultiset& s);
int total_multiplicity(const SlopeMultiset& s);
bool operator==(const SlopeEntry& a, const SlopeEntry& b);

class Isocrystal {
 public:
  Isocrystal() = default;
  // Throws NonInvertible unless F has full rank to precision.
  explicit Isocrystal(Matrix frobenius);
  static Isocrystal diagonal(FieldSpecPtr spec, const std::vector<Rational>& entries);

  const FieldSpecPtr& spec() const { return frobenius_.spec(); }
  std::size_t rank() const { return frobenius_.rows(); }
  const Matrix& frobenius() const { return frobenius_; }

  // Phi and Phi^{-1} applied to each column of v.
  Matrix apply(const Matrix& v) const;
  Matrix apply_inverse(const Matrix& v) const;
  // L = F sigma(F) ... sigma^{f-1}(F), the matrix of the linear map Phi^f.
  Matrix linearized() const;

  // Frobenius A^{-1} F sigma(A) of the same object in the basis A.
  Isocrystal change_basis(const Matrix& a) const;
  // Frobenius p^k F: every slope shifts by k.
  Isocrystal twisted(std::int64_t k) const;

 private:
  Matrix frobenius_;
};

Isocrystal direct_sum(const Isocrystal& a, const Isocrystal& b);

// Root valuations of a polynomial from its Newton polygon, with
// multiplicity. Throws InsufficientPrecision when a zero coefficient could
// still move the lower hull.
SlopeMultiset root_valuations(const Poly& poly);

SlopeMultiset newton_slopes(const Isocrystal& m);

struct SlopeBlock {
  Rational slope;
  int multiplicity = 0;
  Matrix basis;  // columns spanning the Phi-stable slope part
};

std::vector<SlopeBlock> slope_split(const Isocrystal& m);

// Hom(Y, Z) with phi(g) = phi_Z o g o phi_Y^{-1}. The basis is E_{ij}
// (i indexing Z, j indexing Y) in column-major order: index i + j * rank(Z).
Isocrystal internal_hom(const Isocrystal& y, const Isocrystal& z);

struct SlopePredicate {
  enum class Kind { kNonPositive, kNegative, kEqual };
  Kind kind = Kind::kNonPositive;
  Rational value;

  static SlopePredicate non_positive() { return {Kind::kNonPositive, 0}; }
  static SlopePredicate negative() { return {Kind::kNegative, 0}; }
  static SlopePredicate equal(Rational v) { return {Kind::kEqual, std::move(v)}; }
  bool matches(const Rational& slope) const;
};

struct SlopePart {
  Isocrystal part;   // rank 0 when no slope matches
  Matrix embedding;  // rank(M) x rank(part), columns in the original basis
};

SlopePart slope_part(const Isocrystal& m, const SlopePredicate& predicate);

// Restriction of Phi to a Phi-stable subspace spanned by the columns of
// `basis`; InternalInvariantViolation if the span is not stable.
Isocrystal restrict_to(const Isocrystal& m, const Matrix& basis);

// Splits `poly` at the integer valuation c lying strictly between root
// valuations: returns (factor with roots of valuation < c, monic factor with
// roots of valuation > c).
std::pair<Poly, Poly> split_at_valuation(const Poly& poly, std::int64_t c);

}  // namespace isolab
