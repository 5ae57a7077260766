#pragma once

// Dieudonne-Lie algebras: an isocrystal (a, phi) with an F-equivariant Lie
// bracket given by structure constants, optionally with an integral lattice.

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "isolab/isocrystal.hpp"

namespace isolab {

// bracket[i][j][k] is the coefficient of e_k in [e_i, e_j].
using StructureConstants = std::vector<std::vector<std::vector<PadicScalar>>>;

struct DieudonneLieAlgebra {
  Isocrystal iso;
  StructureConstants bracket;
  std::optional<Matrix> lattice;  // columns generate the lattice over Z_q

  const FieldSpecPtr& spec() const { return iso.spec(); }
  std::size_t dim() const { return iso.rank(); }

  static DieudonneLieAlgebra abelian(Isocrystal iso);
};

StructureConstants zero_brackets(const FieldSpecPtr& spec, std::size_t n);

// [x, y] for column vectors x, y (n x 1).
Matrix lie_bracket(const DieudonneLieAlgebra& a, const Matrix& x, const Matrix& y);

// Equality to the surviving precision. Throws InsufficientPrecision when the
// difference vanishes only below the valuation of the compared values, so the
// comparison carries no information.
bool certified_equal(const PadicScalar& a, const PadicScalar& b);
bool certified_equal(const Matrix& a, const Matrix& b);

struct Check {
  bool ok = true;
  nlohmann::json witness;  // null when ok
};

struct ValidationReport {
  Check antisymmetry;
  Check jacobi;
  Check f_equivariance;
  std::optional<Check> lattice_dieudonne;  // absent without a lattice
  std::optional<Check> lattice_bracket_closure;

  bool bracket_laws() const { return antisymmetry.ok && jacobi.ok; }
  bool all() const;
};

ValidationReport dla_validate(const DieudonneLieAlgebra& a);

struct LowerCentralSeries {
  std::vector<Matrix> chain;  // a_0 = a, ..., last entry is the zero subspace
  int nilpotency_class = 0;   // number of nonzero terms
};

LowerCentralSeries lower_central_series(const DieudonneLieAlgebra& a);

struct LatticeFiltration {
  std::vector<Matrix> lattices;  // a+_i = a+ cap a_i, same indexing as the chain
  Check closure;                 // [a+, a+_i] in a+_{i+1}
};

LatticeFiltration lattice_filtration(const DieudonneLieAlgebra& a);

// Z_q-basis of the lattice spanned by `lattice` intersected with the column
// span of `subspace`.
Matrix intersect_lattice(const Matrix& lattice, const Matrix& subspace);
// True if every column of v lies in the Z_q-span of the lattice columns.
bool lattice_contains(const Matrix& lattice, const Matrix& v);

enum class SlopeRange {
  kDieudonne,    // slopes must lie in [-1, 0]
  kNonPositive,  // any slope <= 0 (unipotent radicals of larger groups)
};

// Sum of (-slope) * multiplicity.
Rational pdiv_dimension(const SlopeMultiset& slopes,
                        SlopeRange range = SlopeRange::kDieudonne);

struct CenterReport {
  bool central = true;
  Rational minimal_slope;
  std::size_t block_dim = 0;
  bool bracket_laws_hold = true;
  nlohmann::json witness;
};

CenterReport minimal_slope_center_check(const DieudonneLieAlgebra& a);

enum class AutMode { kDerivation, kLinearized };

struct AutResult {
  std::vector<Matrix> basis;  // Q_p-basis of the solution space
  int dimension = 0;          // over Q_p
  bool quadratic_term_excluded = false;
};

AutResult aut_lie_algebra(const DieudonneLieAlgebra& a, AutMode mode);

Matrix smallest_f_stable_subalgebra(const DieudonneLieAlgebra& a, const Matrix& generators);

// Q_p-basis of antisymmetric structure constants making the bracket
// F-equivariant for the given isocrystal.
std::vector<StructureConstants> equivariant_brackets(const Isocrystal& iso);

}  // namespace isolab
