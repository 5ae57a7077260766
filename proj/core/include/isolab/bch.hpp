#pragma once

// Baker-Campbell-Hausdorff series in the free Lie algebra on X < Y, the group
// law it induces on nilpotent Dieudonne-Lie algebras, and the integrality
// checks built on it.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "isolab/dieudonne_lie.hpp"

namespace isolab {

inline constexpr int kMaxBchDegree = 8;

using Word = std::string;                  // over the letters 'X' < 'Y'
using AssocPoly = std::map<Word, Rational>;  // element of Q<X, Y>

struct LieTerm {
  Word word;  // Lyndon word, read through its standard bracketing
  Rational coeff;
};

struct FreeLieElement {
  int degree = 0;               // truncation degree
  std::vector<LieTerm> terms;   // ordered by (length, word), nonzero coefficients
};

bool is_lyndon(const Word& w);
std::vector<Word> lyndon_words(int max_length);
// w = u v with v the longest proper Lyndon suffix.
std::pair<Word, Word> standard_factorization(const Word& w);

// Associative expansion of the standard bracketing of a Lyndon word.
AssocPoly lyndon_bracket_expansion(const Word& w);
// Associative expansion of [[...[w1, w2], ...], wk].
AssocPoly left_normed_expansion(const Word& w);
AssocPoly to_associative(const FreeLieElement& e);
// Coordinates of a homogeneous-by-degree Lie polynomial in the Lyndon basis.
// Throws InternalInvariantViolation when the input is not a Lie polynomial.
FreeLieElement lyndon_coordinates(const AssocPoly& p, int degree);

// log(exp X exp Y) truncated beyond degree c, computed in Q<X, Y>.
FreeLieElement bch_series(int c);
// The same series from Dynkin's explicit formula.
FreeLieElement bch_series_dynkin(int c);

std::set<long> denominator_profile(int c);

nlohmann::json to_json(const FreeLieElement& e);

// x * y = BCH(x, y) evaluated through the bracket; the series is truncated at
// the nilpotency class. Throws NotNilpotent or DegreeTooLarge.
Matrix group_mul(const DieudonneLieAlgebra& a, const Matrix& x, const Matrix& y);

struct LatticeClosureReport {
  bool closed = true;
  int nilpotency_class = 0;
  bool p_gt_n = false;
  std::size_t samples_checked = 0;
  nlohmann::json witness;  // indices into the sample list, null when closed
};

using SamplePairs = std::vector<std::pair<Matrix, Matrix>>;

// Pairs of lattice vectors with integer coordinates in [-bound, bound].
SamplePairs random_lattice_pairs(const DieudonneLieAlgebra& a, std::size_t count,
                                 std::uint64_t seed, int bound = 5);

LatticeClosureReport lattice_closure_check(const DieudonneLieAlgebra& a,
                                           const SamplePairs& samples);

struct RhoDefectResult {
  Matrix defect;            // rho(x' * x) - rho(x) - rho(x')
  bool in_scaled_lattice = false;  // defect in p^{-n} b+
  bool p_gt_n = false;
  int nilpotency_class = 0;
  Rational minimal_slope;
};

// b is the minimal-slope part, c the sum of the other slope parts, and rho
// the projection onto b along c.
struct RhoSplit {
  Matrix b;       // columns spanning b
  Matrix c;       // columns spanning c
  Matrix b_plus;  // lattice basis of b cap a+
  Matrix c_plus;  // lattice basis of c cap a+
  Rational minimal_slope;
};

RhoSplit rho_split(const DieudonneLieAlgebra& a);
Matrix rho_project(const RhoSplit& s, const Matrix& v);

RhoDefectResult rho_defect(const DieudonneLieAlgebra& a, const Matrix& x_prime,
                           const Matrix& x, int n);
RhoDefectResult rho_defect(const DieudonneLieAlgebra& a, const RhoSplit& split,
                           const Matrix& x_prime, const Matrix& x, int n);

}  // namespace isolab
