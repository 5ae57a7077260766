#include <gtest/gtest.h>

#include "isolab/bch.hpp"
#include "isolab/errors.hpp"
#include "oracles.hpp"

namespace isolab {
namespace {

Rational coeff(const FreeLieElement& e, const Word& w) {
  for (const auto& t : e.terms) {
    if (t.word == w) return t.coeff;
  }
  return 0;
}

TEST(Lyndon, WordsAndCounts) {
  EXPECT_TRUE(is_lyndon("X"));
  EXPECT_TRUE(is_lyndon("XY"));
  EXPECT_TRUE(is_lyndon("XXY"));
  EXPECT_FALSE(is_lyndon("YX"));
  EXPECT_FALSE(is_lyndon("XYXY"));
  // Necklace counts for two letters: 2, 1, 2, 3, 6, 9, 18, 30.
  const std::vector<std::size_t> expected = {2, 1, 2, 3, 6, 9, 18, 30};
  std::vector<std::size_t> counts(8, 0);
  for (const auto& w : lyndon_words(8)) ++counts[w.size() - 1];
  EXPECT_EQ(counts, expected);
}

TEST(Lyndon, StandardFactorization) {
  EXPECT_EQ(standard_factorization("XXY"), std::make_pair(Word("X"), Word("XY")));
  EXPECT_EQ(standard_factorization("XYY"), std::make_pair(Word("XY"), Word("Y")));
}

TEST(BchSeries, LowDegrees) {
  const FreeLieElement c1 = bch_series(1);
  EXPECT_EQ(c1.terms.size(), 2u);
  EXPECT_EQ(coeff(c1, "X"), 1);
  EXPECT_EQ(coeff(c1, "Y"), 1);
  EXPECT_EQ(coeff(bch_series(2), "XY"), Rational(1, 2));
  const FreeLieElement c3 = bch_series(3);
  EXPECT_EQ(coeff(c3, "XXY"), Rational(1, 12));
  // [Y, [Y, X]] = [[X, Y], Y] is the Lyndon bracket of XYY.
  EXPECT_EQ(coeff(c3, "XYY"), Rational(1, 12));
  EXPECT_EQ(coeff(bch_series(4), "XXYY"), Rational(1, 24));
}

TEST(BchSeries, MatchesMatrixOracle) {
  for (int c = 1; c <= 6; ++c) {
    const AssocPoly ours = to_associative(bch_series(c));
    const auto oracle = testing::bch_matrix_oracle(c);
    AssocPoly nonzero;
    for (const auto& [w, q] : ours) {
      if (q != 0) nonzero[w] = q;
    }
    EXPECT_EQ(nonzero, AssocPoly(oracle.begin(), oracle.end())) << "c = " << c;
  }
}

TEST(BchSeries, DynkinAgrees) {
  for (int c = 1; c <= kMaxBchDegree; ++c) {
    const FreeLieElement a = bch_series(c);
    const FreeLieElement b = bch_series_dynkin(c);
    ASSERT_EQ(a.terms.size(), b.terms.size()) << c;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      EXPECT_EQ(a.terms[i].word, b.terms[i].word);
      EXPECT_EQ(a.terms[i].coeff, b.terms[i].coeff);
    }
  }
}

TEST(BchSeries, DegreeTooLarge) {
  try {
    (void)bch_series(kMaxBchDegree + 1);
    FAIL() << "expected DegreeTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegreeTooLarge);
  }
}

TEST(DenominatorProfile, Primes) {
  EXPECT_TRUE(denominator_profile(1).empty());
  EXPECT_EQ(denominator_profile(2), (std::set<long>{2}));
  EXPECT_EQ(denominator_profile(4), (std::set<long>{2, 3}));
  EXPECT_EQ(denominator_profile(5), (std::set<long>{2, 3, 5}));
}

TEST(LyndonCoordinates, RejectsNonLie) {
  try {
    (void)lyndon_coordinates({{"XY", 1}}, 2);
    FAIL() << "expected InternalInvariantViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInternalInvariantViolation);
  }
}

DieudonneLieAlgebra heisenberg(int p) {
  const auto spec = FieldSpec::make(p, 1, 30);
  DieudonneLieAlgebra a = DieudonneLieAlgebra::abelian(Isocrystal(
      Matrix::from_rationals(spec, {{Rational(1, p), 0, 0}, {0, 1, 0}, {0, 0, Rational(1, p)}})));
  a.bracket[0][1][2] = PadicScalar::one(spec);
  a.bracket[1][0][2] = -PadicScalar::one(spec);
  a.lattice = Matrix::identity(spec, 3);
  return a;
}

Matrix vec(const FieldSpecPtr& spec, std::vector<Rational> v) {
  std::vector<std::vector<Rational>> rows;
  for (auto& x : v) rows.push_back({x});
  return Matrix::from_rationals(spec, rows);
}

TEST(GroupMul, HeisenbergProduct) {
  const auto a = heisenberg(5);
  const Matrix xy = group_mul(a, vec(a.spec(), {1, 0, 0}), vec(a.spec(), {0, 1, 0}));
  EXPECT_TRUE(certified_equal(xy, vec(a.spec(), {1, 1, Rational(1, 2)})));
}

TEST(GroupMul, GroupAxioms) {
  const auto a = heisenberg(7);
  const auto spec = a.spec();
  const auto pairs = random_lattice_pairs(a, 20, 3);
  const Matrix zero = vec(spec, {0, 0, 0});
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    const Matrix& x = pairs[i].first;
    const Matrix& y = pairs[i].second;
    const Matrix& z = pairs[i + 1].first;
    EXPECT_TRUE(certified_equal(group_mul(a, group_mul(a, x, y), z), group_mul(a, x, group_mul(a, y, z))));
    EXPECT_TRUE(certified_equal(group_mul(a, x, -x), zero));
    EXPECT_TRUE(certified_equal(group_mul(a, x, zero), x));
  }
}

TEST(GroupMul, AbelianIsAddition) {
  const auto spec = FieldSpec::make(3, 1, 30);
  const auto a = DieudonneLieAlgebra::abelian(Isocrystal::diagonal(spec, {1, Rational(1, 3)}));
  const Matrix x = vec(spec, {2, 5});
  const Matrix y = vec(spec, {-1, Rational(1, 3)});
  EXPECT_TRUE(certified_equal(group_mul(a, x, y), x + y));
}

TEST(LatticeClosure, DependsOnP) {
  const auto good = heisenberg(5);
  const auto r5 = lattice_closure_check(good, random_lattice_pairs(good, 100, 1));
  EXPECT_TRUE(r5.closed);
  EXPECT_TRUE(r5.p_gt_n);
  EXPECT_EQ(r5.samples_checked, 100u);
  const auto bad = heisenberg(2);
  const auto r2 = lattice_closure_check(bad, random_lattice_pairs(bad, 100, 1));
  EXPECT_FALSE(r2.closed);
  EXPECT_FALSE(r2.p_gt_n);
  EXPECT_FALSE(r2.witness.is_null());
}

TEST(RhoDefect, AbelianVanishes) {
  const auto spec = FieldSpec::make(5, 1, 30);
  const Rational ip(1, 5);
  auto a = DieudonneLieAlgebra::abelian(
      Isocrystal(Matrix::from_rationals(spec, {{0, ip, 0}, {1, 0, 0}, {0, 0, ip}})));
  a.lattice = Matrix::identity(spec, 3);
  const auto r = rho_defect(a, vec(spec, {1, 2, 3}), vec(spec, {3, 4, 5}), 0);
  EXPECT_TRUE(r.defect.is_zero());
  EXPECT_TRUE(r.in_scaled_lattice);
}

}  // namespace
}  // namespace isolab
