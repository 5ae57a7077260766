#include <gtest/gtest.h>

#include "isolab/dieudonne_lie.hpp"
#include "isolab/errors.hpp"

namespace isolab {
namespace {

using Rows = std::vector<std::vector<Rational>>;

void set_bracket(DieudonneLieAlgebra& a, std::size_t i, std::size_t j, std::size_t k,
                 const Rational& c) {
  a.bracket[i][j][k] = PadicScalar::from_rational(a.spec(), c);
  a.bracket[j][i][k] = PadicScalar::from_rational(a.spec(), -c);
}

// x, y, z with phi = diag(1/p, 1, z_scale) and [x, y] = z.
DieudonneLieAlgebra heisenberg(int p, const Rational& z_scale) {
  const auto spec = FieldSpec::make(p, 1, 30);
  const Isocrystal iso(Matrix::from_rationals(spec, {{Rational(1, p), 0, 0}, {0, 1, 0}, {0, 0, z_scale}}));
  DieudonneLieAlgebra a = DieudonneLieAlgebra::abelian(iso);
  set_bracket(a, 0, 1, 2, 1);
  return a;
}

// x, y spanning a slope -1/2 block and z of slope -1, [x, y] = z.
DieudonneLieAlgebra supersingular_heisenberg(int p) {
  const auto spec = FieldSpec::make(p, 1, 30);
  const Rational ip(1, p);
  const Isocrystal iso(Matrix::from_rationals(spec, {{0, ip, 0}, {1, 0, 0}, {0, 0, -ip}}));
  DieudonneLieAlgebra a = DieudonneLieAlgebra::abelian(iso);
  set_bracket(a, 0, 1, 2, 1);
  return a;
}

DieudonneLieAlgebra abelian(int p, const std::vector<Rational>& diag) {
  return DieudonneLieAlgebra::abelian(Isocrystal::diagonal(FieldSpec::make(p, 1, 30), diag));
}

Matrix column(const FieldSpecPtr& spec, const std::vector<Rational>& v) {
  Rows rows;
  for (const auto& x : v) rows.push_back({x});
  return Matrix::from_rationals(spec, rows);
}

TEST(Validate, AbelianPassesEverything) {
  DieudonneLieAlgebra a = abelian(3, {1, Rational(1, 3), 1});
  a.lattice = Matrix::identity(a.spec(), 3);
  const ValidationReport r = dla_validate(a);
  EXPECT_TRUE(r.all());
  ASSERT_TRUE(r.lattice_dieudonne.has_value());
  EXPECT_TRUE(r.lattice_dieudonne->ok);
}

TEST(Validate, Heisenberg) {
  const ValidationReport r = dla_validate(heisenberg(5, Rational(1, 5)));
  EXPECT_TRUE(r.antisymmetry.ok);
  EXPECT_TRUE(r.jacobi.ok);
  EXPECT_TRUE(r.f_equivariance.ok);
}

TEST(Validate, WrongFrobeniusOnCenter) {
  const ValidationReport r = dla_validate(heisenberg(5, 1));
  EXPECT_TRUE(r.bracket_laws());
  EXPECT_FALSE(r.f_equivariance.ok);
  EXPECT_FALSE(r.f_equivariance.witness.is_null());
}

TEST(Validate, JacobiFailureDetected) {
  DieudonneLieAlgebra a = abelian(5, {1, 1, 1});
  set_bracket(a, 0, 1, 1, 1);
  set_bracket(a, 1, 2, 0, 1);
  EXPECT_FALSE(dla_validate(a).jacobi.ok);
}

TEST(LowerCentralSeries, Abelian) {
  const auto lcs = lower_central_series(abelian(3, {1, 1, 1}));
  EXPECT_EQ(lcs.nilpotency_class, 1);
  ASSERT_EQ(lcs.chain.size(), 2u);
  EXPECT_EQ(rank(lcs.chain[1]), 0u);
}

TEST(LowerCentralSeries, Heisenberg) {
  const auto lcs = lower_central_series(heisenberg(5, Rational(1, 5)));
  EXPECT_EQ(lcs.nilpotency_class, 2);
  ASSERT_EQ(lcs.chain.size(), 3u);
  EXPECT_EQ(rank(lcs.chain[1]), 1u);
}

TEST(LowerCentralSeries, StrictlyUpperTriangularFourByFour) {
  // Basis E_ij, i < j, in the order 01 02 03 12 13 23.
  const std::vector<std::pair<int, int>> basis = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  DieudonneLieAlgebra a = abelian(7, std::vector<Rational>(6, 1));
  auto index = [&](int i, int j) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k] == std::make_pair(i, j)) return k;
    }
    return basis.size();
  };
  for (std::size_t u = 0; u < basis.size(); ++u) {
    for (std::size_t v = u + 1; v < basis.size(); ++v) {
      const auto [i, j] = basis[u];
      const auto [k, l] = basis[v];
      // [E_ij, E_kl] = d_jk E_il - d_li E_kj
      if (j == k) set_bracket(a, u, v, index(i, l), 1);
      if (l == i) set_bracket(a, u, v, index(k, j), -1);
    }
  }
  ASSERT_TRUE(dla_validate(a).bracket_laws());
  EXPECT_EQ(lower_central_series(a).nilpotency_class, 3);
}

TEST(LatticeFiltration, StandardLattice) {
  DieudonneLieAlgebra a = heisenberg(5, Rational(1, 5));
  a.lattice = Matrix::identity(a.spec(), 3);
  const LatticeFiltration lf = lattice_filtration(a);
  EXPECT_TRUE(lf.closure.ok);
  ASSERT_GE(lf.lattices.size(), 2u);
  EXPECT_EQ(lf.lattices[1].cols(), 1u);
}

TEST(LatticeFiltration, ScaledCenter) {
  DieudonneLieAlgebra a = heisenberg(5, Rational(1, 5));
  a.lattice = Matrix::from_rationals(a.spec(), {{1, 0, 0}, {0, 1, 0}, {0, 0, Rational(1, 5)}});
  const LatticeFiltration lf = lattice_filtration(a);
  EXPECT_TRUE(lf.closure.ok);
  EXPECT_TRUE(lattice_contains(lf.lattices[1], column(a.spec(), {0, 0, Rational(1, 5)})));
  EXPECT_FALSE(lattice_contains(lf.lattices[1], column(a.spec(), {0, 0, Rational(1, 25)})));
}

TEST(LatticeFiltration, BracketLeavesLattice) {
  DieudonneLieAlgebra a = heisenberg(5, Rational(1, 5));
  a.lattice = Matrix::from_rationals(a.spec(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 5}});
  EXPECT_FALSE(lattice_filtration(a).closure.ok);
}

TEST(PdivDimension, NormalizationExamples) {
  EXPECT_EQ(pdiv_dimension({{0, 1}}), 0);
  EXPECT_EQ(pdiv_dimension({{-1, 1}}), 1);
  EXPECT_EQ(pdiv_dimension({{Rational(-1, 2), 2}}), 1);
}

TEST(PdivDimension, OutOfRange) {
  try {
    (void)pdiv_dimension({{-2, 1}});
    FAIL() << "expected SlopeOutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSlopeOutOfRange);
  }
  EXPECT_EQ(pdiv_dimension({{-2, 1}}, SlopeRange::kNonPositive), 2);
}

TEST(CenterCheck, SlopeZeroRejected) {
  try {
    (void)minimal_slope_center_check(heisenberg(5, Rational(1, 5)));
    FAIL() << "expected SlopeNotStrictlyNegative";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSlopeNotStrictlyNegative);
  }
}

TEST(CenterCheck, SupersingularHeisenberg) {
  const DieudonneLieAlgebra a = supersingular_heisenberg(5);
  ASSERT_TRUE(dla_validate(a).all());
  const CenterReport r = minimal_slope_center_check(a);
  EXPECT_TRUE(r.central);
  EXPECT_EQ(r.minimal_slope, -1);
  EXPECT_EQ(r.block_dim, 1u);
}

TEST(CenterCheck, AbelianSlopeMinusOne) {
  EXPECT_TRUE(minimal_slope_center_check(abelian(3, {Rational(1, 3), Rational(1, 3)})).central);
}

TEST(Aut, AbelianUnitRoot) {
  EXPECT_EQ(aut_lie_algebra(abelian(3, {1, 1}), AutMode::kDerivation).dimension, 4);
}

TEST(Aut, HeisenbergDerivations) {
  const AutResult r = aut_lie_algebra(heisenberg(5, Rational(1, 5)), AutMode::kDerivation);
  // x -> a x + c z, y -> d y, z -> (a + d) z
  EXPECT_EQ(r.dimension, 3);
  EXPECT_EQ(r.basis.size(), 3u);
}

TEST(Subalgebra, Examples) {
  const DieudonneLieAlgebra h = heisenberg(5, Rational(1, 5));
  const auto spec = h.spec();
  EXPECT_EQ(rank(smallest_f_stable_subalgebra(h, column(spec, {0, 0, 1}))), 1u);
  const Matrix xy = Matrix::from_rationals(spec, {{1, 0}, {0, 1}, {0, 0}});
  EXPECT_EQ(rank(smallest_f_stable_subalgebra(h, xy)), 3u);
  EXPECT_EQ(rank(smallest_f_stable_subalgebra(abelian(5, {1, 1, 1}), column(spec, {1, 0, 0}))), 1u);
}

TEST(EquivariantBrackets, SlopeAdditivity) {
  const auto spec = FieldSpec::make(5, 1, 30);
  const Isocrystal iso = Isocrystal::diagonal(spec, {Rational(1, 5), 1, Rational(1, 5)});
  // [e0, e1] and [e1, e2] may land in e0 or e2; [e0, e2] has slope -2.
  EXPECT_EQ(equivariant_brackets(iso).size(), 4u);
}

TEST(LieBracket, Bilinear) {
  const DieudonneLieAlgebra h = heisenberg(5, Rational(1, 5));
  const auto spec = h.spec();
  const Matrix z = lie_bracket(h, column(spec, {2, 1, 0}), column(spec, {1, 3, 7}));
  EXPECT_TRUE(certified_equal(z, column(spec, {0, 0, 5})));
}

}  // namespace
}  // namespace isolab
