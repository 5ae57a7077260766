#include <gtest/gtest.h>

#include "isolab/errors.hpp"
#include "isolab/isocrystal.hpp"

namespace isolab {
namespace {

using Rows = std::vector<std::vector<Rational>>;

Isocrystal iso(const FieldSpecPtr& spec, const Rows& rows) {
  return Isocrystal(Matrix::from_rationals(spec, rows));
}

SlopeMultiset slopes(std::initializer_list<std::pair<const char*, int>> entries) {
  SlopeMultiset s;
  for (const auto& [q, m] : entries) s.push_back({Rational(q), m});
  return s;
}

Rational r(const char* s) { return Rational(s); }

TEST(NewtonSlopes, TrivialAndInversePFrobenius) {
  const auto spec = FieldSpec::make(3, 1, 20);
  EXPECT_EQ(newton_slopes(iso(spec, {{1}})), slopes({{"0", 1}}));
  EXPECT_EQ(newton_slopes(iso(spec, {{r("1/3")}})), slopes({{"-1", 1}}));
}

TEST(NewtonSlopes, Supersingular) {
  for (int p : {2, 3, 5}) {
    const auto spec = FieldSpec::make(p, 1, 20);
    EXPECT_EQ(newton_slopes(iso(spec, {{0, Rational(1, p)}, {1, 0}})), slopes({{"-1/2", 2}}));
  }
}

TEST(NewtonSlopes, UnramifiedExtensionNormalizesByF) {
  const auto spec = FieldSpec::make(3, 2, 20);
  const Isocrystal m = iso(spec, {{r("1/3"), 0}, {0, 1}});
  EXPECT_EQ(newton_slopes(m), slopes({{"-1", 1}, {"0", 1}}));
}

TEST(NewtonSlopes, InvariantUnderChangeOfBasis) {
  const auto spec = FieldSpec::make(5, 2, 20);
  const Isocrystal m = iso(spec, {{0, r("1/5"), 0}, {1, 0, 0}, {0, 0, 1}});
  Matrix a = Matrix::from_rationals(spec, {{1, 2, 0}, {0, 1, 5}, {3, 0, 1}});
  a(0, 0) = a(0, 0) + PadicScalar::generator(spec);
  EXPECT_EQ(newton_slopes(m.change_basis(a)), newton_slopes(m));
}

TEST(NewtonSlopes, TwistShiftsEverySlope) {
  const auto spec = FieldSpec::make(2, 1, 20);
  const Isocrystal m = iso(spec, {{0, r("1/2")}, {1, 0}});
  EXPECT_EQ(newton_slopes(m.twisted(1)), slopes({{"1/2", 2}}));
  EXPECT_EQ(newton_slopes(m.twisted(-2)), slopes({{"-5/2", 2}}));
}

TEST(NewtonSlopes, DirectSumConcatenates) {
  const auto spec = FieldSpec::make(3, 1, 20);
  const Isocrystal a = iso(spec, {{0, r("1/3")}, {1, 0}});
  const Isocrystal b = iso(spec, {{1}});
  EXPECT_EQ(newton_slopes(direct_sum(a, b)), slopes({{"-1/2", 2}, {"0", 1}}));
}

TEST(Isocrystal, SingularFrobeniusRejected) {
  const auto spec = FieldSpec::make(3, 1, 20);
  try {
    (void)iso(spec, {{1, 2}, {2, 4}});
    FAIL() << "expected NonInvertible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonInvertible);
  }
}

void expect_stable_blocks(const Isocrystal& m, const std::vector<SlopeBlock>& blocks) {
  for (const auto& b : blocks) {
    const Isocrystal part = restrict_to(m, b.basis);
    EXPECT_EQ(newton_slopes(part), (SlopeMultiset{{b.slope, b.multiplicity}}));
  }
}

TEST(SlopeSplit, AlreadyDiagonal) {
  const auto spec = FieldSpec::make(3, 1, 20);
  const Isocrystal m = iso(spec, {{1, 0}, {0, r("1/3")}});
  const auto blocks = slope_split(m);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].slope, -1);
  EXPECT_EQ(blocks[1].slope, 0);
  expect_stable_blocks(m, blocks);
}

TEST(SlopeSplit, UpperTriangular) {
  const auto spec = FieldSpec::make(3, 1, 20);
  const Isocrystal m = iso(spec, {{1, 1}, {0, r("1/3")}});
  const auto blocks = slope_split(m);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].multiplicity, 1);
  EXPECT_EQ(blocks[1].multiplicity, 1);
  expect_stable_blocks(m, blocks);
}

TEST(SlopeSplit, IsoclinicSingleBlock) {
  const auto spec = FieldSpec::make(3, 1, 20);
  const auto blocks = slope_split(iso(spec, {{0, r("1/3")}, {1, 0}}));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].slope, r("-1/2"));
  EXPECT_EQ(blocks[0].multiplicity, 2);
}

TEST(SlopeSplit, MixedOverExtension) {
  const auto spec = FieldSpec::make(3, 2, 20);
  Matrix f = Matrix::from_rationals(spec, {{0, 0, 0}, {0, 0, r("1/3")}, {0, 1, 0}});
  f(0, 0) = PadicScalar::generator(spec);
  const Isocrystal m(f);
  const auto blocks = slope_split(m);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].slope, r("-1/2"));
  EXPECT_EQ(blocks[0].multiplicity, 2);
  EXPECT_EQ(blocks[1].slope, 0);
  expect_stable_blocks(m, blocks);
}

TEST(InternalHom, UnitRoot) {
  const auto spec = FieldSpec::make(5, 1, 20);
  const Isocrystal u = iso(spec, {{1}});
  EXPECT_EQ(newton_slopes(internal_hom(u, u)), slopes({{"0", 1}}));
}

TEST(InternalHom, SlopesAreDifferences) {
  const auto spec = FieldSpec::make(3, 1, 20);
  const Isocrystal y = iso(spec, {{1, 0}, {0, r("1/3")}});
  EXPECT_EQ(newton_slopes(internal_hom(y, y)), slopes({{"-1", 1}, {"0", 2}, {"1", 1}}));
  const Isocrystal z = iso(spec, {{0, r("1/3")}, {1, 0}});
  EXPECT_EQ(newton_slopes(internal_hom(y, z)), slopes({{"-1/2", 2}, {"1/2", 2}}));
}

TEST(SlopePart, Predicates) {
  const auto spec = FieldSpec::make(3, 1, 20);
  const Isocrystal y = iso(spec, {{1, 0}, {0, r("1/3")}});
  const SlopePart neg = slope_part(y, SlopePredicate::negative());
  EXPECT_EQ(neg.part.rank(), 1u);
  EXPECT_EQ(newton_slopes(neg.part), slopes({{"-1", 1}}));
  EXPECT_EQ(slope_part(internal_hom(y, y), SlopePredicate::non_positive()).part.rank(), 3u);
  EXPECT_EQ(slope_part(y, SlopePredicate::equal(r("-1/2"))).part.rank(), 0u);
}

TEST(SplitAtValuation, FactorsByRootValuation) {
  const auto spec = FieldSpec::make(3, 1, 20);
  const Poly poly = {PadicScalar::one(spec), PadicScalar::from_rational(spec, r("-10/3")),
                     PadicScalar::one(spec)};
  const auto [low, high] = split_at_valuation(poly, 0);
  ASSERT_EQ(low.size(), 2u);
  ASSERT_EQ(high.size(), 2u);
  EXPECT_EQ(root_valuations(low), slopes({{"-1", 1}}));
  EXPECT_EQ(root_valuations(high), slopes({{"1", 1}}));
}

}  // namespace
}  // namespace isolab
