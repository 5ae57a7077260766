#include <random>

#include <gtest/gtest.h>

#include "isolab/errors.hpp"
#include "isolab/perfected_series.hpp"
#include "oracles.hpp"

namespace isolab {
namespace {

Exponent ex(std::initializer_list<Rational> coords) { return Exponent(coords); }

PerfectedSeries series(const FiniteFieldPtr& k, int nvars, const Rational& d,
                       std::initializer_list<std::pair<Exponent, std::int64_t>> terms) {
  PerfectedSeries s(k, nvars, d);
  for (const auto& [e, c] : terms) s.add_term(e, k->from_int(c));
  return s;
}

TEST(FiniteField, FrobeniusOnF4) {
  const auto k = FiniteField::make(2, 2);
  const FqElem t = {0, 1};
  EXPECT_NE(k->frobenius(t), t);
  EXPECT_EQ(k->frobenius(k->frobenius(t)), t);
  EXPECT_EQ(k->frobenius_inv(k->frobenius(t)), t);
  EXPECT_EQ(k->frobenius(k->one()), k->one());
  // t^2 = t + 1 for the modulus t^2 + t + 1.
  EXPECT_EQ(k->mul(t, t), (FqElem{1, 1}));
}

TEST(FiniteField, MultiplicativeOrder) {
  const auto k = FiniteField::make(3, 3);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> digit(0, 2);
  for (int i = 0; i < 20; ++i) {
    FqElem a = {digit(rng), digit(rng), digit(rng)};
    if (k->is_zero(a)) continue;
    EXPECT_EQ(k->pow(a, Integer(26)), k->one());
  }
}

TEST(Arithmetic, FractionalMonomials) {
  const auto k = FiniteField::make(3, 1);
  const auto x = series(k, 1, 8, {{ex({Rational(1, 3)}), 1}});
  EXPECT_EQ(ps_mul(x, x), series(k, 1, 8, {{ex({Rational(2, 3)}), 1}}));
}

TEST(Arithmetic, CharacteristicTwoSquare) {
  const auto k = FiniteField::make(2, 1);
  const auto a = series(k, 1, 8, {{ex({0}), 1}, {ex({Rational(1, 2)}), 1}});
  EXPECT_EQ(ps_pow(a, 2), series(k, 1, 8, {{ex({0}), 1}, {ex({1}), 1}}));
}

TEST(Arithmetic, DropsBeyondBound) {
  const auto k = FiniteField::make(2, 1);
  const auto a = series(k, 1, 2, {{ex({Rational(3, 2)}), 1}});
  EXPECT_TRUE(ps_mul(a, a).is_zero());
  EXPECT_TRUE(series(k, 1, 2, {{ex({3}), 1}}).is_zero());
}

TEST(Arithmetic, AddIsCommutativeAndAssociative) {
  const auto k = FiniteField::make(3, 2);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(0, 20);
  std::uniform_int_distribution<int> pexp(0, 2);
  std::uniform_int_distribution<std::int64_t> digit(0, 2);
  auto random_series = [&] {
    PerfectedSeries s(k, 2, 8);
    for (int i = 0; i < 6; ++i) {
      Exponent e;
      for (int v = 0; v < 2; ++v) e.push_back(Rational(num(rng), pexp(rng) == 0 ? 1 : 3));
      s.add_term(e, {digit(rng), digit(rng)});
    }
    return s;
  };
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_series();
    const auto b = random_series();
    const auto c = random_series();
    EXPECT_EQ(ps_add(a, b), ps_add(b, a));
    EXPECT_EQ(ps_add(ps_add(a, b), c), ps_add(a, ps_add(b, c)));
    EXPECT_TRUE(ps_sub(a, a).is_zero());
    EXPECT_EQ(ps_mul(a, ps_add(b, c)), ps_add(ps_mul(a, b), ps_mul(a, c)));
  }
}

TEST(Arithmetic, ParameterMismatch) {
  const auto a = PerfectedSeries(FiniteField::make(2, 1), 1, 4);
  const auto b = PerfectedSeries(FiniteField::make(3, 1), 1, 4);
  try {
    (void)ps_add(a, b);
    FAIL() << "expected ParameterMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParameterMismatch);
  }
}

TEST(Frobenius, RelativeForwardAndInverse) {
  const auto k = FiniteField::make(3, 1);
  const auto a = series(k, 1, 9, {{ex({Rational(1, 3)}), 1}, {ex({2}), 2}});
  const auto fwd = ps_frobenius(a, FrobeniusDirection::kForward, FrobeniusFlavor::kRelative);
  EXPECT_EQ(fwd.coefficient(ex({1})), k->one());
  EXPECT_EQ(fwd.coefficient(ex({6})), k->from_int(2));
  const auto back = ps_frobenius(fwd, FrobeniusDirection::kInverse, FrobeniusFlavor::kRelative);
  EXPECT_EQ(back.degree_bound(), 3);
  EXPECT_EQ(back, series(k, 1, 3, {{ex({Rational(1, 3)}), 1}, {ex({2}), 2}}));
}

TEST(Frobenius, AbsoluteActsOnCoefficients) {
  const auto k = FiniteField::make(2, 2);
  PerfectedSeries a(k, 1, 8);
  a.add_term(ex({1}), {0, 1});
  a.add_term(ex({2}), {1, 0});
  const auto fwd = ps_frobenius(a, FrobeniusDirection::kForward, FrobeniusFlavor::kAbsolute);
  EXPECT_EQ(fwd.coefficient(ex({2})), k->frobenius({0, 1}));
  EXPECT_NE(fwd.coefficient(ex({2})), (FqElem{0, 1}));
  EXPECT_EQ(fwd.coefficient(ex({4})), k->one());
  const auto rel = ps_frobenius(a, FrobeniusDirection::kForward, FrobeniusFlavor::kRelative);
  EXPECT_EQ(rel.coefficient(ex({2})), (FqElem{0, 1}));
}

TEST(Truncate, PowerIdeal) {
  const auto k = FiniteField::make(2, 1);
  const auto a = series(k, 1, 8, {{ex({Rational(3, 2)}), 1}, {ex({Rational(5, 2)}), 1}});
  EXPECT_EQ(ps_truncate_ideal(a, IdealKind::kPower, 2), series(k, 1, 8, {{ex({Rational(3, 2)}), 1}}));
  const auto b = series(k, 2, 8, {{ex({1, 1}), 1}, {ex({Rational(1, 2), Rational(3, 2)}), 1}});
  EXPECT_EQ(ps_truncate_ideal(b, IdealKind::kPower, 2),
            series(k, 2, 8, {{ex({Rational(1, 2), Rational(3, 2)}), 1}}));
}

TEST(Truncate, FrobeniusIdeal) {
  const auto k = FiniteField::make(3, 1);
  const auto a = series(k, 2, 20, {{ex({2, 2}), 1}, {ex({3, 0}), 1}, {ex({Rational(8, 3), 1}), 1}});
  EXPECT_EQ(ps_truncate_ideal(a, IdealKind::kFrobenius, 1),
            series(k, 2, 20, {{ex({2, 2}), 1}, {ex({Rational(8, 3), 1}), 1}}));
}

TEST(Compose, Examples) {
  const auto k = FiniteField::make(3, 1);
  const auto f = series(k, 1, 8, {{ex({2}), 1}});
  const auto g = series(k, 1, 8, {{ex({Rational(1, 3)}), 1}});
  EXPECT_EQ(ps_compose(f, {g}, {}), series(k, 1, 8, {{ex({Rational(2, 3)}), 1}}));
  const auto diff = series(k, 2, 8, {{ex({1, 0}), 1}, {ex({0, 1}), -1}});
  EXPECT_TRUE(ps_compose(diff, {g}, {g}).is_zero());
}

TEST(Compose, MatchesNaiveExpansion) {
  const auto k = FiniteField::make(2, 1);
  const auto f = series(k, 1, 4, {{ex({1}), 1}, {ex({3}), 1}});
  const auto g = series(k, 1, 4, {{ex({Rational(1, 2)}), 1}, {ex({1}), 1}});
  const auto ours = ps_compose(f, {g}, {});
  EXPECT_EQ(ours, testing::naive_compose(f, {g}, {}));
  // (X^{1/2} + X)^3 = X^{3/2} + X^2 + X^{5/2} + X^3 over F_2.
  EXPECT_EQ(ps_add(g, series(k, 1, 4, {{ex({Rational(3, 2)}), 1}, {ex({2}), 1},
                                         {ex({Rational(5, 2)}), 1}, {ex({3}), 1}})),
            ours);
}

TEST(Compose, RandomAgainstNaive) {
  const auto k = FiniteField::make(3, 2);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> small(0, 3);
  std::uniform_int_distribution<std::int64_t> digit(0, 2);
  for (int trial = 0; trial < 10; ++trial) {
    PerfectedSeries f(k, 2, 6);
    for (int i = 0; i < 4; ++i) f.add_term(ex({small(rng), small(rng)}), {digit(rng), digit(rng)});
    PerfectedSeries g(k, 1, 6);
    PerfectedSeries h(k, 1, 6);
    for (int i = 0; i < 3; ++i) {
      g.add_term(ex({Rational(small(rng) + 1, 3)}), {digit(rng), digit(rng)});
      h.add_term(ex({Rational(small(rng) + 1, 9)}), {digit(rng), digit(rng)});
    }
    EXPECT_EQ(ps_compose(f, {g}, {h}), testing::naive_compose(f, {g}, {h}));
  }
}

TEST(Compose, NonzeroConstantTerm) {
  const auto k = FiniteField::make(2, 1);
  const auto f = series(k, 1, 4, {{ex({1}), 1}});
  const auto g = series(k, 1, 4, {{ex({0}), 1}});
  try {
    (void)ps_compose(f, {g}, {});
    FAIL() << "expected NonzeroConstantTerm";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonzeroConstantTerm);
  }
}

PerfectedSeries bad_series() {
  const auto k = FiniteField::make(2, 1);
  PerfectedSeries a(k, 1, 16);
  for (int i = 1; i <= 16; ++i) {
    a.add_term(ex({Rational(Integer(i) * (Integer(1) << i) + 1, Integer(1) << i)}), k->one());
  }
  return a;
}

TEST(Membership, OrdinarySeriesAlwaysMember) {
  const auto k = FiniteField::make(3, 1);
  const auto a = series(k, 2, 8, {{ex({1, 0}), 1}, {ex({3, 5}), 2}, {ex({8, 8}), 1}});
  for (const RestrictedParams params : {RestrictedParams{2, 1, 0}, RestrictedParams{5, 2, 3}}) {
    const auto r = membership_restricted(a, params, MembershipMethod::kBoth);
    EXPECT_TRUE(r.member);
    EXPECT_TRUE(*r.closed_form);
    EXPECT_TRUE(*r.definitional);
  }
}

TEST(Membership, BadSeriesRejected) {
  const auto r = membership_restricted(bad_series(), {2, 1, 0}, MembershipMethod::kBoth);
  EXPECT_FALSE(r.member);
  EXPECT_FALSE(*r.definitional);
  EXPECT_FALSE(*r.closed_form);
  ASSERT_FALSE(r.witness.is_null());
  EXPECT_EQ(r.witness["method"], "definitional");
}

TEST(Membership, RootWithStartingLevel) {
  const auto k = FiniteField::make(3, 1);
  const auto a = series(k, 1, 8, {{ex({Rational(1, 3)}), 1}});
  EXPECT_TRUE(membership_restricted(a, {2, 1, 1}, MembershipMethod::kClosedForm).member);
  EXPECT_TRUE(membership_restricted(a, {2, 1, 1}, MembershipMethod::kDefinitional).member);
}

TEST(Membership, InvalidParams) {
  try {
    (void)membership_restricted(bad_series(), {1, 1, 0}, MembershipMethod::kBoth);
    FAIL() << "expected PreconditionViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPreconditionViolated);
  }
}

TEST(Membership, TermVerdictWindow) {
  // p = 2, (s, r, n0) = (2, 1, 0): |I| = 3 needs 2^n > 3, so n = 2 and -ord <= 2.
  const auto v = restricted_term_verdict(ex({Rational(13, 4)}), 2, {2, 1, 0});
  EXPECT_EQ(v.definitional_bound, 2);
  EXPECT_TRUE(v.definitional);
  const auto w = restricted_term_verdict(ex({Rational(33, 8)}), 2, {2, 1, 0});
  EXPECT_EQ(w.definitional_bound, 3);
  // |I| = 4 = 2^2 sits on a window boundary.
  EXPECT_TRUE(restricted_term_verdict(ex({4}), 2, {2, 1, 0}).boundary);
}

TEST(Ecd, Examples) {
  const auto k3 = FiniteField::make(3, 1);
  EXPECT_TRUE(membership_ecd(series(k3, 1, 8, {{ex({5}), 1}}), 1, 1, 0).member);
  EXPECT_TRUE(membership_ecd(series(k3, 1, 8, {{ex({Rational(1, 3)}), 1}}), 1, 3, 1).member);
  const auto r = membership_ecd(bad_series(), 1, 2, 0);
  EXPECT_FALSE(r.member);
  EXPECT_EQ(r.witness["neg_ord"], 3);
}

TEST(Rigidity, CongruencesAndRatio) {
  const auto k = FiniteField::make(2, 1);
  const auto x = series(k, 1, 8, {{ex({1}), 1}});
  const auto f_u = series(k, 2, 8, {{ex({1, 0}), 1}});
  const auto r = rigidity_check(f_u, {x}, {x}, 1, {1, 3, 7}, PoweredBlock::kG);
  ASSERT_EQ(r.congruences.size(), 3u);
  // X^{2^n} lies in (X)^{d_n} iff 2^n >= d_n.
  EXPECT_TRUE(r.congruences[0].pass);
  EXPECT_FALSE(r.congruences[1].pass);
  EXPECT_FALSE(r.evaluation_zero);
  EXPECT_TRUE(r.ratio_ok);
  const auto bad = rigidity_check(f_u, {x}, {x}, 1, {2, 4, 8}, PoweredBlock::kG);
  EXPECT_FALSE(bad.ratio_ok);
}

TEST(Rigidity, FrobeniusRelation) {
  // f(u1, u2, v) = u1^2 + u2 with g = (X, X^2), h = (X): f(g^{2^n}, h) = 0 and
  // f(g(X), h(Y)) = X^2 + X^2 = 0.
  const auto k = FiniteField::make(2, 1);
  const auto x = series(k, 1, 8, {{ex({1}), 1}});
  const auto x2 = series(k, 1, 8, {{ex({2}), 1}});
  const auto f = series(k, 3, 8, {{ex({2, 0, 0}), 1}, {ex({0, 1, 0}), 1}});
  const auto r = rigidity_check(f, {x, x2}, {x}, 1, {1, 3, 7}, PoweredBlock::kG);
  EXPECT_TRUE(r.all_congruences);
  EXPECT_TRUE(r.evaluation_zero);
  EXPECT_TRUE(r.ratio_ok);
}

TEST(Rigidity, Errors) {
  const auto k = FiniteField::make(2, 1);
  const auto x = series(k, 1, 4, {{ex({1}), 1}});
  const auto f = series(k, 2, 4, {{ex({1, 0}), 1}});
  try {
    (void)rigidity_check(f, {x}, {x}, 1, {}, PoweredBlock::kG);
    FAIL() << "expected SequenceTooShort";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSequenceTooShort);
  }
  try {
    (void)rigidity_check(f, {x}, {x}, 1, {1, 5}, PoweredBlock::kG);
    FAIL() << "expected DegreeBoundTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegreeBoundTooSmall);
  }
}

TEST(SlopeExponents, Examples) {
  const auto a = slope_exponents(Rational(1, 2), Rational(1, 3));
  EXPECT_EQ(a.a, 1);
  EXPECT_EQ(a.r, 2);
  EXPECT_EQ(a.s, 3);
  const auto b = slope_exponents(1, Rational(1, 2));
  EXPECT_EQ(b.a, 1);
  EXPECT_EQ(b.r, 1);
  EXPECT_EQ(b.s, 2);
  try {
    (void)slope_exponents(Rational(1, 2), Rational(1, 2));
    FAIL() << "expected SlopeOrderViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSlopeOrderViolated);
  }
}

}  // namespace
}  // namespace isolab
