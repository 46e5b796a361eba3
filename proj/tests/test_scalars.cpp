#include <qgraph/scalars.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace qgraph;

namespace {

FormalScalar random_formal(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4), e(-6, 6), n(1, 4);
  FormalScalar s;
  int terms = n(rng);
  for (int i = 0; i < terms; ++i) s = s + FormalScalar::v_pow(e(rng), Rational(c(rng)));
  return s;
}

RootScalar random_root(std::mt19937_64& rng, const CyclotomicField& f) {
  std::uniform_int_distribution<int> c(-5, 5), d(1, 3);
  RootScalar::Coeffs co(static_cast<std::size_t>(f.degree()));
  for (auto& x : co) x = Rational(c(rng), d(rng));
  return RootScalar(f, co);
}

}  // namespace

TEST(Rational, PromotesAndDemotes) {
  Rational big = pow(Rational(1000000007), 5);
  EXPECT_EQ(big / pow(Rational(1000000007), 4), Rational(1000000007));
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Specialize, EmbeddingExamples) {
  for (int p : {3, 5, 7}) {
    const auto& f = CyclotomicField::get(p);
    EXPECT_EQ(specialize(FormalScalar::v_pow(2), p), RootScalar::zeta_pow(f, 1));
    EXPECT_EQ(specialize(FormalScalar::q_pow(p * p), p), RootScalar(f, Rational(1)));
  }
  auto q2q1 = FormalScalar::q_pow(2) + FormalScalar::q_pow(1) + FormalScalar(1);
  EXPECT_TRUE(specialize(q2q1, 3).is_zero());
  EXPECT_FALSE(specialize(q2q1, 5).is_zero());
}

TEST(Specialize, RejectsEvenOrder) {
  EXPECT_THROW(CyclotomicField::get(4), std::invalid_argument);
  EXPECT_THROW(CyclotomicField::get(1), std::invalid_argument);
  EXPECT_NO_THROW(CyclotomicField::get(9));
}

TEST(Specialize, IsARingHomomorphism) {
  std::mt19937_64 rng(11);
  for (int p : {3, 5, 9}) {
    EXPECT_EQ(specialize(FormalScalar(1), p), RootScalar(CyclotomicField::get(p), Rational(1)));
    for (int k = 0; k < 40; ++k) {
      auto x = random_formal(rng), y = random_formal(rng);
      EXPECT_EQ(specialize(x + y, p), specialize(x, p) + specialize(y, p));
      EXPECT_EQ(specialize(x * y, p), specialize(x, p) * specialize(y, p));
    }
  }
}

TEST(RootScalar, FieldAxioms) {
  std::mt19937_64 rng(5);
  for (int p : {3, 5, 7}) {
    const auto& f = CyclotomicField::get(p);
    RootScalar one(f, Rational(1));
    for (int k = 0; k < 30; ++k) {
      auto a = random_root(rng, f), b = random_root(rng, f), c = random_root(rng, f);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), one);
      }
    }
  }
}

TEST(RootScalar, ZetaPowersAndConjugation) {
  const auto& f = CyclotomicField::get(5);
  auto z = RootScalar::zeta_pow(f, 1);
  EXPECT_EQ(z.pow(5), RootScalar(f, Rational(1)));
  EXPECT_EQ(z.conj(), RootScalar::zeta_pow(f, -1));
  EXPECT_EQ((z + z.pow(2)).conj(), RootScalar::zeta_pow(f, 4) + RootScalar::zeta_pow(f, 3));
  RootScalar s(f, Rational());
  for (int k = 0; k < 5; ++k) s += RootScalar::zeta_pow(f, k);
  EXPECT_TRUE(s.is_zero());
}

TEST(LimitAtRoot, IdenticalFactors) {
  for (int p : {3, 5}) {
    auto a = FormalScalar::q_pow(p * p) - FormalScalar(1);
    auto b = FormalScalar(1) - FormalScalar::q_pow(p * p);
    EXPECT_EQ(limit_at_root(RationalExpr(a, b), p), RootScalar(CyclotomicField::get(p), Rational(-1)));
  }
}

TEST(LimitAtRoot, CyclotomicVanishing) {
  auto num = FormalScalar::q_pow(3) - FormalScalar(1);
  auto den = FormalScalar::q_pow(1) - FormalScalar(1);
  EXPECT_TRUE(limit_at_root(RationalExpr(num, den), 3).is_zero());
}

TEST(LimitAtRoot, GenuinePoleIsRejected) {
  // 1 - q^10 does not vanish at zeta_3 while 1 - q^9 does, so nothing cancels.
  auto num = FormalScalar(1) - FormalScalar::q_pow(10);
  auto den = FormalScalar(1) - FormalScalar::q_pow(9);
  EXPECT_THROW(limit_at_root(RationalExpr(num, den), 3), NotCentralError);
}

TEST(LimitAtRoot, AgreesWithSpecializeForConstantDenominator) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    auto x = random_formal(rng);
    EXPECT_EQ(limit_at_root(RationalExpr(x, FormalScalar(Rational(2))), 5), specialize(x, 5) * RootScalar(CyclotomicField::get(5), Rational(1, 2)));
  }
}

TEST(DerivativeAtOne, Examples) {
  EXPECT_EQ(derivative_at_one(FormalScalar::q_pow(1) - FormalScalar::q_pow(-1)), Rational(2));
  EXPECT_EQ(derivative_at_one(FormalScalar(1)), Rational(0));
  EXPECT_EQ(derivative_at_one(FormalScalar::v_pow(-1) * FormalScalar::q_pow(1)), Rational(1, 2));
}
