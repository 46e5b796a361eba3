#include <qgraph/center.hpp>

#include <gtest/gtest.h>

using namespace qgraph;

TEST(Center, GeneratorsAreCentralAtThree) { EXPECT_TRUE(verify_center(3).passed()); }

TEST(Center, FrobeniusMatrixHasDeterminantOne) {
  auto P = Presentation<RootScalar>::make(RootContext(3));
  for (bool b : {false, true}) {
    auto F = frobenius_matrix(P, b);
    EXPECT_EQ(det2(F), CentralPoly::constant(P->central_size(), P->ctx().one()));
    EXPECT_EQ(F[0][0], central_power(P, {1, b ? Family::b11 : Family::a11}));
  }
}

TEST(Center, NonCentralPowerIsRejected) {
  auto P = Presentation<RootScalar>::make(RootContext(3));
  EXPECT_THROW(central_power(P, {1, Family::a22}), std::logic_error);
}

TEST(Prop4, EntryResidualsVanishAtThree) {
  auto r = verify_prop4(3);
  EXPECT_TRUE(r.passed());
  int entries = 0;
  for (const auto& c : r.checks) entries += c.name.rfind("M", 0) == 0 && c.name.find("^p = (BA^-1B^-1A)") != std::string::npos;
  EXPECT_EQ(entries, 3);
}

TEST(Prop4, SingleRelationAtThree) { EXPECT_TRUE(verify_single_relation(3).passed()); }

TEST(Prop4, AbelianDegenerationIsTrivial) {
  // commuting diagonal substitution: B A^-1 B^-1 A = 1
  using C = LaurentPoly<Rational>;
  auto x = [](std::size_t i) { return C::variable(2, i, Rational(1)); };
  auto one = C::constant(2, Rational(1)), zero = C::constant(2, Rational());
  ClassicalMatrix<Rational> A = {{{x(0), zero}, {zero, x(0).inverse_monomial()}}};
  ClassicalMatrix<Rational> B = {{{x(1), zero}, {zero, x(1).inverse_monomial()}}};
  auto M = classical_commutator(A, B);
  EXPECT_EQ(M[0][0], one);
  EXPECT_TRUE(M[0][1].is_zero());
}
