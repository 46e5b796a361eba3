#include <qgraph/poisson.hpp>

#include <gtest/gtest.h>

using namespace qgraph;

namespace {

struct Brackets : ::testing::Test {
  PresentationPtr<FormalScalar> F = Presentation<FormalScalar>::make(FormalContext{});
  PresentationPtr<RootScalar> P = Presentation<RootScalar>::make(RootContext(3));
  NcPoly<FormalScalar> lift(Family f) const { return F->image({1, f}).pow(3); }
  NcPoly<RootScalar> power(Family f) const { return P->image({1, f}).pow(3); }
};

}  // namespace

TEST_F(Brackets, Antisymmetry) { EXPECT_TRUE(qpoisson_bracket(lift(Family::a11), lift(Family::a11), P).is_zero()); }

TEST_F(Brackets, A11WithB11) {
  EXPECT_EQ(qpoisson_bracket(lift(Family::a11), lift(Family::b11), P), -(power(Family::a11) * power(Family::b11)));
}

TEST_F(Brackets, A11WithX1) { EXPECT_TRUE(qpoisson_bracket(lift(Family::a11), lift(Family::X1), P).is_zero()); }

TEST_F(Brackets, NonCentralArgumentRaises) {
  EXPECT_THROW(qpoisson_bracket(F->image({1, Family::a11}), F->image({1, Family::b11}), P), NotCentralError);
}

TEST(ClassicalBracket, Examples) {
  ClassicalBracket br(1);
  auto a11 = br.coordinate(1, false, 1, 1), b11 = br.coordinate(1, true, 1, 1);
  EXPECT_TRUE(br(a11, a11).is_zero());
  EXPECT_EQ(br(a11, b11), -(a11 * b11));
}

TEST(ClassicalBracket, CrossHandleIsAntisymmetric) {
  ClassicalBracket br(2);
  auto x = br.coordinate(1, false, 1, 1), y = br.coordinate(2, false, 1, 1);
  EXPECT_EQ(br(x, y), -br(y, x));
}

TEST(ClassicalBracket, JacobiAndCasimirs) {
  EXPECT_TRUE(verify_classical_jacobi(1).passed());
  EXPECT_TRUE(verify_classical_jacobi(2, 7).passed());
}

TEST(Prop3, QuantumAndClassicalTablesAgreeAtThree) {
  auto r = verify_prop3(3);
  EXPECT_TRUE(r.passed());
  bool spot = false;
  for (const auto& c : r.checks) spot = spot || (c.name == "quantum {a11^p, b11^p} = -a11^p b11^p" && c.ok);
  EXPECT_TRUE(spot);
}
