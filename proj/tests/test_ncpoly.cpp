#include <qgraph/diamond.hpp>
#include <qgraph/lemmas.hpp>
#include <qgraph/relations.hpp>

#include <gtest/gtest.h>

using namespace qgraph;

namespace {

using FP = NcPoly<FormalScalar>;
using W = WordPoly<FormalScalar>;

FormalScalar q(int k) { return FormalScalar::q_pow(k); }

struct Formal : ::testing::Test {
  PresentationPtr<FormalScalar> P = Presentation<FormalScalar>::make(FormalContext{});
  FP gen(Family f, int h = 1) const { return P->image({h, f}); }
  FP one() const { return FP::one(P); }
};

// Generic 2x2 symbol matrices: x on handle 1, y on handle 2 (families only label the entry).
std::pair<Mat2<W>, Mat2<W>> symbol_matrices() {
  Mat2<W> X, Y;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      X[i][j] = W::gen({1, entry_family(false, i + 1, j + 1)}, FormalScalar(1));
      Y[i][j] = W::gen({2, entry_family(false, i + 1, j + 1)}, FormalScalar(1));
    }
  return {X, Y};
}

FormalScalar coefficient(const W& w, const W::Word& word) {
  auto it = w.terms().find(word);
  return it == w.terms().end() ? FormalScalar() : it->second;
}

}  // namespace

TEST_F(Formal, NormalFormExamples) {
  EXPECT_EQ(gen(Family::X2) * gen(Family::X1), q(-2) * (gen(Family::X1) * gen(Family::X2)) + (q(-2) - FormalScalar(1)) * one());
  EXPECT_EQ(gen(Family::a12) * gen(Family::a11), q(2) * (gen(Family::a11) * gen(Family::a12)));
  EXPECT_EQ(one() * one(), one());
}

TEST_F(Formal, Commutators) {
  EXPECT_TRUE(commutator(gen(Family::a11), gen(Family::a11)).is_zero());
  EXPECT_TRUE(commutator(gen(Family::X1), gen(Family::a11)).is_zero());
  EXPECT_FALSE(commutator(gen(Family::a11), gen(Family::b11)).is_zero());
}

TEST(RootMode, PowerOfA11IsCentral) {
  auto R = Presentation<RootScalar>::make(RootContext(3));
  auto a = R->image({1, Family::a11}), b = R->image({1, Family::b11});
  EXPECT_TRUE(commutator(a.pow(3), b).is_zero());
  EXPECT_FALSE(commutator(a.pow(2), b).is_zero());
}

TEST_F(Formal, TranslationBetweenPresentations) {
  auto g = [](Family f) { return W::gen({1, f}, FormalScalar(1)); };
  auto bi = g(Family::b11inv);
  EXPECT_EQ(x_from_ab(g(Family::a11) * g(Family::a21) * bi * bi, P), gen(Family::X2));
  EXPECT_EQ(gen(Family::b12), gen(Family::a11) * gen(Family::a11) * gen(Family::X3) * gen(Family::b11inv));
  EXPECT_EQ(x_from_ab(ab_from_x(gen(Family::a11)), P), gen(Family::a11));
  EXPECT_EQ(x_from_ab(ab_from_x(gen(Family::X2)), P), gen(Family::X2));
}

TEST_F(Formal, QuantumDeterminantAndTrace) {
  auto I = identity_opmatrix(P);
  EXPECT_EQ(detq(I), one());
  EXPECT_EQ(trq(I), (q(-1) + q(1)) * one());
  EXPECT_EQ(detq(generator_matrix(P, false)), one());
  EXPECT_EQ(detq(generator_matrix(P, true)), one());
  EXPECT_EQ(detq(monodromy(P)), one());
}

TEST_F(Formal, QuantumInverse) {
  auto I = identity_opmatrix(P);
  auto Ii = qmat_inverse(I);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(Ii[i][j], I[i][j]);
  auto B = generator_matrix(P, true);
  auto Bi = qmat_inverse(B);
  EXPECT_EQ(Bi[0][0], q(2) * gen(Family::b22) + (FormalScalar(1) - q(2)) * gen(Family::b11));
  auto A = generator_matrix(P, false);
  auto prod = mat2_mul(A, qmat_inverse(A));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(prod[i][j], i == j ? one() : FP(P));
}

TEST(RootMode, QuantumInverseAtThree) {
  auto R = Presentation<RootScalar>::make(RootContext(3));
  auto A = generator_matrix(R, false);
  auto prod = mat2_mul(qmat_inverse(A), A);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(prod[i][j], i == j ? NcPoly<RootScalar>::one(R) : NcPoly<RootScalar>(R));
}

TEST(CompileMatrixRelation, ABEntryOneOne) {
  auto [X, Y] = symbol_matrices();
  auto comps = compile_matrix_relation(RelationPattern::AB, X, Y, FormalContext{}, W());
  ASSERT_EQ(comps.size(), 16u);
  const auto& c = comps[0];
  W::Word xy = {{1, Family::a11}, {2, Family::a11}}, yx = {{2, Family::a11}, {1, Family::a11}};
  ASSERT_EQ(c.terms().size(), 2u);
  FormalScalar lead = coefficient(c, xy);
  ASSERT_FALSE(lead.is_zero());
  EXPECT_EQ(coefficient(c, yx), -(q(1) * lead));
}

TEST(CompileMatrixRelation, CDEntryTwoOneOneTwo) {
  auto [X, Y] = symbol_matrices();
  auto comps = compile_matrix_relation(RelationPattern::CD, X, Y, FormalContext{}, W());
  // x_{21} y_{12} sits at row 2*1 + 0, column 2*0 + 1.
  const auto& c = comps[2 * 4 + 1];
  W::Word xy = {{1, Family::a21}, {2, Family::a12}}, yx = {{2, Family::a12}, {1, Family::a21}};
  FormalScalar lead = coefficient(c, xy);
  ASSERT_FALSE(lead.is_zero());
  EXPECT_EQ(coefficient(c, yx), -(q(-2) * lead));
}

TEST(CompileMatrixRelation, IdentityPatternIsCommutativity) {
  auto [X, Y] = symbol_matrices();
  auto comps = compile_matrix_relation(RelationPattern::Identity, X, Y, FormalContext{}, W());
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col) {
      const auto& x = X[r / 2][col / 2];
      const auto& y = Y[r % 2][col % 2];
      EXPECT_EQ(comps[static_cast<std::size_t>(4 * r + col)], x * y - y * x);
    }
}

TEST_F(Formal, CompiledRelationsHoldSymbolically) {
  auto A = generator_matrix(P, false), B = generator_matrix(P, true);
  auto M = monodromy(P);
  FP zero(P);
  FormalContext c;
  for (const auto& e : compile_matrix_relation(RelationPattern::SameHandle, A, A, c, zero)) EXPECT_TRUE(e.is_zero());
  for (const auto& e : compile_matrix_relation(RelationPattern::AB, A, B, c, zero)) EXPECT_TRUE(e.is_zero());
  for (const auto& e : compile_matrix_relation(RelationPattern::MA, M, A, c, zero)) EXPECT_TRUE(e.is_zero());
}

TEST_F(Formal, FaultInjectionBreaksARelation) {
  // a wrong q-power in the A-B template leaves a nonzero residual
  auto A = generator_matrix(P, false), B = generator_matrix(P, true);
  FormalContext c;
  auto R = pattern_matrices(RelationPattern::AB, c);
  R[0](0, 0) = R[0](0, 0) * q(1);
  int nonzero = 0;
  for (const auto& e : compile_matrix_relation(R, A, B, FP(P))) nonzero += !e.is_zero();
  EXPECT_GT(nonzero, 0);
}

TEST(Diamond, XPresentationIsConfluent) {
  EXPECT_TRUE(diamond_check(*Presentation<FormalScalar>::make(FormalContext{})).empty());
  EXPECT_TRUE(diamond_check(*Presentation<RootScalar>::make(RootContext(3))).empty());
  EXPECT_TRUE(diamond_check(*Presentation<RootScalar>::make(RootContext(5))).empty());
}

TEST(Diamond, CorruptedRuleIsDetected) {
  auto P = Presentation<FormalScalar>::make(FormalContext{});
  auto bad = P->with_rule(3, 2, FormalScalar::q_pow(-2, 2), FormalScalar::q_pow(-2) - FormalScalar(1));
  auto f = diamond_check(*bad);
  ASSERT_FALSE(f.empty());
  EXPECT_FALSE(f.front().word.empty());
}

TEST(Lemmas, AllPass) {
  EXPECT_TRUE(verify_lemma1(4).passed());
  for (int p : {3, 5}) {
    EXPECT_TRUE(verify_lemma2(p).passed()) << p;
    EXPECT_TRUE(verify_lemma3(p).passed()) << p;
  }
}

TEST_F(Formal, LemmaOneWithMZeroIsTrivial) { EXPECT_TRUE(lemma1_residual(P, 0, 3).is_zero()); }
