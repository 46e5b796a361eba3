#include <qgraph/appendix.hpp>
#include <qgraph/ncpoly.hpp>
#include <qgraph/relations.hpp>
#include <qgraph/rmatrix.hpp>

#include <gtest/gtest.h>

using namespace qgraph;

TEST(RMatrix, YangBaxterFormal) {
  auto r = verify_ybe(FormalContext{});
  EXPECT_TRUE(r.qybe_plus);
  EXPECT_TRUE(r.qybe_minus);
  EXPECT_TRUE(r.flip_inverse);
  EXPECT_TRUE(r.inverses_ok);
}

TEST(RMatrix, YangBaxterAtRoots) {
  for (int p : {3, 5, 7}) EXPECT_TRUE(verify_ybe(RootContext(p)).ok()) << p;
}

TEST(RMatrix, CorruptedEntryBreaksYangBaxter) {
  FormalContext c;
  auto R = r_plus(c);
  R(1, 2) = R(1, 2) + FormalScalar(1);
  EXPECT_FALSE(qybe_residual(R, c).is_zero());
}

TEST(ClassicalR, DerivedIdentities) {
  auto d = classical_r_matrices();
  EXPECT_TRUE(d.cybe_plus);
  EXPECT_TRUE(d.cybe_minus);
  EXPECT_TRUE(d.minus_is_flipped_plus);
  EXPECT_TRUE(d.casimir_ok);
  EXPECT_TRUE(d.ad_invariant);
  EXPECT_EQ(d.r_plus(0, 0), Rational(1, 2));
  EXPECT_EQ(d.r_plus(1, 1), Rational(-1, 2));
  EXPECT_EQ(d.r_plus(2, 2), Rational(-1, 2));
  EXPECT_EQ(d.r_plus(3, 3), Rational(1, 2));
}

TEST(Patterns, NamesRoundTrip) {
  for (auto p : {RelationPattern::SameHandle, RelationPattern::AB, RelationPattern::CrossHandle, RelationPattern::CD,
                 RelationPattern::MA, RelationPattern::Identity})
    EXPECT_EQ(parse_pattern(pattern_name(p)), p);
  EXPECT_THROW(parse_pattern("nonsense"), std::invalid_argument);
}

TEST(PrintedTables, PrintedTablesHoldInFormalMode) {
  FormalContext c;
  auto P = Presentation<FormalScalar>::make(c);
  using T = NcPoly<FormalScalar>;
  auto A = generator_matrix(P, false), B = generator_matrix(P, true);
  auto C = mat2_mul(qmat_inverse(B), A), D = mat2_mul(B, qmat_inverse(A));
  auto M = monodromy(P);
  auto lookup = [&](const std::string& n) -> T {
    const OpMatrix<FormalScalar>& m = n[0] == 'a' ? A : n[0] == 'b' ? B : n[0] == 'c' ? C : n[0] == 'd' ? D : M;
    return m[n[1] - '1'][n[2] - '1'];
  };
  RelationParser<FormalScalar, T> parser(c, lookup, T::one(P));
  for (const auto& tbl : {ab_table(), cd_table(), am_table()})
    for (const auto& line : tbl) EXPECT_TRUE(parser.relation(line.text).is_zero()) << line.text;
}

TEST(PrintedTables, ParserRejectsMalformedInput) {
  FormalContext c;
  RelationParser<FormalScalar, FormalScalar> parser(c, [](const std::string&) { return FormalScalar(1); }, FormalScalar(1));
  EXPECT_EQ(parser.parse("q^2*q^-2"), FormalScalar(1));
  EXPECT_THROW(parser.relation("q + 1"), std::invalid_argument);
  EXPECT_THROW(parser.parse("(q + 1"), std::invalid_argument);
}
