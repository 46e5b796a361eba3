#include <qgraph/classical.hpp>

#include <gtest/gtest.h>

using namespace qgraph;

TEST(Flatness, IdentityPointIsFlat) {
  for (int g : {1, 2, 3}) {
    ClassicalPoint pt;
    pt.A.assign(static_cast<std::size_t>(g), rmat_identity());
    pt.B.assign(static_cast<std::size_t>(g), rmat_identity());
    EXPECT_TRUE(check_flatness(pt).flat);
  }
}

TEST(Flatness, CommutingDiagonalPairIsFlat) {
  ClassicalPoint pt;
  pt.A = {rmat(2, 0, 0, Rational(1, 2))};
  pt.B = {rmat(3, 0, 0, Rational(1, 3))};
  EXPECT_TRUE(check_flatness(pt).flat);
}

TEST(Flatness, NonCommutingPairHasResidual) {
  ClassicalPoint pt;
  pt.A = {rmat(1, 1, 0, 1)};
  pt.B = {rmat(1, 0, 1, 1)};
  auto r = check_flatness(pt);
  EXPECT_FALSE(r.flat);
  // B A^-1 B^-1 A - 1 by hand
  EXPECT_TRUE(rmat_equal(r.residual, rmat_sub(handle_commutator(pt.A[0], pt.B[0]), rmat_identity())));
  EXPECT_TRUE(rmat_equal(handle_commutator(pt.A[0], pt.B[0]), rmat(2, 1, 1, 1)));
}

TEST(Flatness, RejectsPointsOutsideTheDomain) {
  ClassicalPoint pt;
  pt.A = {rmat(0, 1, -1, 0)};
  pt.B = {rmat_identity()};
  EXPECT_THROW(check_flatness(pt), std::invalid_argument);
  pt.A = {rmat(2, 0, 0, 1)};
  EXPECT_THROW(check_flatness(pt), std::invalid_argument);
}

TEST(Prop5, GenusOneIsTheDirectCommutator) {
  auto pt = random_point(1, 9);
  auto r = verify_prop5_classical(pt);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.data["M1"].get<std::string>(), rmat_str(handle_commutator(pt.A[0], pt.B[0])));
}

TEST(Prop5, IdentityHandles) {
  ClassicalPoint pt;
  pt.A.assign(2, rmat_identity());
  pt.B.assign(2, rmat_identity());
  auto r = verify_prop5_classical(pt);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.data["M1"].get<std::string>(), rmat_str(rmat_identity()));
}

TEST(Prop5, RoutesAgreeOnSeededPoints) {
  for (int g : {1, 2}) {
    auto r = verify_classical_sweep(g, 100, 1);
    EXPECT_TRUE(r.passed()) << g;
  }
}

TEST(Gauss, FactorsMultiplyBack) {
  RMat G = rmat(3, 2, 4, 3);
  auto f = gauss_factors(G);
  EXPECT_TRUE(rmat_equal(mat2_mul(f.minus_inv, f.plus), G));
  EXPECT_TRUE(f.plus[1][0].is_zero());
  EXPECT_TRUE(f.minus_inv[0][1].is_zero());
  EXPECT_THROW(gauss_factors(rmat(0, 1, -1, 0)), std::domain_error);
}

TEST(Sampler, Deterministic) {
  auto a = flat_sample(2, 4), b = flat_sample(2, 4);
  for (int h = 0; h < 2; ++h) EXPECT_TRUE(rmat_equal(a.A[h], b.A[h]) && rmat_equal(a.B[h], b.B[h]));
}
