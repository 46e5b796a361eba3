#include <qgraph/reps.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace qgraph;

namespace {

RootScalar rs(const CyclotomicField& f, long n, long d = 1) { return RootScalar(f, Rational(n, d)); }
RootScalar qp(const CyclotomicField& f, int k, const Rational& c = Rational(1)) { return RootScalar::zeta_pow(f, k, c); }

// x1 = x4 = 1, y2 = y3 = 0, z3 = 0, z2 = -q^-2
RepParams1 sample1(const CyclotomicField& f) { return {rs(f, 1), rs(f, 1), rs(f, 0), rs(f, 0), -qp(f, -2), rs(f, 0)}; }

// c_{p-1} solves 1 + q^10 x1 x4 b2 c_{p-1} = 0
RepParams2 sample2(const CyclotomicField& f) {
  RootScalar x1 = rs(f, 2), x4 = rs(f, 3), b1 = rs(f, 1), b2 = rs(f, 1);
  RootScalar c = -(qp(f, -10) / (x1 * x4 * b2));
  return {x1, x4, b1, b2, c};
}

bool all_checks_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.informational && !c.ok) return false;
  return !r.checks.empty();
}

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.informational && !c.ok) return c.name + ": " + c.residual;
  return "";
}

}  // namespace

TEST(Family1, SampleActionLines) {
  const auto& f = CyclotomicField::get(3);
  auto rep = build_x_rep1(3, sample1(f));
  const auto& X4 = rep.op({1, Family::X4});
  // X4 Psi(0,0) = Psi(0,1)
  EXPECT_EQ(X4.at(1, 0), rs(f, 1));
  EXPECT_EQ(rep.op({1, Family::X1}).pow(3), SparseMatrix::identity(f, 9));
  auto ch = central_character(rep);
  EXPECT_TRUE(ch.report.passed()) << first_failure(ch.report);
  EXPECT_FALSE(ch.values.empty());
}

TEST(Family1, X2PowerOnSample) {
  const auto& f = CyclotomicField::get(3);
  auto rep = build_x_rep1(3, sample1(f));
  auto s = rep.op({1, Family::X2}).pow(3).scalar_value();
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, rs(f, -1));
  // includes M11 Psi(0,0) = Psi(0,0) through the M11 action line
  EXPECT_TRUE(all_checks_pass(central_character(rep).report));
}

TEST(Family1, RelationsCharacterAndCommutant) {
  for (int p : {3, 5}) {
    const auto& f = CyclotomicField::get(p);
    RepParams1 P{rs(f, 2), rs(f, 3), rs(f, 1), rs(f, 1), qp(f, -2, Rational(-1, 4)), rs(f, 0)};
    auto rep = build_x_rep1(p, P);
    auto r = verify_relations(rep);
    EXPECT_TRUE(all_checks_pass(r)) << p << " " << first_failure(r);
    auto ch = central_character(rep);
    EXPECT_TRUE(all_checks_pass(ch.report)) << p << " " << first_failure(ch.report);
    EXPECT_EQ(commutant_dim(generator_ops(rep)), 1) << p;
  }
}

TEST(Family1, RandomValidParametersAreIrreducible) {
  const auto& f = CyclotomicField::get(3);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(1, 4);
  for (int k = 0; k < 5; ++k) {
    RootScalar x1 = rs(f, d(rng)), x4 = rs(f, d(rng)), y2 = rs(f, d(rng)), y3 = rs(f, d(rng));
    RootScalar one = rs(f, 1);
    if ((y2 * x1 + one).is_zero() || (y3 * x4 + one).is_zero()) continue;
    // z3 = 0 and 1 + q^2 z2 (y3 x4 + 1) = 0
    RootScalar z2 = -(qp(f, -2) / (y3 * x4 + one));
    auto rep = build_x_rep1(3, {x1, x4, y2, y3, z2, rs(f, 0)});
    EXPECT_TRUE(all_checks_pass(verify_relations(rep)));
    EXPECT_EQ(commutant_dim(generator_ops(rep)), 1);
  }
}

TEST(Family1, ConstraintViolationIsRejected) {
  const auto& f = CyclotomicField::get(3);
  RepParams1 P = sample1(f);
  P.z2 = rs(f, 1);
  try {
    build_x_rep1(3, P);
    FAIL() << "expected a constraint error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("constraint"), std::string::npos);
  }
  P = sample1(f);
  P.z3 = rs(f, 1);
  EXPECT_THROW(build_x_rep1(3, P), std::invalid_argument);
}

TEST(Family2, RelationsCharacterAndCommutant) {
  for (int p : {3, 5}) {
    const auto& f = CyclotomicField::get(p);
    auto P = sample2(f);
    Representation rep;
    try {
      rep = build_x_rep2(p, P);
    } catch (const std::invalid_argument& e) {
      FAIL() << p << " " << e.what();
    }
    auto r = verify_relations(rep);
    EXPECT_TRUE(all_checks_pass(r)) << p << " " << first_failure(r);
    auto ch = central_character(rep);
    EXPECT_TRUE(all_checks_pass(ch.report)) << p << " " << first_failure(ch.report);
    EXPECT_EQ(commutant_dim(generator_ops(rep)), 1) << p;
  }
}

TEST(Family2, ConstraintViolationIsRejected) {
  const auto& f = CyclotomicField::get(3);
  auto P = sample2(f);
  P.c_last = P.c_last + rs(f, 1);
  EXPECT_THROW(build_x_rep2(3, P), std::invalid_argument);
  EXPECT_NO_THROW(build_x_rep2(3, P, false));
}

TEST(Weil, ActionAndCharacter) {
  for (int p : {3, 5}) {
    const auto& f = CyclotomicField::get(p);
    RootScalar al = rs(f, 2), be = rs(f, 3);
    auto rep = build_weil_rep(p, {al, be});
    const auto& a = rep.op({1, Family::a11});
    const auto& b = rep.op({1, Family::b11});
    EXPECT_EQ(b.at(0, 0), be);
    EXPECT_TRUE((a * b - qp(f, 1) * (b * a)).is_zero());
    EXPECT_EQ(a.pow(p), SparseMatrix::scalar(f, p, al));
    EXPECT_TRUE(all_checks_pass(verify_relations(rep)));
  }
  const auto& f = CyclotomicField::get(3);
  EXPECT_THROW(build_weil_rep(3, {rs(f, 0), rs(f, 1)}), std::invalid_argument);
}

TEST(L1, ActionDeterminantAndRelations) {
  const int p = 3;
  const auto& f = CyclotomicField::get(p);
  auto rep = build_l1_rep(p, sample1(f), {rs(f, 1), rs(f, 1)});
  EXPECT_EQ(rep.dim, 27);
  // a11 Psi(0,0,0) = Psi(0,0,1)
  EXPECT_EQ(rep.op({1, Family::a11}).at(1, 0), rs(f, 1));
  auto I = SparseMatrix::identity(f, rep.dim);
  EXPECT_EQ(op_detq(rep.matrix(false)), I);
  EXPECT_EQ(op_detq(rep.matrix(true)), I);
  auto r = verify_relations(rep);
  EXPECT_TRUE(all_checks_pass(r)) << first_failure(r);
}

TEST(FaultInjection, WrongSignLeavesAResidual) {
  const auto& f = CyclotomicField::get(3);
  auto rep = build_x_rep1(3, sample1(f));
  auto& X2 = rep.gens[{1, Family::X2}];
  X2 = -X2;
  EXPECT_FALSE(verify_relations(rep).passed());

  auto l1 = build_l1_rep(3, sample1(f), {rs(f, 1), rs(f, 1)});
  auto& b12 = l1.gens[{1, Family::b12}];
  b12 = -b12;
  EXPECT_FALSE(verify_relations(l1).passed());
}

TEST(Commutant, DirectSumIsReducible) {
  const auto& f = CyclotomicField::get(3);
  auto rep = build_x_rep1(3, sample1(f));
  EXPECT_GE(commutant_dim(generator_ops(direct_sum(rep, rep))), 2);
}

TEST(ParseRootScalar, Syntax) {
  const auto& f = CyclotomicField::get(3);
  EXPECT_EQ(parse_root_scalar(nlohmann::json(3), f), rs(f, 3));
  EXPECT_EQ(parse_root_scalar(nlohmann::json("5/2"), f), rs(f, 5, 2));
  EXPECT_EQ(parse_root_scalar(nlohmann::json("q"), f), qp(f, 1));
  EXPECT_EQ(parse_root_scalar(nlohmann::json("-q^2"), f), -qp(f, 2));
  EXPECT_EQ(parse_root_scalar(nlohmann::json("-1/4*q^-2"), f), qp(f, -2, Rational(-1, 4)));
  EXPECT_EQ(parse_root_scalar(nlohmann::json::array({"1", "2"}), f), rs(f, 1) + rs(f, 2) * qp(f, 1));
  EXPECT_EQ(parse_root_scalar(root_scalar_json(qp(f, 2, Rational(7))), f), qp(f, 2, Rational(7)));
  EXPECT_THROW(parse_root_scalar(nlohmann::json("q^"), f), std::invalid_argument);
}
