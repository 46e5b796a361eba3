#include <qgraph/commands.hpp>

#include <gtest/gtest.h>

using namespace qgraph;

namespace {

RootScalar rs(const CyclotomicField& f, long n) { return RootScalar(f, Rational(n)); }

nlohmann::json config(const std::string& name) { return load_params(std::string(QGRAPH_CONFIG_DIR) + "/" + name); }

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.informational && !c.ok) return c.name + ": " + c.residual;
  return "";
}

const Check* find_check(const Report& r, const std::string& needle) {
  for (const auto& c : r.checks)
    if (c.name.find(needle) != std::string::npos) return &c;
  return nullptr;
}

}  // namespace

TEST(OperatorSqrt, SquaresBack) {
  const auto& f = CyclotomicField::get(3);
  SparseMatrix X(f, 3, 3);
  X.add(0, 0, rs(f, 4));
  X.add(1, 1, rs(f, 4) * RootScalar::zeta_pow(f, 2));
  X.add(2, 2, rs(f, 4) * RootScalar::zeta_pow(f, 4));
  auto s = operator_sqrt(X);
  EXPECT_EQ(s.root * s.root, X);
  EXPECT_EQ(s.root * s.root_inv, SparseMatrix::identity(f, 3));
  EXPECT_EQ(s.scale * s.scale, s.power_scalar);
}

TEST(OperatorSqrt, MissingRootIsReported) {
  const auto& f = CyclotomicField::get(3);
  auto X = SparseMatrix::scalar(f, 2, rs(f, 2));
  EXPECT_THROW(operator_sqrt(X), std::domain_error);
  EXPECT_NO_THROW(operator_sqrt(SparseMatrix::scalar(f, 2, rs(f, 4))));
}

TEST(Gauss, IdentityMonodromyHasIdentityFactors) {
  const auto& f = CyclotomicField::get(3);
  auto I = SparseMatrix::identity(f, 4), Z = SparseMatrix(f, 4, 4);
  Mat2<SparseMatrix> M = {{{I, Z}, {Z, I}}};
  auto g = gauss_decompose_operator(M);
  EXPECT_TRUE(g.report.passed()) << first_failure(g.report);
  EXPECT_EQ(g.Q.root, I);
  for (const auto* m : {&g.plus, &g.plus_inv, &g.minus_inv})
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_EQ((*m)[i][j], i == j ? I : Z);
}

TEST(Gauss, SampleHandleReadsOffTheM11Line) {
  auto rep = rep_from_params(3, config("l1_flat.json"));
  auto M = op_handle_monodromy(rep.matrix(false), rep.matrix(true));
  ASSERT_TRUE(M[0][0].is_diagonal());
  auto g = gauss_decompose_operator(M);
  EXPECT_TRUE(g.report.passed()) << first_failure(g.report);
  EXPECT_TRUE(g.Q.root.is_diagonal());
  EXPECT_EQ(g.Q.root * g.Q.root, M[0][0]);
}

TEST(Gauss, NonDiagonalM11IsRejected) {
  const auto& f = CyclotomicField::get(3);
  auto I = SparseMatrix::identity(f, 2), Z = SparseMatrix(f, 2, 2);
  auto N = I;
  N.add(0, 1, rs(f, 1));
  Mat2<SparseMatrix> M = {{{N, Z}, {Z, I}}};
  EXPECT_THROW(gauss_decompose_operator(M), std::domain_error);
}

TEST(GenusRep, GenusOneIsTheIdentityAssembly) {
  auto l1 = rep_from_params(3, config("l1_flat.json"));
  auto g1 = build_genus_rep({l1});
  EXPECT_EQ(g1.dim, l1.dim);
  for (const auto& [id, m] : l1.gens)
    if (g1.has(id)) {
      EXPECT_EQ(g1.op(id), m) << generator_name(id, true);
    }
  EXPECT_TRUE(g1.has({1, Family::a11}));
}

TEST(GenusRep, GenusTwoRelations) {
  auto factors = handle_factors(3, 2, config("genus2.json"));
  auto rep = build_genus_rep(factors);
  EXPECT_EQ(rep.dim, 729);
  auto r = verify_genus_relations(rep);
  EXPECT_TRUE(r.passed()) << first_failure(r);
  const Check* cross = find_check(r, "A_1 with B_2 (cross-handle)");
  ASSERT_NE(cross, nullptr);
  EXPECT_TRUE(cross->ok);
  const Check* frob = find_check(r, "ordered product of handle Frobenius monodromies");
  ASSERT_NE(frob, nullptr);
  EXPECT_TRUE(frob->ok);
  auto I = rep.identity();
  for (int h = 1; h <= 2; ++h) {
    EXPECT_EQ(op_detq(rep.matrix(false, h)), I) << h;
    EXPECT_EQ(op_detq(rep.matrix(true, h)), I) << h;
  }
}

TEST(GenusRep, RejectsNonL1Factors) {
  const auto& f = CyclotomicField::get(3);
  auto w = build_weil_rep(3, {rs(f, 1), rs(f, 1)});
  EXPECT_THROW(build_genus_rep({w}), std::invalid_argument);
  EXPECT_THROW(build_genus_rep({}), std::invalid_argument);
}

TEST(HalfPowers, FlatSample) {
  auto rep = rep_from_params(3, config("l1_flat.json"));
  auto r = verify_half_powers(rep);
  EXPECT_TRUE(r.passed()) << first_failure(r);
  EXPECT_GT(r.data["half_power_lines_checked"].get<int>(), 0);
}

TEST(HalfPowers, MissingRootIsInformational) {
  auto rep = rep_from_params(3, config("l1_rho.json"));
  auto r = verify_half_powers(rep);
  EXPECT_TRUE(r.passed()) << first_failure(r);
}

TEST(Rho, L1Sample) {
  auto rep = rep_from_params(3, config("l1_rho.json"));
  auto r = rho_check(rep, 100, 1);
  EXPECT_TRUE(r.passed()) << first_failure(r);
  EXPECT_NE(find_check(r, "rho"), nullptr);
}

TEST(Rho, DeterministicForASeed) {
  auto rep = rep_from_params(3, config("l1_rho.json"));
  EXPECT_EQ(rho_check(rep, 20, 5).to_json(), rho_check(rep, 20, 5).to_json());
}
