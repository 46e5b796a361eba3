#pragma once

// The centre at a root of unity: p-th powers of the generators, the Frobenius matrices,
// the p-th powers of the monodromy entries and the single defining relation.

#include <qgraph/laurent.hpp>
#include <qgraph/ncpoly.hpp>
#include <qgraph/report.hpp>

#include <map>
#include <string>
#include <vector>

namespace qgraph {

using CentralPoly = LaurentPoly<RootScalar>;
template <class C>
using ClassicalMatrix = Mat2<LaurentPoly<C>>;

/// Inverse of a determinant-one matrix over a commutative ring.
template <class C>
ClassicalMatrix<C> unimodular_inverse(const ClassicalMatrix<C>& m) {
  ClassicalMatrix<C> r;
  r[0][0] = m[1][1];
  r[0][1] = -m[0][1];
  r[1][0] = -m[1][0];
  r[1][1] = m[0][0];
  return r;
}

template <class C>
LaurentPoly<C> det2(const ClassicalMatrix<C>& m) {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

/// Names of the central generators of one handle, in the order used by the Poisson tables.
inline const std::vector<Family>& central_families() {
  static const std::vector<Family> f = {Family::a11, Family::a12, Family::a21, Family::b11, Family::b12, Family::b21};
  return f;
}

/// x^p for a generator x, in root mode. Throws if the power is not central.
inline CentralPoly central_power(const PresentationPtr<RootScalar>& P, const GeneratorId& g) {
  auto x = P->image(g).pow(P->p());
  if (!x.is_central_form()) throw std::logic_error("p-th power of " + generator_name(g, true) + " is not central");
  return x.central_part();
}

/// Frobenius matrix of A_h or B_h: entries (m,n) != (2,2) are the p-th powers, (2,2) is fixed by det = 1.
inline ClassicalMatrix<RootScalar> frobenius_matrix(const PresentationPtr<RootScalar>& P, bool is_b, int h = 1) {
  ClassicalMatrix<RootScalar> m;
  m[0][0] = central_power(P, {h, entry_family(is_b, 1, 1)});
  m[0][1] = central_power(P, {h, entry_family(is_b, 1, 2)});
  m[1][0] = central_power(P, {h, entry_family(is_b, 2, 1)});
  m[1][1] = (CentralPoly::constant(P->central_size(), P->ctx().one()) + m[0][1] * m[1][0]) * m[0][0].inverse_monomial();
  return m;
}

/// M = BA^-1B^-1A of classical matrices.
template <class C>
ClassicalMatrix<C> classical_commutator(const ClassicalMatrix<C>& A, const ClassicalMatrix<C>& B) {
  return mat2_mul(mat2_mul(mat2_mul(B, unimodular_inverse(A)), unimodular_inverse(B)), A);
}

/// Commutators of the central generators (p-th powers, and M11^p, M12^p, M21^p) with every generator.
inline Report verify_center(int p) {
  Report r;
  r.command = "verify-center";
  r.p = p;
  r.genus = 1;
  auto P = Presentation<RootScalar>::make(RootContext(p));
  std::vector<std::pair<std::string, NcPoly<RootScalar>>> central;
  for (Family f : central_families()) {
    central.emplace_back(family_name(f) + "^p", P->image({1, f}).pow(p));
  }
  central.emplace_back("a11^-p", P->image({1, Family::a11inv}).pow(p));
  central.emplace_back("b11^-p", P->image({1, Family::b11inv}).pow(p));
  auto M = monodromy(P);
  central.emplace_back("M11^p", M[0][0].pow(p));
  central.emplace_back("M12^p", M[0][1].pow(p));
  central.emplace_back("M21^p", M[1][0].pow(p));
  central.emplace_back("M11^-p", NcPoly<RootScalar>::central(P, P->mu_index() - P->word_size()));
  std::vector<Family> gens = {Family::a11, Family::a12, Family::a21, Family::a22, Family::b11, Family::b12, Family::b21,
                              Family::b22, Family::a11inv, Family::b11inv, Family::X1, Family::X2, Family::X3, Family::X4};
  for (const auto& [name, z] : central) {
    bool ok = true;
    std::string bad;
    for (Family g : gens) {
      auto c = commutator(z, P->image({1, g}));
      if (!c.is_zero()) {
        ok = false;
        bad += family_name(g) + " ";
      }
    }
    r.add("[" + name + ", generators] = 0", ok, ok ? "0" : "nonzero with " + bad);
  }
  auto minv = m11_inverse(P);
  r.add("M11 * M11^-1 = 1 (localization)", (M[0][0] * minv).central_part() == CentralPoly::constant(P->central_size(), P->ctx().one()) &&
                                                (M[0][0] * minv) == NcPoly<RootScalar>::one(P));
  return r;
}

/// The p-th powers of the monodromy entries against BA^-1B^-1A of the Frobenius matrices,
/// the staged factorization through C = B^-1 A and D = B A^-1, and the X-forms of M and M^p.
inline Report verify_prop4(int p) {
  Report r;
  r.command = "prop4";
  r.p = p;
  r.genus = 1;
  auto P = Presentation<RootScalar>::make(RootContext(p));
  const int nc = P->central_size();
  auto one = CentralPoly::constant(nc, P->ctx().one());
  auto FA = frobenius_matrix(P, false), FB = frobenius_matrix(P, true);
  auto Mcl = classical_commutator(FA, FB);
  auto M = monodromy(P);
  const char* names[2][2] = {{"11", "12"}, {"21", "22"}};
  CentralPoly Mp[2][2];
  for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}}) {
    Stopwatch sw;
    auto x = M[i][j].pow(p);
    bool central = x.is_central_form();
    bool ok = central && x.central_part() == Mcl[i][j];
    if (central) Mp[i][j] = x.central_part();
    r.add(std::string("M") + names[i][j] + "^p = (BA^-1B^-1A)_" + names[i][j], ok,
          ok ? "0" : (central ? (x.central_part() - Mcl[i][j]).str(P->central_names()) : "not central"), false, sw.seconds());
  }

  // Staged: C = B^-1 A, D = B A^-1.
  auto A = generator_matrix(P, false), B = generator_matrix(P, true);
  auto C = mat2_mul(qmat_inverse(B), A), D = mat2_mul(B, qmat_inverse(A));
  auto Ccl = mat2_mul(unimodular_inverse(FB), FA), Dcl = mat2_mul(FB, unimodular_inverse(FA));
  CentralPoly c[2][2], d[2][2];
  bool c_ok = true, d_ok = true;
  for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}}) {
    auto cp = C[i][j].pow(p), dp = D[i][j].pow(p);
    if (!cp.is_central_form() || !dp.is_central_form()) {
      c_ok = d_ok = false;
      continue;
    }
    c[i][j] = cp.central_part();
    d[i][j] = dp.central_part();
    c_ok = c_ok && c[i][j] == Ccl[i][j];
    d_ok = d_ok && d[i][j] == Dcl[i][j];
  }
  r.add("c_ij^p = (B^-1 A)_ij for (i,j) != (2,2)", c_ok);
  r.add("d_ij^p = (B A^-1)_ij for (i,j) != (2,2)", d_ok);
  if (c_ok && d_ok) {
    // M = DC entrywise; (1,2) multiplied through by c11 and (2,1) by d11 to avoid dividing.
    bool e11 = Mp[0][0] == d[0][0] * c[0][0] + d[0][1] * c[1][0];
    bool e12 = c[0][0] * Mp[0][1] == d[0][0] * c[0][1] * c[0][0] + d[0][1] * (one + c[0][1] * c[1][0]);
    bool e21 = d[0][0] * Mp[1][0] == d[1][0] * c[0][0] * d[0][0] + (one + d[0][1] * d[1][0]) * c[1][0];
    r.add("M^p = D^p C^p (entries 11, 12, 21)", e11 && e12 && e21);
  } else {
    r.add("M^p = D^p C^p (entries 11, 12, 21)", false, "C or D powers not central");
  }

  // X-form of M (formal q) and of M^p.
  {
    auto F = Presentation<FormalScalar>::make(FormalContext{});
    auto Mf = monodromy(F);
    auto X = [&](int i) { return F->image({1, static_cast<Family>(static_cast<int>(Family::X1) + i - 1)}); };
    auto a = [&](int e) { return NcPoly<FormalScalar>::slot_power(F, 1, 0, e); };
    auto b = [&](int e) { return NcPoly<FormalScalar>::slot_power(F, 1, 1, e); };
    auto o = NcPoly<FormalScalar>::one(F);
    auto q = [](int k) { return FormalScalar::q_pow(k); };
    auto m11 = m11_x_form(F);
    auto m11_alt = o + X(2) * X(1) + X(1) * X(4) + X(3) * X(4) + X(3) * X(2) * X(1) * X(4);
    auto m12 = q(-2) * (-((o + X(1) * X(2)) * X(3) + X(1))) + q(-2) * (X(1) * m11 * b(-2)) + X(3) * m11 * a(2) * b(-2);
    auto m21 = q(-2) * (-(X(2) * (o + X(3) * X(4)) + X(4))) + X(4) * m11 * a(-2) + q(2) * (X(2) * m11 * a(-2) * b(2));
    r.add("M11 = q^-2(1 + X1X2 + X1X4 + X3X4 + X1X2X3X4)", Mf[0][0] == m11);
    r.add("M11 = 1 + X2X1 + X1X4 + X3X4 + X3X2X1X4", Mf[0][0] == m11_alt);
    r.add("M12 X-form", Mf[0][1] == m12);
    r.add("M21 X-form", Mf[1][0] == m21);
  }
  {
    auto Z = [&](int i) { return CentralPoly::variable(nc, 2 + i - 1, P->ctx().one()); };
    auto al = [&](int e) { return CentralPoly::variable(nc, 0, P->ctx().one(), e); };
    auto be = [&](int e) { return CentralPoly::variable(nc, 1, P->ctx().one(), e); };
    auto m11p = one + Z(1) * Z(2) + Z(1) * Z(4) + Z(3) * Z(4) + Z(1) * Z(2) * Z(3) * Z(4);
    auto m12p = -((one + Z(1) * Z(2)) * Z(3)) - Z(1) + Z(1) * m11p * be(-2) + Z(3) * m11p * al(2) * be(-2);
    auto m21p = -(Z(2) * (one + Z(3) * Z(4))) - Z(4) + Z(4) * m11p * al(-2) + Z(2) * m11p * al(-2) * be(2);
    r.add("M11^p = 1 + Z1Z2 + Z1Z4 + Z3Z4 + Z1Z2Z3Z4", Mp[0][0] == m11p);
    r.add("M12^p X-form", Mp[0][1] == m12p);
    r.add("M21^p X-form", Mp[1][0] == m21p);
  }
  return r;
}

/// mu * (BA^-1B^-1A)_11 = 1 in the central coefficient ring (genus 1).
inline Report verify_single_relation(int p) {
  Report r;
  r.command = "single-relation";
  r.p = p;
  r.genus = 1;
  auto P = Presentation<RootScalar>::make(RootContext(p));
  auto Mcl = classical_commutator(frobenius_matrix(P, false), frobenius_matrix(P, true));
  auto lhs = NcPoly<RootScalar>::central(P, P->mu_index() - P->word_size()) * NcPoly<RootScalar>::from_central(P, Mcl[0][0]);
  r.add("mu (BA^-1B^-1A)_11 = 1", lhs == NcPoly<RootScalar>::one(P), lhs.str());
  return r;
}

}  // namespace qgraph
