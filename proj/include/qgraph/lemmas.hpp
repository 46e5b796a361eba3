#pragma once

// The three rewriting lemmas used for the centre, instantiated on the X-presentation.

#include <qgraph/ncpoly.hpp>
#include <qgraph/report.hpp>

#include <string>
#include <vector>

namespace qgraph {

/// Gaussian binomial in t = q^2: [m choose k] with [n]_q = 1 + q^2 + ... + q^{2(n-1)}.
inline FormalScalar q_binomial(int m, int k) {
  if (k < 0 || k > m) return {};
  std::vector<std::vector<FormalScalar>> c(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    c[i].assign(static_cast<std::size_t>(i) + 1, FormalScalar());
    c[i][0] = FormalScalar(1);
    c[i][i] = FormalScalar(1);
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + FormalScalar::q_pow(2 * j) * c[i - 1][j];
  }
  return c[m][k];
}

/// (n)_q! / (n-k)_q!
inline FormalScalar q_falling(int n, int k) {
  FormalScalar s(1);
  for (int j = n - k + 1; j <= n; ++j) s *= q_integer(j);
  return s;
}

/// Z^m W^n = sum_k q^{2(m-k)(n-k)} c^k W^{n-k} Z^{m-k} (n)!/(n-k)! [m choose k], m <= n,
/// with Z = X1, W = X2, c = q^2 - 1 (so that ZW = q^2 WZ + c). Returns the residual.
inline NcPoly<FormalScalar> lemma1_residual(const PresentationPtr<FormalScalar>& P, int m, int n) {
  auto Z = P->image({1, Family::X1}), W = P->image({1, Family::X2});
  FormalScalar c = FormalScalar::q_pow(2) - FormalScalar(1);
  NcPoly<FormalScalar> rhs(P);
  FormalScalar ck(1);
  for (int k = 0; k <= m; ++k) {
    FormalScalar coef = FormalScalar::q_pow(2 * (m - k) * (n - k)) * ck * q_falling(n, k) * q_binomial(m, k);
    rhs += coef * (W.pow(n - k) * Z.pow(m - k));
    ck *= c;
  }
  return Z.pow(m) * W.pow(n) - rhs;
}

inline Report verify_lemma1(int max_n = 4) {
  Report r;
  r.command = "lemma1";
  auto P = Presentation<FormalScalar>::make(FormalContext{});
  auto Z = P->image({1, Family::X1}), W = P->image({1, Family::X2});
  NcPoly<FormalScalar> c = NcPoly<FormalScalar>::scalar(P, FormalScalar::q_pow(2) - FormalScalar(1));
  r.add("lemma1 hypothesis ZW = q^2 WZ + c", (Z * W - FormalScalar::q_pow(2) * (W * Z) - c).is_zero());
  bool all = true;
  for (int n = 0; n <= max_n; ++n)
    for (int m = 0; m <= n; ++m) {
      auto res = lemma1_residual(P, m, n);
      if (!res.is_zero()) {
        all = false;
        r.add("lemma1 m=" + std::to_string(m) + " n=" + std::to_string(n), false, res.str());
      }
    }
  r.add("lemma1 all m <= n <= " + std::to_string(max_n), all);
  return r;
}

/// (a + b)^p = a^p + b^p for a = a11^2, b = b11 (a b = q^2 b a).
inline Report verify_lemma2(int p) {
  Report r;
  r.command = "lemma2";
  r.p = p;
  auto P = Presentation<RootScalar>::make(RootContext(p));
  auto a = P->image({1, Family::a11}).pow(2), b = P->image({1, Family::b11});
  r.add("lemma2 hypothesis ab = q^2 ba", (a * b - P->ctx().q_pow(2) * (b * a)).is_zero());
  auto res = (a + b).pow(p) - a.pow(p) - b.pow(p);
  r.add("lemma2 (a+b)^p - a^p - b^p, p=" + std::to_string(p), res.is_zero(), res.is_zero() ? "0" : res.str());
  return r;
}

/// (ZW - c)^p = Z^p W^p - c^p under ZW - c = q^-2 (WZ - c). Two instantiations: Z = X2, W = X1,
/// c = -1 (the hypothesis as printed) and Z = X1, W = X2, c = -1 (the same with q -> q^-1).
inline Report verify_lemma3(int p) {
  Report r;
  r.command = "lemma3";
  r.p = p;
  auto F = Presentation<FormalScalar>::make(FormalContext{});
  auto P = Presentation<RootScalar>::make(RootContext(p));
  {
    auto Z = F->image({1, Family::X2}), W = F->image({1, Family::X1});
    auto one = NcPoly<FormalScalar>::one(F);
    auto hyp = (Z * W + one) - FormalScalar::q_pow(-2) * (W * Z + one);
    r.add("lemma3 hypothesis Z=X2 W=X1 c=-1", hyp.is_zero());
    auto hyp2 = (W * Z + one) - FormalScalar::q_pow(2) * (Z * W + one);
    r.add("lemma3 hypothesis Z=X1 W=X2 c=-1 (q -> q^-1)", hyp2.is_zero());
  }
  auto one = NcPoly<RootScalar>::one(P);
  auto X1 = P->image({1, Family::X1}), X2 = P->image({1, Family::X2});
  auto sign = P->ctx().from(Rational(p % 2 == 0 ? 1 : -1));  // c^p with c = -1
  auto res1 = (X2 * X1 + one).pow(p) - (X2.pow(p) * X1.pow(p) - NcPoly<RootScalar>::scalar(P, sign));
  r.add("lemma3 (X2X1+1)^p = X2^p X1^p + 1, p=" + std::to_string(p), res1.is_zero(), res1.is_zero() ? "0" : res1.str());
  auto res2 = (X1 * X2 + one).pow(p) - (X1.pow(p) * X2.pow(p) - NcPoly<RootScalar>::scalar(P, sign));
  r.add("lemma3 (1+X1X2)^p = 1 + X1^p X2^p, p=" + std::to_string(p), res2.is_zero(), res2.is_zero() ? "0" : res2.str());
  return r;
}

}  // namespace qgraph
