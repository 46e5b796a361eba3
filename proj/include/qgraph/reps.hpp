#pragma once

// Exact finite-dimensional representations at q = zeta_p: the two p^2-dimensional families of
// the X-algebra, the p-dimensional Weil representation and their p^3-dimensional tensor
// product, on which the (a,b) generators act through the X-form images.

#include <qgraph/appendix.hpp>
#include <qgraph/center.hpp>
#include <qgraph/matrix.hpp>
#include <qgraph/relations.hpp>
#include <qgraph/report.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgraph {

// ---------------------------------------------------------------------------
// Parameters

struct RepParams1 {
  RootScalar x1, x4, y2, y3, z2, z3;
};
struct RepParams2 {
  RootScalar x1, x4, b1, b2, c_last;  // c_last is c_{p-1}
};
struct WeilParams {
  RootScalar alpha11, beta11;
};

/// An integer, a string "n/d" or "c*q^k" (also "q", "-q^k"), or an array of rational strings
/// (coefficients in the power basis of zeta).
inline RootScalar parse_root_scalar(const nlohmann::json& j, const CyclotomicField& f) {
  if (j.is_number_integer()) return RootScalar(f, Rational(j.get<long long>()));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    auto qpos = s.find('q');
    if (qpos == std::string::npos) return RootScalar(f, Rational::parse(s));
    std::string c = s.substr(0, qpos);
    if (!c.empty() && c.back() == '*') c.pop_back();
    Rational coef = c.empty() || c == "+" ? Rational(1) : c == "-" ? Rational(-1) : Rational::parse(c);
    long k = 1;
    if (qpos + 1 < s.size()) {
      if (s[qpos + 1] != '^') throw std::invalid_argument("cannot parse scalar '" + s + "'");
      std::size_t used = 0;
      k = std::stol(s.substr(qpos + 2), &used);
      if (qpos + 2 + used != s.size()) throw std::invalid_argument("cannot parse scalar '" + s + "'");
    }
    return RootScalar::zeta_pow(f, k, coef);
  }
  if (j.is_array()) {
    if (static_cast<int>(j.size()) > f.degree()) throw std::invalid_argument("too many cyclotomic coefficients");
    RootScalar::Coeffs c(static_cast<std::size_t>(f.degree()));
    for (std::size_t i = 0; i < j.size(); ++i)
      c[i] = j[i].is_string() ? Rational::parse(j[i].get<std::string>()) : Rational(j[i].get<long long>());
    return RootScalar(f, c);
  }
  throw std::invalid_argument("scalar must be an integer, a rational string or a coefficient array");
}

inline nlohmann::json root_scalar_json(const RootScalar& s) {
  if (s.is_rational()) return s.rational_part().str();
  auto j = nlohmann::json::array();
  for (const auto& c : s.coeffs()) j.push_back(c.str());
  return j;
}

/// Square root in Q(zeta_p) of e = zeta^j * c: c^{1/2} zeta^{j(p+1)/2}, where c is a rational
/// square or the square of `hint`.
inline std::optional<RootScalar> sqrt_in_field(const RootScalar& e, const std::optional<RootScalar>& hint = std::nullopt) {
  const CyclotomicField& f = *e.field();
  const int p = f.order();
  if (e.is_zero()) return e;
  for (int j = 0; j < p; ++j) {
    RootScalar y = e * RootScalar::zeta_pow(f, -j);
    RootScalar branch = RootScalar::zeta_pow(f, static_cast<long>(j) * ((p + 1) / 2));
    if (hint && y == *hint * *hint) return *hint * branch;
    if (!y.is_rational()) continue;
    mpq_class r = y.rational_part().to_mpq();
    if (sgn(r) <= 0) continue;
    mpz_class n = r.get_num(), d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) continue;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return RootScalar(f, Rational(mpq_class(sn, sd))) * branch;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Representation

struct Representation {
  std::string kind;  // "x-family1", "x-family2", "weil", "l1", "genus"
  int p = 0;
  int genus = 1;
  int dim = 0;
  const CyclotomicField* field = nullptr;
  std::map<GeneratorId, SparseMatrix> gens;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();

  bool has(const GeneratorId& g) const { return gens.count(g) != 0; }
  const SparseMatrix& op(const GeneratorId& g) const {
    auto it = gens.find(g);
    if (it == gens.end()) throw std::out_of_range("representation has no image for " + generator_name(g, true));
    return it->second;
  }
  SparseMatrix identity() const { return SparseMatrix::identity(*field, dim); }
  SparseMatrix zero() const { return SparseMatrix(*field, dim, dim); }
  RootScalar scalar(const Rational& r) const { return RootScalar(*field, r); }
  RootScalar q_pow(int k) const { return RootScalar::zeta_pow(*field, k); }
  Mat2<SparseMatrix> matrix(bool is_b, int h = 1) const {
    Mat2<SparseMatrix> m;
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c) m[r - 1][c - 1] = op({h, entry_family(is_b, r, c)});
    return m;
  }
};

inline Mat2<SparseMatrix> op_mul(const Mat2<SparseMatrix>& x, const Mat2<SparseMatrix>& y) { return mat2_mul(x, y); }

/// Inverse of an operator matrix with quantum determinant 1.
inline Mat2<SparseMatrix> op_qinverse(const Mat2<SparseMatrix>& m) {
  const CyclotomicField& f = m[0][0].field();
  RootScalar q2 = RootScalar::zeta_pow(f, 2), one(f, Rational(1));
  Mat2<SparseMatrix> r;
  r[0][0] = q2 * m[1][1] + (one - q2) * m[0][0];
  r[0][1] = -(q2 * m[0][1]);
  r[1][0] = -(q2 * m[1][0]);
  r[1][1] = m[0][0];
  return r;
}

inline SparseMatrix op_detq(const Mat2<SparseMatrix>& m) {
  RootScalar q2 = RootScalar::zeta_pow(m[0][0].field(), 2);
  return m[0][0] * m[1][1] - q2 * (m[1][0] * m[0][1]);
}

/// Monodromy q^-3 B A^-1 B^-1 A of one handle.
inline Mat2<SparseMatrix> op_handle_monodromy(const Mat2<SparseMatrix>& A, const Mat2<SparseMatrix>& B) {
  auto M = op_mul(op_mul(op_mul(B, op_qinverse(A)), op_qinverse(B)), A);
  RootScalar s = RootScalar::zeta_pow(A[0][0].field(), -3);
  for (auto& row : M)
    for (auto& e : row) e = s * e;
  return M;
}

namespace detail {

/// Resolves Psi(k, l) with out-of-range indices via Psi(k+p, l) = x1 Psi(k, l), Psi(k, l+p) = x4 Psi(k, l).
struct Wrap2 {
  int p;
  RootScalar x1, x4;
  std::pair<RootScalar, int> operator()(int k, int l) const {
    const CyclotomicField& f = *x1.field();
    RootScalar c(f, Rational(1));
    while (k >= p) {
      c *= x1;
      k -= p;
    }
    while (k < 0) {
      if (x1.is_zero()) throw std::domain_error("wraparound below 0 needs x1 != 0");
      c = c / x1;
      k += p;
    }
    while (l >= p) {
      c *= x4;
      l -= p;
    }
    while (l < 0) {
      if (x4.is_zero()) throw std::domain_error("wraparound below 0 needs x4 != 0");
      c = c / x4;
      l += p;
    }
    return {c, k * p + l};
  }
};

inline RootScalar pow_rs(const RootScalar& x, int n) {
  RootScalar r(*x.field(), Rational(1));
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Builders

/// Family 1: X1 Psi(k,l) = Psi(k+1,l), X2, X3 with the (y, z) terms, X4 Psi(k,l) = q^-2k Psi(k,l+1).
inline Representation build_x_rep1(int p, const RepParams1& P) {
  const CyclotomicField& f = CyclotomicField::get(p);
  auto q = [&](int k) { return RootScalar::zeta_pow(f, k); };
  RootScalar one(f, Rational(1)), zero(f, Rational());
  RootScalar Y2 = P.y2 * P.x1 + one, Y3 = P.y3 * P.x4 + one;
  if ((Y2 * Y3).is_zero()) throw std::invalid_argument("family 1 constraint violated: (y2 x1 + 1)(y3 x4 + 1) != 0");
  if (!(P.z2 * P.z3).is_zero()) throw std::invalid_argument("family 1 constraint violated: z2 z3 = 0");
  if (!(one + q(-2) * P.z3 * Y2 + q(2) * P.z2 * Y3).is_zero())
    throw std::invalid_argument("family 1 constraint violated: 1 + q^-2 z3 (y2 x1 + 1) + q^2 z2 (y3 x4 + 1) = 0");
  const int n = p * p;
  detail::Wrap2 wrap{p, P.x1, P.x4};
  SparseMatrix X1(f, n, n), X2(f, n, n), X3(f, n, n), X4(f, n, n);
  auto put = [&](SparseMatrix& m, int src, const RootScalar& c, int k, int l) {
    auto [w, idx] = wrap(k, l);
    m.add(idx, src, c * w);
  };
  for (int k = 0; k < p; ++k)
    for (int l = 0; l < p; ++l) {
      int s = k * p + l;
      put(X1, s, one, k + 1, l);
      // (y2 x1 + 1 - q^2k) Psi(k-1, l); at k = 0 the factor y2 x1 meets x1^-1 from the wrap.
      if (k == 0)
        X2.add((p - 1) * p + l, s, P.y2);
      else
        put(X2, s, q(-2 * k) * (Y2 - q(2 * k)), k - 1, l);
      put(X2, s, P.z2 * q(-2 * (k + l)), k, l + 1);
      if (l == 0)
        X3.add(k * p + p - 1, s, q(2 * k) * P.y3);
      else
        put(X3, s, q(2 * (k + l)) * (Y3 - q(-2 * l)), k, l - 1);
      put(X3, s, P.z3 * q(2 * k), k + 1, l);
      put(X4, s, q(-2 * k), k, l + 1);
    }
  Representation r;
  r.kind = "x-family1";
  r.p = p;
  r.dim = n;
  r.field = &f;
  r.gens[{1, Family::X1}] = X1;
  r.gens[{1, Family::X2}] = X2;
  r.gens[{1, Family::X3}] = X3;
  r.gens[{1, Family::X4}] = X4;
  r.params = {{"x1", root_scalar_json(P.x1)}, {"x4", root_scalar_json(P.x4)}, {"y2", root_scalar_json(P.y2)},
              {"y3", root_scalar_json(P.y3)}, {"z2", root_scalar_json(P.z2)}, {"z3", root_scalar_json(P.z3)}};
  return r;
}

/// Family 2, with Psi(p+k-1, p+l-2) resolved by the wrap rules.
inline Representation build_x_rep2(int p, const RepParams2& P, bool enforce_constraint = true) {
  const CyclotomicField& f = CyclotomicField::get(p);
  auto q = [&](int k) { return RootScalar::zeta_pow(f, k); };
  RootScalar one(f, Rational(1));
  if ((P.x1 * P.x4 * P.b1 * P.b2 * P.c_last).is_zero())
    throw std::invalid_argument("family 2 constraint violated: x1 x4 b1 b2 c_{p-1} != 0");
  if (enforce_constraint && !(one + q(10) * P.x1 * P.x4 * P.b2 * P.c_last).is_zero())
    throw std::invalid_argument("family 2 constraint violated: 1 + q^10 x1 x4 b2 c_{p-1} = 0");
  const int n = p * p;
  detail::Wrap2 wrap{p, P.x1, P.x4};
  SparseMatrix X1(f, n, n), X2(f, n, n), X3(f, n, n), X4(f, n, n);
  auto put = [&](SparseMatrix& m, int src, const RootScalar& c, int k, int l) {
    auto [w, idx] = wrap(k, l);
    m.add(idx, src, c * w);
  };
  for (int k = 0; k < p; ++k)
    for (int l = 0; l < p; ++l) {
      int s = k * p + l;
      put(X1, s, one, k + 1, l);
      put(X2, s, -one, k - 1, l);
      put(X2, s, P.b1 * q(-2 * (k + l)), k, l + 1);
      put(X2, s, P.b2 * q(-2 * (k + 2 * l)), k + 1, l + 2);
      put(X3, s, -q(2 * k), k, l - 1);
      put(X3, s, P.c_last * q(2 * (k + 2 * l)), p + k - 1, p + l - 2);
      put(X4, s, q(-2 * k), k, l + 1);
    }
  Representation r;
  r.kind = "x-family2";
  r.p = p;
  r.dim = n;
  r.field = &f;
  r.gens[{1, Family::X1}] = X1;
  r.gens[{1, Family::X2}] = X2;
  r.gens[{1, Family::X3}] = X3;
  r.gens[{1, Family::X4}] = X4;
  r.params = {{"x1", root_scalar_json(P.x1)}, {"x4", root_scalar_json(P.x4)}, {"b1", root_scalar_json(P.b1)},
              {"b2", root_scalar_json(P.b2)}, {"c_last", root_scalar_json(P.c_last)}};
  return r;
}

/// a11 Psi(m) = Psi(m+1), b11 Psi(m) = beta11 q^-m Psi(m), Psi(m+p) = alpha11 Psi(m).
inline Representation build_weil_rep(int p, const WeilParams& W) {
  const CyclotomicField& f = CyclotomicField::get(p);
  if (W.alpha11.is_zero() || W.beta11.is_zero()) throw std::invalid_argument("Weil parameters must be nonzero");
  RootScalar one(f, Rational(1));
  SparseMatrix a(f, p, p), ai(f, p, p), b(f, p, p), bi(f, p, p);
  for (int m = 0; m < p; ++m) {
    if (m + 1 < p)
      a.add(m + 1, m, one);
    else
      a.add(0, m, W.alpha11);
    if (m > 0)
      ai.add(m - 1, m, one);
    else
      ai.add(p - 1, m, one / W.alpha11);
    RootScalar e = W.beta11 * RootScalar::zeta_pow(f, -m);
    b.add(m, m, e);
    bi.add(m, m, one / e);
  }
  Representation r;
  r.kind = "weil";
  r.p = p;
  r.dim = p;
  r.field = &f;
  r.gens[{1, Family::a11}] = a;
  r.gens[{1, Family::a11inv}] = ai;
  r.gens[{1, Family::b11}] = b;
  r.gens[{1, Family::b11inv}] = bi;
  r.params = {{"alpha11", root_scalar_json(W.alpha11)}, {"beta11", root_scalar_json(W.beta11)}};
  return r;
}

/// Slot operators of one handle: a11^{+-1}, b11^{+-1}, X1..X4.
struct SlotOps {
  std::optional<SparseMatrix> a, ainv, b, binv;
  std::array<std::optional<SparseMatrix>, 4> X;
};

/// Evaluate a formal X-form element on slot operators (one handle).
inline SparseMatrix eval_formal(const NcPoly<FormalScalar>& x, const SlotOps& s, const CyclotomicField& f, int dim) {
  const int p = f.order();
  SparseMatrix r(f, dim, dim);
  std::map<std::pair<int, int>, SparseMatrix> cache;
  auto power = [&](int slot, int e) -> const SparseMatrix& {
    auto key = std::make_pair(slot, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const std::optional<SparseMatrix>* base = nullptr;
    if (slot == 0) base = e > 0 ? &s.a : &s.ainv;
    if (slot == 1) base = e > 0 ? &s.b : &s.binv;
    if (slot >= 2) base = &s.X[static_cast<std::size_t>(slot - 2)];
    if (!base->has_value()) throw std::invalid_argument("representation lacks an operator needed by the element");
    return cache.emplace(key, (*base)->pow(e > 0 ? e : -e)).first->second;
  };
  for (const auto& [k, c] : x.terms()) {
    for (std::size_t i = kSlotsPerHandle; i < k.size(); ++i)
      if (k[i] != 0) throw std::invalid_argument("eval_formal: element has central symbols");
    SparseMatrix t = SparseMatrix::scalar(f, dim, specialize(c, p));
    for (int i = 0; i < kSlotsPerHandle; ++i)
      if (k[i] != 0) t = t * power(i, k[i]);
    r += t;
  }
  return r;
}

namespace detail {

/// The printed (a,b) action lines on Psi(k,l,m), family-1 parameters.
inline std::map<Family, SparseMatrix> explicit_l1_lines(int p, const RepParams1& P, const WeilParams& W) {
  const CyclotomicField& f = CyclotomicField::get(p);
  auto q = [&](int k) { return RootScalar::zeta_pow(f, k); };
  RootScalar one(f, Rational(1));
  RootScalar Y2 = P.y2 * P.x1 + one, Y3 = P.y3 * P.x4 + one;
  const RootScalar& be = W.beta11;
  const int n = p * p * p;
  std::map<Family, SparseMatrix> out;
  for (Family fam : {Family::a11, Family::b11, Family::a12, Family::a21, Family::b12, Family::b21}) out.emplace(fam, SparseMatrix(f, n, n));
  auto idx = [&](int k, int l, int m, RootScalar& c) {
    while (m >= p) {
      c *= W.alpha11;
      m -= p;
    }
    while (m < 0) {
      c = c / W.alpha11;
      m += p;
    }
    Wrap2 w{p, P.x1, P.x4};
    auto [wc, kl] = w(k, l);
    c *= wc;
    return kl * p + m;
  };
  auto put = [&](Family fam, int src, RootScalar c, int k, int l, int m) {
    int t = idx(k, l, m, c);
    out.at(fam).add(t, src, c);
  };
  // (y2 x1 + 1 - q^2k) Psi(k-1, ...): at k = 0 the factor is y2 x1 and the wrap contributes x1^-1.
  auto down_k = [&](int k, int l, int m, RootScalar pre, Family fam, int src) {
    if (k == 0) {
      RootScalar c = pre * P.y2;
      int t = idx(p - 1, l, m, c);
      out.at(fam).add(t, src, c);
    } else {
      put(fam, src, pre * (Y2 - q(2 * k)), k - 1, l, m);
    }
  };
  auto down_l = [&](int k, int l, int m, RootScalar pre, Family fam, int src) {
    if (l == 0) {
      RootScalar c = pre * P.y3;
      int t = idx(k, p - 1, m, c);
      out.at(fam).add(t, src, c);
    } else {
      put(fam, src, pre * (Y3 - q(-2 * l)), k, l - 1, m);
    }
  };
  RootScalar bi = one / be;
  for (int k = 0; k < p; ++k)
    for (int l = 0; l < p; ++l)
      for (int m = 0; m < p; ++m) {
        int s = (k * p + l) * p + m;
        put(Family::a11, s, one, k, l, m + 1);
        put(Family::b11, s, be * q(-m), k, l, m);
        put(Family::a12, s, bi * bi * q(2 * m), k + 1, l, m + 1);
        put(Family::a12, s, bi * bi * P.z3 * q(2 * (m + k + 1)), k + 1, l, m + 3);
        down_l(k, l, m + 3, bi * bi * q(2 * (m + k + l + 1)), Family::a12, s);
        down_k(k, l, m - 1, be * be * q(2 * (m - k)), Family::a21, s);
        put(Family::a21, s, be * be * P.z2 * q(2 * (m - k - l)), k, l + 1, m - 1);
        down_l(k, l, m + 2, bi * q(m + 2 * (k + l)), Family::b12, s);
        put(Family::b12, s, bi * P.z3 * q(m + 2 * k), k + 1, l, m + 2);
        down_k(k, l, m - 2, be * be * be * q(3 * m - 2 * k + 2), Family::b21, s);
        put(Family::b21, s, be * be * be * q(3 * m - 2 * (k + l) + 2), k, l + 1, m - 2);
        put(Family::b21, s, be * q(m - 2 * k), k, l + 1, m - 2);
      }
  return out;
}

}  // namespace detail

inline Representation build_l1_rep_from(const Representation& X, const Representation& Wr, const RepParams1* printed) {
  const CyclotomicField& f = *X.field;
  const int p = X.p;
  const int n = X.dim * Wr.dim;
  auto Ix = SparseMatrix::identity(f, X.dim), Iw = SparseMatrix::identity(f, Wr.dim);
  SlotOps s;
  s.a = kron(Ix, Wr.op({1, Family::a11}));
  s.ainv = kron(Ix, Wr.op({1, Family::a11inv}));
  s.b = kron(Ix, Wr.op({1, Family::b11}));
  s.binv = kron(Ix, Wr.op({1, Family::b11inv}));
  for (int i = 0; i < 4; ++i) s.X[i] = kron(X.op({1, static_cast<Family>(static_cast<int>(Family::X1) + i)}), Iw);
  auto F = Presentation<FormalScalar>::make(FormalContext{});
  Representation r;
  r.kind = "l1";
  r.p = p;
  r.dim = n;
  r.field = &f;
  for (Family fam : {Family::a11, Family::a12, Family::a21, Family::a22, Family::b11, Family::b12, Family::b21, Family::b22,
                     Family::a11inv, Family::b11inv})
    r.gens[{1, fam}] = eval_formal(F->image({1, fam}), s, f, n);
  for (int i = 0; i < 4; ++i) r.gens[{1, static_cast<Family>(static_cast<int>(Family::X1) + i)}] = *s.X[i];
  r.params = X.params;
  for (const auto& [k, v] : Wr.params.items()) r.params[k] = v;
  r.params["x_family"] = X.kind;
  if (printed) {
    WeilParams W{parse_root_scalar(Wr.params["alpha11"], f), parse_root_scalar(Wr.params["beta11"], f)};
    auto lines = detail::explicit_l1_lines(p, *printed, W);
    nlohmann::ordered_json cmp = nlohmann::ordered_json::object();
    for (const auto& [fam, m] : lines) {
      auto diff = r.op({1, fam}) - m;
      cmp[family_name(fam)] = diff.is_zero() ? "match" : "differs (" + diff.summary() + ")";
    }
    r.notes["printed_action_lines"] = cmp;
  }
  return r;
}

/// p^3-dimensional representation on Psi(k,l,m) = (X-family-1 basis) (x) (Weil basis). The
/// (a,b) generators act through their X-form images (the composition oracle); the printed
/// action lines are built separately and compared, and the comparison is kept in `notes`.
inline Representation build_l1_rep(int p, const RepParams1& P, const WeilParams& W) {
  auto X = build_x_rep1(p, P);
  auto Wr = build_weil_rep(p, W);
  return build_l1_rep_from(X, Wr, &P);
}


// ---------------------------------------------------------------------------
// Relation checking on operators: relations are compiled into noncommuting symbolic expressions
// first, so each distinct operator product is computed once.

class SymExpr {
 public:
  using Word = std::vector<int>;
  SymExpr() = default;
  static SymExpr sym(int s, const RootScalar& one) {
    SymExpr e;
    e.t_.emplace(Word{s}, one);
    return e;
  }
  static SymExpr constant(const RootScalar& c) {
    SymExpr e;
    if (!c.is_zero()) e.t_.emplace(Word{}, c);
    return e;
  }
  const std::map<Word, RootScalar>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(const Word& w, const RootScalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = t_.try_emplace(w, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  friend SymExpr operator+(SymExpr a, const SymExpr& b) {
    for (const auto& [w, c] : b.t_) a.add(w, c);
    return a;
  }
  SymExpr operator-() const {
    SymExpr r(*this);
    for (auto& [w, c] : r.t_) c = -c;
    return r;
  }
  friend SymExpr operator-(const SymExpr& a, const SymExpr& b) { return a + (-b); }
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b) {
    SymExpr r;
    for (const auto& [wa, ca] : a.t_)
      for (const auto& [wb, cb] : b.t_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add(w, ca * cb);
      }
    return r;
  }
  friend SymExpr operator*(const RootScalar& s, const SymExpr& a) {
    SymExpr r;
    for (const auto& [w, c] : a.t_) r.add(w, s * c);
    return r;
  }

 private:
  std::map<Word, RootScalar> t_;
};

/// Operators indexed by symbol id, with memoized products of words.
class OperatorTable {
 public:
  OperatorTable(const CyclotomicField& f, int dim) : f_(&f), dim_(dim) {}

  int add(const std::string& name, SparseMatrix m) {
    auto it = index_.find(name);
    if (it != index_.end()) {
      ops_[it->second] = std::move(m);
      cache_.clear();
      return it->second;
    }
    int id = static_cast<int>(ops_.size());
    ops_.push_back(std::move(m));
    names_.push_back(name);
    index_[name] = id;
    return id;
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }
  int id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("unknown operator symbol '" + name + "'");
    return it->second;
  }
  SymExpr sym(const std::string& name) const { return SymExpr::sym(id(name), one()); }
  Mat2<SymExpr> sym_matrix(const std::string& prefix, const std::string& suffix = "") const {
    Mat2<SymExpr> m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m[r][c] = sym(prefix + std::to_string(r + 1) + std::to_string(c + 1) + suffix);
    return m;
  }
  RootScalar one() const { return RootScalar(*f_, Rational(1)); }
  const CyclotomicField& field() const { return *f_; }

  const SparseMatrix& word(const SymExpr::Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    if (w.empty()) return cache_.emplace(w, SparseMatrix::identity(*f_, dim_)).first->second;
    if (w.size() == 1) return ops_.at(static_cast<std::size_t>(w[0]));
    SymExpr::Word prefix(w.begin(), w.end() - 1);
    SparseMatrix m = word(prefix) * ops_.at(static_cast<std::size_t>(w.back()));
    return cache_.emplace(w, std::move(m)).first->second;
  }

  SparseMatrix eval(const SymExpr& e) {
    SparseMatrix r(*f_, dim_, dim_);
    for (const auto& [w, c] : e.terms()) r += c * word(w);
    return r;
  }

 private:
  const CyclotomicField* f_;
  int dim_;
  std::vector<SparseMatrix> ops_;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::map<SymExpr::Word, SparseMatrix> cache_;
};

/// Residual of the 16 component relations X^1 R_a Y^2 R_b = R_c Y^2 R_d X^1 for operator-matrix
/// symbols; names are prefix + "rc" + suffix.
inline std::pair<bool, std::string> check_pattern(OperatorTable& T, const std::array<SquareMatrix<RootScalar>, 4>& R,
                                                  const std::string& X, const std::string& Y, const std::string& xs = "",
                                                  const std::string& ys = "") {
  auto rel = compile_matrix_relation(R, T.sym_matrix(X, xs), T.sym_matrix(Y, ys), SymExpr());
  std::size_t bad = 0;
  std::string first;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    auto m = T.eval(rel[i]);
    if (!m.is_zero()) {
      if (bad == 0) first = ComponentRelation{static_cast<int>(i / 4), static_cast<int>(i % 4)}.label() + ": " + m.summary();
      ++bad;
    }
  }
  if (bad == 0) return {true, "0"};
  return {false, std::to_string(bad) + " of 16 components nonzero, first " + first};
}

inline std::pair<bool, std::string> check_pattern(OperatorTable& T, RelationPattern pat, const std::string& X,
                                                  const std::string& Y, const std::string& xs = "",
                                                  const std::string& ys = "") {
  return check_pattern(T, pattern_matrices(pat, RootContext(T.field().order())), X, Y, xs, ys);
}

inline std::pair<bool, std::string> check_expr_zero(OperatorTable& T, const SymExpr& e) {
  auto m = T.eval(e);
  return {m.is_zero(), m.summary()};
}

/// Registers the (a, b, c, d, m) operator matrices of handle h of a representation under the
/// prefixes a, b (generators), c = B^-1 A, d = B A^-1, m = monodromy; suffix "_h" for genus > 1.
inline void register_handle(OperatorTable& T, const Representation& rep, int h, const std::string& suffix) {
  for (bool is_b : {false, true})
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        T.add(std::string(is_b ? "b" : "a") + std::to_string(r) + std::to_string(c) + suffix, rep.op({h, entry_family(is_b, r, c)}));
}

inline void register_matrix(OperatorTable& T, const std::string& prefix, const Mat2<SparseMatrix>& m) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) T.add(prefix + std::to_string(r + 1) + std::to_string(c + 1), m[r][c]);
}

// ---------------------------------------------------------------------------
// verify_relations

namespace detail {

inline void add_rmatrix_checks(Report& r, int p) {
  RootContext ctx(p);
  auto y = verify_ybe(ctx);
  r.add("QYBE for R+ at zeta_p", y.qybe_plus);
  r.add("QYBE for R- at zeta_p", y.qybe_minus);
  r.add("R+ = P R-^-1 P at zeta_p", y.flip_inverse);
}

inline void check_x_rules(Report& r, const Representation& rep, int h) {
  auto P = Presentation<RootScalar>::make(RootContext(rep.p));
  for (int k = 2; k < kSlotsPerHandle; ++k)
    for (int j = 2; j < k; ++j) {
      const auto& rule = P->rule(k, j);
      auto Xk = rep.op({h, static_cast<Family>(static_cast<int>(Family::X1) + k - 2)});
      auto Xj = rep.op({h, static_cast<Family>(static_cast<int>(Family::X1) + j - 2)});
      auto res = Xk * Xj - rule.c * (Xj * Xk) - SparseMatrix::scalar(*rep.field, rep.dim, rule.d);
      std::string name = "X" + std::to_string(k - 1) + " X" + std::to_string(j - 1) + " rule";
      if (rep.genus > 1) name += " (handle " + std::to_string(h) + ")";
      r.add(name, res.is_zero(), res.summary());
    }
}

}  // namespace detail

/// Every applicable relation evaluated as an exact matrix identity.
inline Report verify_relations(const Representation& rep) {
  Report r;
  r.command = "check-rep";
  r.p = rep.p;
  r.genus = rep.genus;
  detail::add_rmatrix_checks(r, rep.p);
  const CyclotomicField& f = *rep.field;
  auto q = [&](int k) { return RootScalar::zeta_pow(f, k); };
  if (rep.kind == "x-family1" || rep.kind == "x-family2") {
    detail::check_x_rules(r, rep, 1);
    return r;
  }
  if (rep.kind == "weil") {
    auto a = rep.op({1, Family::a11}), b = rep.op({1, Family::b11});
    auto res = a * b - q(1) * (b * a);
    r.add("a11 b11 = q b11 a11", res.is_zero(), res.summary());
    r.add("a11 a11^-1 = 1", a * rep.op({1, Family::a11inv}) == rep.identity());
    r.add("b11 b11^-1 = 1", b * rep.op({1, Family::b11inv}) == rep.identity());
    return r;
  }
  if (rep.kind != "l1") throw std::invalid_argument("verify_relations: use verify_genus_relations for kind " + rep.kind);
  detail::check_x_rules(r, rep, 1);
  OperatorTable T(f, rep.dim);
  register_handle(T, rep, 1, "");
  auto A = rep.matrix(false), B = rep.matrix(true);
  auto Ai = op_qinverse(A), Bi = op_qinverse(B);
  register_matrix(T, "c", op_mul(Bi, A));
  register_matrix(T, "d", op_mul(B, Ai));
  register_matrix(T, "m", op_handle_monodromy(A, B));
  auto I = rep.identity();
  r.add("a11 a11^-1 = 1", rep.op({1, Family::a11}) * rep.op({1, Family::a11inv}) == I);
  r.add("b11 b11^-1 = 1", rep.op({1, Family::b11}) * rep.op({1, Family::b11inv}) == I);
  r.add("detq A = 1", op_detq(A) == I);
  r.add("detq B = 1", op_detq(B) == I);
  r.add("detq M = 1", op_detq(op_handle_monodromy(A, B)) == I);
  r.add("detq C = q^3", op_detq(op_mul(Bi, A)) == q(3) * I);
  r.add("detq D = q^3", op_detq(op_mul(B, Ai)) == q(3) * I);
  // Compiled patterns.
  struct P3 {
    RelationPattern pat;
    const char* x;
    const char* y;
  };
  for (const auto& c : {P3{RelationPattern::SameHandle, "a", "a"}, P3{RelationPattern::SameHandle, "b", "b"},
                        P3{RelationPattern::AB, "a", "b"}, P3{RelationPattern::CD, "c", "d"},
                        P3{RelationPattern::CrossHandle, "c", "d"},
                        P3{RelationPattern::SameHandle, "m", "m"}, P3{RelationPattern::MA, "m", "a"},
                        P3{RelationPattern::MA, "m", "b"}}) {
    auto [ok, res] = check_pattern(T, c.pat, c.x, c.y);
    r.add("pattern " + pattern_name(c.pat) + " (" + c.x + ", " + c.y + ")", ok, res);
  }
  // Identity pattern against the Frobenius matrix of A, which acts by scalars.
  {
    const int p = rep.p;
    Mat2<SparseMatrix> F;
    F[0][0] = A[0][0].pow(p);
    F[0][1] = A[0][1].pow(p);
    F[1][0] = A[1][0].pow(p);
    F[1][1] = (I + F[0][1] * F[1][0]) * rep.op({1, Family::a11inv}).pow(p);
    register_matrix(T, "fa", F);
    auto [ok, res] = check_pattern(T, RelationPattern::Identity, "a", "fa");
    r.add("pattern identity (a, Frobenius matrix of A)", ok, res);
  }
  // Printed component tables.
  RelationParser<RootScalar, SymExpr> parser(RootContext(rep.p), [&](const std::string& s) { return T.sym(s); },
                                             SymExpr::constant(T.one()));
  for (const auto& tbl : {ab_table(), cd_table(), am_table()}) {
    std::size_t bad = 0;
    std::string first;
    for (const auto& line : tbl) {
      auto [ok, res] = check_expr_zero(T, parser.relation(line.text));
      if (!ok) {
        if (bad == 0) first = line.text;
        ++bad;
      }
    }
    r.add("printed " + tbl.front().table + " relations (" + std::to_string(tbl.size()) + " lines)", bad == 0,
          bad == 0 ? "0" : std::to_string(bad) + " failing, first: " + first);
  }
  if (rep.notes.contains("printed_action_lines")) {
    for (const auto& [k, v] : rep.notes["printed_action_lines"].items())
      r.add_info("printed action line " + k + " vs composition", v.get<std::string>());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Central character

struct CharacterTable {
  std::vector<std::pair<std::string, RootScalar>> values;
  Report report;

  std::optional<RootScalar> get(const std::string& name) const {
    for (const auto& [n, v] : values)
      if (n == name) return v;
    return std::nullopt;
  }
};

namespace detail {

inline RootScalar eval_central(const CentralPoly& c, const std::vector<RootScalar>& point, const CyclotomicField& f) {
  RootScalar r(f, Rational());
  for (const auto& [e, coef] : c.terms()) {
    RootScalar t = coef;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) t *= pow_rs(point.at(i), e[i]);
      if (e[i] < 0) t = t / pow_rs(point.at(i), -e[i]);
    }
    r += t;
  }
  return r;
}

}  // namespace detail

/// Scalars by which the central elements act, checked to be scalar, and compared with the
/// closed formulas for the X families and with the Frobenius expressions for L1.
inline CharacterTable central_character(const Representation& rep) {
  CharacterTable t;
  Report& r = t.report;
  r.command = "central-character";
  r.p = rep.p;
  r.genus = rep.genus;
  const CyclotomicField& f = *rep.field;
  const int p = rep.p;
  auto q = [&](int k) { return RootScalar::zeta_pow(f, k); };
  RootScalar one(f, Rational(1));
  auto scalar_of = [&](const std::string& name, const SparseMatrix& m) -> std::optional<RootScalar> {
    auto s = m.scalar_value();
    r.add(name + " acts as a scalar", s.has_value(), s ? "0" : "not scalar");
    if (s) t.values.emplace_back(name, *s);
    return s;
  };
  auto compare = [&](const std::string& name, const std::optional<RootScalar>& got, const RootScalar& want) {
    bool ok = got && *got == want;
    r.add(name, ok, ok ? "0" : (got ? "got " + got->str() + ", expected " + want.str() : "not scalar"));
  };
  auto par = [&](const char* k) { return parse_root_scalar(rep.params.at(k), f); };
  auto F = Presentation<FormalScalar>::make(FormalContext{});
  SlotOps s;
  for (int i = 0; i < 4; ++i) s.X[i] = rep.op({1, static_cast<Family>(static_cast<int>(Family::X1) + i)});
  if (rep.has({1, Family::a11})) {
    s.a = rep.op({1, Family::a11});
    s.ainv = rep.op({1, Family::a11inv});
    s.b = rep.op({1, Family::b11});
    s.binv = rep.op({1, Family::b11inv});
  }
  std::vector<std::optional<RootScalar>> Xp(4);
  for (int i = 0; i < 4; ++i) Xp[i] = scalar_of("X" + std::to_string(i + 1) + "^p", s.X[i]->pow(p));
  auto M11 = eval_formal(m11_x_form(F), s, f, rep.dim);
  auto M11p = scalar_of("M11^p", M11.pow(p));
  const std::string family = rep.kind == "l1" ? rep.params.value("x_family", std::string()) : rep.kind;
  if (family == "x-family1") {
    RootScalar x1 = par("x1"), x4 = par("x4"), y2 = par("y2"), y3 = par("y3"), z2 = par("z2"), z3 = par("z3");
    RootScalar Y2 = y2 * x1 + one, Y3 = y3 * x4 + one;
    // ((y x + 1)^p - 1) / x as the polynomial sum_{k>=1} C(p,k) y^k x^{k-1}, valid for x = 0.
    auto quot = [&](const RootScalar& y, const RootScalar& x) {
      RootScalar acc(f, Rational());
      mpz_class binom = 1;
      for (int k = 1; k <= p; ++k) {
        binom = binom * (p - k + 1) / k;
        acc += RootScalar(f, Rational(mpq_class(binom))) * detail::pow_rs(y, k) * detail::pow_rs(x, k - 1);
      }
      return acc;
    };
    compare("chi(X1^p) = x1", Xp[0], x1);
    compare("chi(X4^p) = x4", Xp[3], x4);
    compare("chi(X2^p) = ((y2x1+1)^p - 1)/x1 + z2^p x4", Xp[1], quot(y2, x1) + detail::pow_rs(z2, p) * x4);
    compare("chi(X3^p) = ((y3x4+1)^p - 1)/x4 + z3^p x1", Xp[2], quot(y3, x4) + detail::pow_rs(z3, p) * x1);
    SparseMatrix expect(f, p * p, p * p);
    for (int k = 0; k < p; ++k)
      for (int l = 0; l < p; ++l) expect.add(k * p + l, k * p + l, q(2 * (l - k)) * Y2 * Y3);
    auto M11x = rep.kind == "l1" ? kron(expect, SparseMatrix::identity(f, p)) : expect;
    r.add("M11 = q^{2(l-k)}(y2x1+1)(y3x4+1) on Psi(k,l)", M11 == M11x, (M11 - M11x).summary());
    compare("chi(M11^p) = ((y2x1+1)(y3x4+1))^p", M11p, detail::pow_rs(Y2 * Y3, p));
  } else if (family == "x-family2") {
    RootScalar x1 = par("x1"), x4 = par("x4"), b1 = par("b1"), b2 = par("b2"), c = par("c_last");
    compare("chi(X1^p) = x1", Xp[0], x1);
    compare("chi(X4^p) = x4", Xp[3], x4);
    compare("chi(X2^p) = (b1^p + b2^p x1 x4) x4 - x1^-1", Xp[1],
            (detail::pow_rs(b1, p) + detail::pow_rs(b2, p) * x1 * x4) * x4 - one / x1);
    compare("chi(X3^p) = c^p x1^{p-1} x4^{p-2} - x4^-1", Xp[2],
            detail::pow_rs(c, p) * detail::pow_rs(x1, p - 1) * detail::pow_rs(x4, p - 2) - one / x4);
    SparseMatrix expect(f, p * p, p * p);
    for (int k = 0; k < p; ++k)
      for (int l = 0; l < p; ++l) expect.add(k * p + l, k * p + l, q(2 * (l - k + 3)) * x1 * x4 * b1 * c);
    auto M11x = rep.kind == "l1" ? kron(expect, SparseMatrix::identity(f, p)) : expect;
    r.add("M11 = q^{2(l-k+3)} x1 x4 b1 c_{p-1} on Psi(k,l)", M11 == M11x, (M11 - M11x).summary());
    compare("chi(M11^p) = (x1 x4 b1 c_{p-1})^p", M11p, detail::pow_rs(x1 * x4 * b1 * c, p));
  }
  // M11^p from the central X-form 1 + Z1Z2 + Z1Z4 + Z3Z4 + Z1Z2Z3Z4.
  if (Xp[0] && Xp[1] && Xp[2] && Xp[3]) {
    RootScalar Z1 = *Xp[0], Z2 = *Xp[1], Z3 = *Xp[2], Z4 = *Xp[3];
    compare("chi(M11^p) = 1 + Z1Z2 + Z1Z4 + Z3Z4 + Z1Z2Z3Z4", M11p, one + Z1 * Z2 + Z1 * Z4 + Z3 * Z4 + Z1 * Z2 * Z3 * Z4);
  }
  if (rep.kind == "l1") {
    std::vector<std::optional<RootScalar>> gen_p;
    for (Family fam : central_families()) gen_p.push_back(scalar_of(family_name(fam) + "^p", rep.op({1, fam}).pow(p)));
    auto A = rep.matrix(false), B = rep.matrix(true);
    auto M = op_handle_monodromy(A, B);
    auto M12p = scalar_of("M12^p", M[0][1].pow(p));
    auto M21p = scalar_of("M21^p", M[1][0].pow(p));
    auto a11p = scalar_of("a11^p", s.a->pow(p));
    auto b11p = scalar_of("b11^p", s.b->pow(p));
    if (a11p && b11p && M11p && Xp[0] && Xp[1] && Xp[2] && Xp[3] && !M11p->is_zero()) {
      // Frobenius expressions in (alpha, beta, Z1..Z4, mu) evaluated at the character.
      auto Pr = Presentation<RootScalar>::make(RootContext(p));
      std::vector<RootScalar> pt = {*a11p, *b11p, *Xp[0], *Xp[1], *Xp[2], *Xp[3], one / *M11p};
      for (std::size_t i = 0; i < central_families().size(); ++i) {
        Family fam = central_families()[i];
        auto want = detail::eval_central(central_power(Pr, {1, fam}), pt, f);
        compare("chi(" + family_name(fam) + "^p) matches the Frobenius expression", gen_p[i], want);
      }
      auto Mcl = classical_commutator(frobenius_matrix(Pr, false), frobenius_matrix(Pr, true));
      compare("chi(M12^p) = (BA^-1B^-1A)_12 at the character", M12p, detail::eval_central(Mcl[0][1], pt, f));
      compare("chi(M21^p) = (BA^-1B^-1A)_21 at the character", M21p, detail::eval_central(Mcl[1][0], pt, f));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Commutant

/// Dimension of {T : [T, G] = 0 for every generator image G}.
inline int commutant_dim(const std::vector<SparseMatrix>& ops) {
  if (ops.empty()) throw std::invalid_argument("commutant_dim: no operators");
  const CyclotomicField& f = ops.front().field();
  const int n = ops.front().rows();
  const int nv = n * n;
  // Unknown T_{ik} at column i*n + k. Row (i,j) of [T,G]: sum_k T_ik G_kj - sum_k G_ik T_kj.
  DenseMatrix sys(f, 0, nv);
  for (const auto& G : ops) {
    auto Gt = G.transpose();
    DenseMatrix block(f, nv, nv);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int row = i * n + j;
        for (const auto& [k, g] : Gt.row(j)) block(row, i * n + k) += g;  // G_kj
        for (const auto& [k, g] : G.row(i)) block(row, k * n + j) -= g;   // G_ik
      }
    sys = vconcat(sys, block);
    DenseMatrix reduced(sys);
    auto piv = reduced.rref();
    DenseMatrix keep(f, static_cast<int>(piv.size()), nv);
    for (int i = 0; i < static_cast<int>(piv.size()); ++i)
      for (int j = 0; j < nv; ++j) keep(i, j) = reduced(i, j);
    sys = keep;
  }
  return nv - sys.rows();
}

inline std::vector<SparseMatrix> generator_ops(const Representation& rep) {
  std::vector<SparseMatrix> v;
  for (const auto& [g, m] : rep.gens) v.push_back(m);
  return v;
}

/// Block-diagonal direct sum of two representations of the same kind.
inline Representation direct_sum(const Representation& a, const Representation& b) {
  Representation r = a;
  r.dim = a.dim + b.dim;
  r.kind = a.kind + "+" + b.kind;
  r.gens.clear();
  for (const auto& [g, m] : a.gens) {
    const auto& n = b.op(g);
    SparseMatrix s(*a.field, r.dim, r.dim);
    for (int i = 0; i < m.rows(); ++i)
      for (const auto& [j, v] : m.row(i)) s.add(i, j, v);
    for (int i = 0; i < n.rows(); ++i)
      for (const auto& [j, v] : n.row(i)) s.add(a.dim + i, a.dim + j, v);
    r.gens[g] = s;
  }
  return r;
}

}  // namespace qgraph
