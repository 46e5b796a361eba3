#pragma once

// Poisson structures: the quantum-limit bracket on the centre at a root of unity and the
// classical quadratic bracket on holonomy matrix entries. Both are k-normalized, i.e. the
// values of (k/2pi){ , }.

#include <qgraph/center.hpp>
#include <qgraph/rmatrix.hpp>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace qgraph {

// ---------------------------------------------------------------------------
// Quantum side.

/// Specialize a formal element to the root presentation, each coefficient divided by `den` first.
inline NcPoly<RootScalar> limit_to_root(const NcPoly<FormalScalar>& x, const PresentationPtr<RootScalar>& P,
                                        const FormalScalar& den) {
  const int p = P->p();
  NcPoly<RootScalar> r(P);
  for (const auto& [k, c] : x.terms()) {
    RootScalar s = limit_at_root(RationalExpr(c, den), p);
    if (s.is_zero()) continue;
    auto m = NcPoly<RootScalar>::scalar(P, s);
    for (int i = 0; i < P->word_size(); ++i)
      if (k[i] != 0) m = m * NcPoly<RootScalar>::slot_power(P, i / kSlotsPerHandle + 1, i % kSlotsPerHandle, k[i]);
    r += m;
  }
  return r;
}

/// (k/2pi){x, y} = lim (xy - yx) / (1 - q^{p^2}) for formal lifts x, y of central elements.
/// Throws NotCentralError if a pole survives.
inline NcPoly<RootScalar> qpoisson_bracket(const NcPoly<FormalScalar>& x, const NcPoly<FormalScalar>& y,
                                           const PresentationPtr<RootScalar>& P) {
  const int p = P->p();
  auto den = FormalScalar(1) - FormalScalar::q_pow(p * p);
  return limit_to_root(commutator(x, y), P, den);
}

/// Formal lifts of the genus-1 central generators a11^p, a12^p, a21^p, b11^p, b12^p, b21^p, M11^p.
inline std::vector<NcPoly<FormalScalar>> formal_central_lifts(const PresentationPtr<FormalScalar>& F, int p) {
  std::vector<NcPoly<FormalScalar>> out;
  for (Family f : central_families()) out.push_back(F->image({1, f}).pow(p));
  out.push_back(monodromy(F)[0][0].pow(p));
  return out;
}

inline const std::vector<std::string>& prop3_generator_names() {
  static const std::vector<std::string> n = {"a11^p", "a12^p", "a21^p", "b11^p", "b12^p", "b21^p", "mu"};
  return n;
}

/// 7x7 table of quantum-limit brackets; the last generator is mu = M11^-p, with {mu, y} = -mu^2 {M11^p, y}.
inline std::vector<std::vector<NcPoly<RootScalar>>> quantum_poisson_table(const PresentationPtr<RootScalar>& P) {
  auto F = Presentation<FormalScalar>::make(FormalContext{});
  auto lifts = formal_central_lifts(F, P->p());
  const int n = static_cast<int>(lifts.size());
  auto mu = NcPoly<RootScalar>::central(P, P->mu_index() - P->word_size());
  auto mu2 = mu * mu;
  std::vector<std::vector<NcPoly<RootScalar>>> t(n, std::vector<NcPoly<RootScalar>>(n, NcPoly<RootScalar>(P)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto b = qpoisson_bracket(lifts[i], lifts[j], P);
      if (j == n - 1) b = -(mu2 * b);
      t[i][j] = b;
      t[j][i] = -b;
    }
  return t;
}

// ---------------------------------------------------------------------------
// Classical side. Coordinates per handle: alpha11, alpha12, alpha21, alpha22, beta11, ..., beta22.

inline constexpr int kClassicalPerHandle = 8;

inline int classical_index(int handle, bool is_b, int row, int col) {
  return kClassicalPerHandle * (handle - 1) + (is_b ? 4 : 0) + 2 * (row - 1) + (col - 1);
}

inline std::vector<std::string> classical_names(int genus) {
  std::vector<std::string> n;
  for (int h = 1; h <= genus; ++h)
    for (const char* s : {"alpha11", "alpha12", "alpha21", "alpha22", "beta11", "beta12", "beta21", "beta22"})
      n.push_back(genus == 1 ? std::string(s) : std::string(s) + "_" + std::to_string(h));
  return n;
}

namespace detail {

using Poly4 = std::array<std::array<ClassicalPoly, 4>, 4>;

inline Poly4 poly4_zero(std::size_t nv) {
  Poly4 m;
  for (auto& row : m)
    for (auto& e : row) e = ClassicalPoly(nv);
  return m;
}

inline Poly4 poly4_mul(const Poly4& x, const Poly4& y, std::size_t nv) {
  auto r = poly4_zero(nv);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      if (x[i][k].is_zero()) continue;
      for (int j = 0; j < 4; ++j)
        if (!y[k][j].is_zero()) r[i][j] += x[i][k] * y[k][j];
    }
  return r;
}

inline Poly4 poly4_from(const SquareMatrix<Rational>& m, std::size_t nv) {
  auto r = poly4_zero(nv);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!m(i, j).is_zero()) r[i][j] = ClassicalPoly::constant(nv, m(i, j));
  return r;
}

/// X^1 = X (x) 1 or Y^2 = 1 (x) Y for the symbolic holonomy of (handle, is_b).
inline Poly4 leg(int handle, bool is_b, bool first, std::size_t nv) {
  auto r = poly4_zero(nv);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) {
          if (first && i2 == j2)
            r[2 * i1 + i2][2 * j1 + j2] = ClassicalPoly::variable(nv, classical_index(handle, is_b, i1 + 1, j1 + 1), Rational(1));
          if (!first && i1 == j1)
            r[2 * i1 + i2][2 * j1 + j2] = ClassicalPoly::variable(nv, classical_index(handle, is_b, i2 + 1, j2 + 1), Rational(1));
        }
  return r;
}

}  // namespace detail

/// Brackets between the 8g matrix-entry coordinates, from the eight lines of the quadratic bracket.
class ClassicalBracket {
 public:
  explicit ClassicalBracket(int genus, const ClassicalRData& data = classical_r_matrices())
      : genus_(genus), nv_(static_cast<std::size_t>(kClassicalPerHandle * genus)) {
    table_.assign(nv_, std::vector<ClassicalPoly>(nv_, ClassicalPoly(nv_)));
    auto rp = detail::poly4_from(data.r_plus, nv_), rm = detail::poly4_from(data.r_minus, nv_);
    for (int h = 1; h <= genus; ++h) {
      fill(h, false, h, false, rp, rp, rm, rm);  // {A_i^1, A_i^2}
      fill(h, true, h, true, rp, rp, rm, rm);    // {B_i^1, B_i^2}
      fill(h, false, h, true, rp, rp, rp, rm);   // {A_i^1, B_i^2}
      for (int j = h + 1; j <= genus; ++j)
        for (bool xb : {false, true})
          for (bool yb : {false, true}) fill(h, xb, j, yb, rp, rp, rp, rp);
    }
    // Remaining pairs by antisymmetry.
    for (std::size_t a = 0; a < nv_; ++a)
      for (std::size_t b = 0; b < nv_; ++b)
        if (!set_[a][b] && set_[b][a]) table_[a][b] = -table_[b][a];
  }

  int genus() const { return genus_; }
  std::size_t nvars() const { return nv_; }
  const ClassicalPoly& coordinate_bracket(std::size_t a, std::size_t b) const { return table_.at(a).at(b); }

  /// {f, g} by the Leibniz rule.
  ClassicalPoly operator()(const ClassicalPoly& f, const ClassicalPoly& g) const {
    ClassicalPoly r(nv_);
    std::vector<ClassicalPoly> dg(nv_, ClassicalPoly(nv_));
    for (std::size_t b = 0; b < nv_; ++b) dg[b] = g.derivative(b);
    for (std::size_t a = 0; a < nv_; ++a) {
      auto dfa = f.derivative(a);
      if (dfa.is_zero()) continue;
      for (std::size_t b = 0; b < nv_; ++b)
        if (!dg[b].is_zero() && !table_[a][b].is_zero()) r += dfa * dg[b] * table_[a][b];
    }
    return r;
  }

  ClassicalPoly coordinate(int handle, bool is_b, int row, int col) const {
    return ClassicalPoly::variable(nv_, classical_index(handle, is_b, row, col), Rational(1));
  }

 private:
  // {X^1, Y^2} = X^1 ra Y^2 - Y^2 X^1 rb - rc Y^2 X^1 + Y^2 rd X^1, entry ((i1 i2),(j1 j2)) = {X_i1j1, Y_i2j2}.
  void fill(int hx, bool xb, int hy, bool yb, const detail::Poly4& ra, const detail::Poly4& rb, const detail::Poly4& rc,
            const detail::Poly4& rd) {
    using namespace detail;
    auto X1 = leg(hx, xb, true, nv_), Y2 = leg(hy, yb, false, nv_);
    auto t1 = poly4_mul(poly4_mul(X1, ra, nv_), Y2, nv_);
    auto t2 = poly4_mul(poly4_mul(Y2, X1, nv_), rb, nv_);
    auto t3 = poly4_mul(poly4_mul(rc, Y2, nv_), X1, nv_);
    auto t4 = poly4_mul(poly4_mul(Y2, rd, nv_), X1, nv_);
    if (set_.empty()) set_.assign(nv_, std::vector<bool>(nv_, false));
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2) {
            int r = 2 * i1 + i2, c = 2 * j1 + j2;
            auto a = static_cast<std::size_t>(classical_index(hx, xb, i1 + 1, j1 + 1));
            auto b = static_cast<std::size_t>(classical_index(hy, yb, i2 + 1, j2 + 1));
            table_[a][b] = t1[r][c] - t2[r][c] - t3[r][c] + t4[r][c];
            set_[a][b] = true;
          }
  }

  int genus_;
  std::size_t nv_;
  std::vector<std::vector<ClassicalPoly>> table_;
  std::vector<std::vector<bool>> set_;
};

/// Convenience wrapper: {f, g} for polynomials in the 8g coordinates.
inline ClassicalPoly classical_bracket(const ClassicalPoly& f, const ClassicalPoly& g, int genus = 1) {
  return ClassicalBracket(genus)(f, g);
}

/// Genus-1 reduced coordinates (alpha11, alpha12, alpha21, beta11, beta12, beta21, mu) with
/// alpha22, beta22 eliminated by det = 1 and mu = 1 / (BA^-1B^-1A)_11.
class ReducedBracket {
 public:
  static constexpr std::size_t kVars = 7;

  ReducedBracket() : full_(1) {
    // Elimination map from the 8 coordinates.
    std::vector<ClassicalPoly> img(8, ClassicalPoly(kVars)), inv(8, ClassicalPoly(kVars));
    const int keep[8] = {0, 1, 2, -1, 3, 4, 5, -1};
    for (int a = 0; a < 8; ++a)
      if (keep[a] >= 0) img[a] = var(keep[a]);
    auto one = ClassicalPoly::constant(kVars, Rational(1));
    img[3] = (one + var(1) * var(2)) * var(0, -1);
    img[7] = (one + var(4) * var(5)) * var(3, -1);
    inv[0] = var(0, -1);
    inv[4] = var(3, -1);
    auto reduce = [&](const ClassicalPoly& f) {
      return f.substitute<Rational>(img, inv, [](const Rational& c) { return c; }, kVars);
    };
    table_.assign(kVars, std::vector<ClassicalPoly>(kVars, ClassicalPoly(kVars)));
    const int full_of[6] = {0, 1, 2, 4, 5, 6};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) table_[i][j] = reduce(full_.coordinate_bracket(full_of[i], full_of[j]));
    auto m11 = monodromy11();
    for (std::size_t j = 0; j < 6; ++j) {
      // {mu, y} = -mu^2 {M11, y}
      ClassicalPoly s(kVars);
      for (std::size_t a = 0; a < 6; ++a) s += m11.derivative(a) * table_[a][j];
      table_[6][j] = -(var(6, 2) * s);
      table_[j][6] = -table_[6][j];
    }
  }

  ClassicalPoly var(std::size_t i, int power = 1) const { return ClassicalPoly::variable(kVars, i, Rational(1), power); }

  /// (BA^-1B^-1A)_11 in reduced coordinates.
  ClassicalPoly monodromy11() const {
    ClassicalMatrix<Rational> A, B;
    auto one = ClassicalPoly::constant(kVars, Rational(1));
    A[0][0] = var(0);
    A[0][1] = var(1);
    A[1][0] = var(2);
    A[1][1] = (one + var(1) * var(2)) * var(0, -1);
    B[0][0] = var(3);
    B[0][1] = var(4);
    B[1][0] = var(5);
    B[1][1] = (one + var(4) * var(5)) * var(3, -1);
    return classical_commutator(A, B)[0][0];
  }

  const ClassicalPoly& generator_bracket(std::size_t i, std::size_t j) const { return table_.at(i).at(j); }

  ClassicalPoly operator()(const ClassicalPoly& f, const ClassicalPoly& g) const {
    ClassicalPoly r(kVars);
    for (std::size_t a = 0; a < kVars; ++a) {
      auto dfa = f.derivative(a);
      if (dfa.is_zero()) continue;
      for (std::size_t b = 0; b < kVars; ++b) {
        if (table_[a][b].is_zero()) continue;
        auto dgb = g.derivative(b);
        if (!dgb.is_zero()) r += dfa * dgb * table_[a][b];
      }
    }
    return r;
  }

  static std::vector<std::string> names() { return {"alpha11", "alpha12", "alpha21", "beta11", "beta12", "beta21", "mu"}; }

 private:
  ClassicalBracket full_;
  std::vector<std::vector<ClassicalPoly>> table_;
};

/// phi: reduced classical coordinates -> central coefficient ring of the root presentation.
inline NcPoly<RootScalar> transport(const ClassicalPoly& f, const PresentationPtr<RootScalar>& P) {
  const auto nc = static_cast<std::size_t>(P->central_size());
  auto FA = frobenius_matrix(P, false), FB = frobenius_matrix(P, true);
  auto mu = CentralPoly::variable(nc, static_cast<std::size_t>(P->mu_index() - P->word_size()), P->ctx().one());
  std::vector<CentralPoly> img = {FA[0][0], FA[0][1], FA[1][0], FB[0][0], FB[0][1], FB[1][0], mu};
  std::vector<CentralPoly> inv(7, CentralPoly(nc));
  inv[0] = FA[0][0].inverse_monomial();
  inv[3] = FB[0][0].inverse_monomial();
  inv[6] = classical_commutator(FA, FB)[0][0];
  const RootContext& ctx = P->ctx();
  auto c = f.substitute<RootScalar>(img, inv, [&](const Rational& r) { return ctx.from(r); }, nc);
  return NcPoly<RootScalar>::from_central(P, c);
}

/// The 7x7 table of quantum-limit brackets of the genus-1 central generators, transported to the
/// classical side, against the classical bracket table.
inline Report verify_prop3(int p) {
  Report r;
  r.command = "prop3-poisson";
  r.p = p;
  r.genus = 1;
  auto P = Presentation<RootScalar>::make(RootContext(p));
  auto qt = quantum_poisson_table(P);
  ReducedBracket cb;
  const auto& names = prop3_generator_names();
  auto cn = ReducedBracket::names();
  const int n = 7;
  nlohmann::ordered_json table = nlohmann::ordered_json::object();
  bool all_central = true;
  std::vector<Family> gens = {Family::a11, Family::b11, Family::a11inv, Family::b11inv,
                              Family::X1,  Family::X2,  Family::X3,     Family::X4};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& q = qt[i][j];
      const auto& c = cb.generator_bracket(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      auto tc = transport(c, P);
      bool central = q.is_central_form();
      bool ok = central && q == tc;
      std::string label = "{" + names[i] + ", " + names[j] + "}";
      if (i < j) {
        for (Family g : gens)
          if (!commutator(q, P->image({1, g})).is_zero()) all_central = false;
        table[label] = c.str(cn);
      }
      r.add("quantum = classical " + label, ok, ok ? "0" : "quantum: " + q.str() + " classical: " + tc.str());
    }
  r.add("quantum brackets are central", all_central);
  auto spot = cb.generator_bracket(0, 3);
  r.add("classical {alpha11, beta11} = -alpha11 beta11", spot == -(cb.var(0) * cb.var(3)), spot.str(cn));
  auto qspot = qt[0][3];
  auto expect = -(NcPoly<RootScalar>::from_central(P, frobenius_matrix(P, false)[0][0] * frobenius_matrix(P, true)[0][0]));
  r.add("quantum {a11^p, b11^p} = -a11^p b11^p", qspot == expect, qspot.str());
  r.data["classical_table"] = table;
  return r;
}

/// Jacobi identity of the classical bracket on the coordinates (all triples, or every stride-th).
inline Report verify_classical_jacobi(int genus, int stride = 1) {
  Report r;
  r.command = "classical-jacobi";
  r.genus = genus;
  ClassicalBracket br(genus);
  const auto nv = br.nvars();
  auto x = [&](std::size_t a) { return ClassicalPoly::variable(nv, a, Rational(1)); };
  bool ok = true, anti = true;
  std::size_t count = 0, tested = 0;
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      if (!(br.coordinate_bracket(a, b) + br.coordinate_bracket(b, a)).is_zero()) anti = false;
      for (std::size_t c = b + 1; c < nv; ++c) {
        if (b <= a || (count++ % static_cast<std::size_t>(stride)) != 0) continue;
        ++tested;
        auto j = br(x(a), br(x(b), x(c))) + br(x(b), br(x(c), x(a))) + br(x(c), br(x(a), x(b)));
        if (!j.is_zero()) {
          ok = false;
          r.add("Jacobi " + classical_names(genus)[a] + " " + classical_names(genus)[b] + " " + classical_names(genus)[c],
                false, j.str(classical_names(genus)));
        }
      }
    }
  r.add("antisymmetry of the coordinate brackets", anti);
  r.add("Jacobi on " + std::to_string(tested) + " coordinate triples", ok);
  // det A_h and det B_h Poisson-commute with all coordinates.
  bool casimir = true;
  for (int h = 1; h <= genus; ++h)
    for (bool b : {false, true}) {
      auto d = br.coordinate(h, b, 1, 1) * br.coordinate(h, b, 2, 2) - br.coordinate(h, b, 1, 2) * br.coordinate(h, b, 2, 1);
      for (std::size_t a = 0; a < nv; ++a)
        if (!br(d, x(a)).is_zero()) casimir = false;
    }
  r.add("determinants are Casimirs", casimir);
  return r;
}

}  // namespace qgraph
