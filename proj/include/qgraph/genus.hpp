#pragma once

// Operator Gauss factors of monodromy images, the genus-g representation assembled from L1
// factors by conjugation with M_+(i+1), and the anti-automorphism rho.

#include <qgraph/reps.hpp>

#include <random>

namespace qgraph {

// ---------------------------------------------------------------------------
// Square roots and Gauss factors

struct OperatorSqrt {
  SparseMatrix root, root_inv;
  RootScalar power_scalar;  // chi(X^p)
  RootScalar scale;         // s with s^2 = chi(X^p)
};

/// Q = s^-1 X^{(p+1)/2} with s^2 = chi(X^p): on an eigenvalue c zeta^{2n} this is c^{1/2} zeta^n.
inline OperatorSqrt operator_sqrt(const SparseMatrix& X, const std::optional<RootScalar>& hint = std::nullopt) {
  const CyclotomicField& f = X.field();
  const int p = f.order();
  auto c = X.pow(p).scalar_value();
  if (!c) throw std::domain_error("operator_sqrt: X^p is not a scalar");
  if (c->is_zero()) throw std::domain_error("operator_sqrt: X is not invertible");
  auto s = sqrt_in_field(*c, hint);
  if (!s) throw std::domain_error("operator_sqrt: chi(X^p) = " + c->str() + " has no square root in Q(zeta_p); supply one");
  RootScalar one(f, Rational(1));
  OperatorSqrt r{(one / *s) * X.pow((p + 1) / 2), (*s / *c) * X.pow((p - 1) / 2), *c, *s};
  return r;
}

struct OperatorGauss {
  OperatorSqrt Q;
  Mat2<SparseMatrix> plus, plus_inv, minus_inv;  // M = minus_inv * plus
  Report report;
};

/// M_+ = [[Q, Q^-1 M12], [0, Q^-1]] with Q = M11^{1/2}; M_-^-1 = M M_+^-1.
inline OperatorGauss gauss_decompose_operator(const Mat2<SparseMatrix>& M, const std::optional<RootScalar>& hint = std::nullopt) {
  const CyclotomicField& f = M[0][0].field();
  const int n = M[0][0].rows();
  if (!M[0][0].is_diagonal()) throw std::domain_error("gauss_decompose_operator: M11 image is not diagonal");
  OperatorGauss g{operator_sqrt(M[0][0], hint), {}, {}, {}, {}};
  const auto& Q = g.Q.root;
  const auto& Qi = g.Q.root_inv;
  SparseMatrix Z(f, n, n);
  g.plus = {{{Q, Qi * M[0][1]}, {Z, Qi}}};
  g.plus_inv = {{{Qi, -(Qi * (Qi * M[0][1]) * Q)}, {Z, Q}}};
  g.minus_inv = op_mul(M, g.plus_inv);
  auto I = SparseMatrix::identity(f, n);
  Report& r = g.report;
  r.command = "gauss-decompose";
  r.add("Q^2 = M11", Q * Q == M[0][0]);
  r.add("Q Q^-1 = 1", Q * Qi == I);
  auto pp = op_mul(g.plus, g.plus_inv);
  r.add("M_+ M_+^-1 = 1", pp[0][0] == I && pp[0][1].is_zero() && pp[1][0].is_zero() && pp[1][1] == I);
  r.add("M_-^-1 = M M_+^-1 is lower triangular", g.minus_inv[0][1].is_zero(), g.minus_inv[0][1].summary());
  r.add("(M_-^-1)_11 = Q", g.minus_inv[0][0] == Q);
  auto back = op_mul(g.minus_inv, g.plus);
  bool ok = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ok = ok && back[i][j] == M[i][j];
  r.add("M = M_-^-1 M_+", ok);
  r.add_info("(M_-^-1)_22 = Q^-1", g.minus_inv[1][1] == Qi ? "holds" : "differs");
  auto printed = -(RootScalar::zeta_pow(f, 1) * (Qi * M[0][1]));
  r.add_info("M_+^-1 (12) = -q m11^{-1/2} m12", g.plus_inv[0][1] == printed ? "holds" : "differs");
  return g;
}

/// Square-root hints of a representation: "sqrt_chi_m11", "sqrt_chi_a11", "sqrt_chi_d11" in params.
inline std::optional<RootScalar> sqrt_hint(const Representation& rep, const std::string& key) {
  if (!rep.params.contains(key)) return std::nullopt;
  return parse_root_scalar(rep.params.at(key), *rep.field);
}

/// Printed half-power relations with a11^{1/2} and d11^{1/2} evaluated in an L1 representation.
inline Report verify_half_powers(const Representation& rep) {
  if (rep.kind != "l1") throw std::invalid_argument("verify_half_powers needs an L1 representation");
  Report r;
  r.command = "half-powers";
  r.p = rep.p;
  OperatorTable T(*rep.field, rep.dim);
  register_handle(T, rep, 1, "");
  auto A = rep.matrix(false), B = rep.matrix(true);
  auto C = op_mul(op_qinverse(B), A), D = op_mul(B, op_qinverse(A));
  register_matrix(T, "c", C);
  register_matrix(T, "d", D);
  register_matrix(T, "m", op_handle_monodromy(A, B));
  auto add_root = [&](const std::string& name, const SparseMatrix& X, const std::string& key) {
    try {
      auto s = operator_sqrt(X, sqrt_hint(rep, key));
      T.add(name + "h", s.root);
      T.add(name + "hi", s.root_inv);
      r.add(name + "^{1/2} squares to " + name, s.root * s.root == X);
      return true;
    } catch (const std::domain_error& e) {
      r.add_info(name + "^{1/2} not in the field, its lines are skipped", e.what());
      return false;
    }
  };
  bool a_ok = add_root("a11", A[0][0], "sqrt_chi_a11");
  bool d_ok = add_root("d11", D[0][0], "sqrt_chi_d11");
  RelationParser<RootScalar, SymExpr> parser(RootContext(rep.p), [&](const std::string& s) { return T.sym(s); },
                                             SymExpr::constant(T.one()));
  int checked = 0;
  for (const auto& line : half_power_table()) {
    bool needs_d = line.text.find("d11h") != std::string::npos;
    if ((needs_d && !d_ok) || (!needs_d && !a_ok)) continue;
    auto [ok, res] = check_expr_zero(T, parser.relation(line.text));
    r.add(line.text, ok, res);
    ++checked;
  }
  r.data["half_power_lines_checked"] = checked;
  return r;
}

// ---------------------------------------------------------------------------
// Genus assembly

inline SparseMatrix embed_factor(const SparseMatrix& X, const std::vector<int>& dims, int h) {
  const CyclotomicField& f = X.field();
  int before = 1, after = 1;
  for (int i = 0; i < h - 1; ++i) before *= dims[static_cast<std::size_t>(i)];
  for (std::size_t i = static_cast<std::size_t>(h); i < dims.size(); ++i) after *= dims[i];
  SparseMatrix r = X;
  if (before > 1) r = kron(SparseMatrix::identity(f, before), r);
  if (after > 1) r = kron(r, SparseMatrix::identity(f, after));
  return r;
}

inline Mat2<SparseMatrix> embed_factor(const Mat2<SparseMatrix>& X, const std::vector<int>& dims, int h) {
  Mat2<SparseMatrix> r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = embed_factor(X[i][j], dims, h);
  return r;
}

/// A_i = M_+(i+1)^-1 Abar_i M_+(i+1), M_+(i) = Gbar_+(i) ... Gbar_+(g), on the tensor product of
/// the L1 factors (handle 1 leftmost).
inline Representation build_genus_rep(const std::vector<Representation>& factors) {
  if (factors.empty()) throw std::invalid_argument("build_genus_rep needs at least one factor");
  const int g = static_cast<int>(factors.size());
  const CyclotomicField& f = *factors.front().field;
  std::vector<int> dims;
  for (const auto& fr : factors) {
    if (fr.kind != "l1") throw std::invalid_argument("build_genus_rep factors must be L1 representations");
    if (fr.p != factors.front().p) throw std::invalid_argument("build_genus_rep factors must share p");
    dims.push_back(fr.dim);
  }
  int n = 1;
  for (int d : dims) n *= d;
  Representation r;
  r.kind = "genus";
  r.p = factors.front().p;
  r.genus = g;
  r.dim = n;
  r.field = &f;
  auto I = SparseMatrix::identity(f, n), Z = SparseMatrix(f, n, n);
  Mat2<SparseMatrix> unit = {{{I, Z}, {Z, I}}};
  // Gauss factors of each handle's own monodromy, embedded.
  std::vector<Mat2<SparseMatrix>> gp(static_cast<std::size_t>(g) + 2, unit), gpi(static_cast<std::size_t>(g) + 2, unit);
  for (int h = 1; h <= g; ++h) {
    const auto& fr = factors[static_cast<std::size_t>(h - 1)];
    auto G = op_handle_monodromy(fr.matrix(false), fr.matrix(true));
    auto gd = gauss_decompose_operator(G, sqrt_hint(fr, "sqrt_chi_m11"));
    if (!gd.report.passed()) throw std::runtime_error("Gauss factors of handle " + std::to_string(h) + " failed");
    gp[static_cast<std::size_t>(h)] = embed_factor(gd.plus, dims, h);
    gpi[static_cast<std::size_t>(h)] = embed_factor(gd.plus_inv, dims, h);
  }
  // M_+(i) and M_+(i)^-1 for i = g+1 down to 2.
  std::vector<Mat2<SparseMatrix>> mp(static_cast<std::size_t>(g) + 2, unit), mpi(static_cast<std::size_t>(g) + 2, unit);
  for (int i = g; i >= 2; --i) {
    mp[static_cast<std::size_t>(i)] = op_mul(gp[static_cast<std::size_t>(i)], mp[static_cast<std::size_t>(i) + 1]);
    mpi[static_cast<std::size_t>(i)] = op_mul(mpi[static_cast<std::size_t>(i) + 1], gpi[static_cast<std::size_t>(i)]);
  }
  for (int h = 1; h <= g; ++h) {
    const auto& fr = factors[static_cast<std::size_t>(h - 1)];
    for (bool is_b : {false, true}) {
      auto bar = embed_factor(fr.matrix(is_b), dims, h);
      auto m = h == g ? bar : op_mul(op_mul(mpi[static_cast<std::size_t>(h) + 1], bar), mp[static_cast<std::size_t>(h) + 1]);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.gens[{h, entry_family(is_b, i + 1, j + 1)}] = m[i][j];
    }
    r.params["handle" + std::to_string(h)] = fr.params;
  }
  return r;
}

/// Monodromies M_i = q^{-3(g-i+1)} B_g A_g^-1 B_g^-1 A_g ... B_i A_i^-1 B_i^-1 A_i, i = 1..g.
inline std::vector<Mat2<SparseMatrix>> monodromies(const Representation& rep) {
  const int g = rep.genus;
  std::vector<Mat2<SparseMatrix>> M(static_cast<std::size_t>(g) + 1);
  for (int i = g; i >= 1; --i) {
    auto C = op_handle_monodromy(rep.matrix(false, i), rep.matrix(true, i));
    M[static_cast<std::size_t>(i)] = i == g ? C : op_mul(M[static_cast<std::size_t>(i) + 1], C);
  }
  return M;
}

/// Frobenius matrix [[x11^p, x12^p], [x21^p, (1 + x12^p x21^p) / x11^p]] of one handle's character.
inline std::optional<Mat2<RootScalar>> frobenius_character(const Representation& rep, bool is_b, int h = 1) {
  const int p = rep.p;
  auto m = rep.matrix(is_b, h);
  auto v11 = m[0][0].pow(p).scalar_value(), v12 = m[0][1].pow(p).scalar_value(), v21 = m[1][0].pow(p).scalar_value();
  if (!v11 || !v12 || !v21 || v11->is_zero()) return std::nullopt;
  RootScalar one(*rep.field, Rational(1));
  return Mat2<RootScalar>{{{*v11, *v12}, {*v21, (one + *v12 * *v21) / *v11}}};
}

inline Mat2<RootScalar> rs_inverse_unimodular(const Mat2<RootScalar>& m) {
  return {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
}

/// All genus-g relations of the (a, b) and monodromy operator matrices.
inline Report verify_genus_relations(const Representation& rep) {
  Report r;
  r.command = "genus-rep";
  r.p = rep.p;
  r.genus = rep.genus;
  detail::add_rmatrix_checks(r, rep.p);
  const int g = rep.genus;
  const CyclotomicField& f = *rep.field;
  const int p = rep.p;
  auto I = rep.identity();
  OperatorTable T(f, rep.dim);
  auto sfx = [](int h) { return "_" + std::to_string(h); };
  for (int h = 1; h <= g; ++h) register_handle(T, rep, h, sfx(h));
  auto M = monodromies(rep);
  for (int i = 1; i <= g; ++i) {
    const auto& Mi = M[static_cast<std::size_t>(i)];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) T.add("m" + std::to_string(a + 1) + std::to_string(b + 1) + sfx(i), Mi[a][b]);
  }
  auto check = [&](const std::string& name, RelationPattern pat, const std::string& x, int i, const std::string& y, int j) {
    auto [ok, res] = check_pattern(T, pat, x, y, sfx(i), sfx(j));
    r.add(name, ok, res);
  };
  auto up = [](const std::string& s) { return std::string(1, static_cast<char>(s[0] - 'a' + 'A')); };
  for (int h = 1; h <= g; ++h) {
    std::string s = sfx(h);
    r.add("detq A" + s + " = 1", op_detq(rep.matrix(false, h)) == I);
    r.add("detq B" + s + " = 1", op_detq(rep.matrix(true, h)) == I);
    check("A" + s + " with A" + s + " (same-handle)", RelationPattern::SameHandle, "a", h, "a", h);
    check("B" + s + " with B" + s + " (same-handle)", RelationPattern::SameHandle, "b", h, "b", h);
    check("A" + s + " with B" + s + " (AB)", RelationPattern::AB, "a", h, "b", h);
  }
  for (int i = 1; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j)
      for (const char* x : {"a", "b"})
        for (const char* y : {"a", "b"})
          check(up(x) + sfx(i) + " with " + up(y) + sfx(j) + " (cross-handle)", RelationPattern::CrossHandle, x, i, y, j);
  for (int i = 1; i <= g; ++i) {
    r.add("detq M" + sfx(i) + " = 1", op_detq(M[static_cast<std::size_t>(i)]) == I);
    for (int j = i; j <= g; ++j) {
      check("M" + sfx(i) + " with M" + sfx(j) + " (same-handle)", RelationPattern::SameHandle, "m", i, "m", j);
      check("M" + sfx(i) + " with A" + sfx(j) + " (MA)", RelationPattern::MA, "m", i, "a", j);
      check("M" + sfx(i) + " with B" + sfx(j) + " (MA)", RelationPattern::MA, "m", i, "b", j);
    }
    for (int j = i + 1; j <= g; ++j) {
      check("A" + sfx(i) + " with M" + sfx(j) + " (cross-handle)", RelationPattern::CrossHandle, "a", i, "m", j);
      check("B" + sfx(i) + " with M" + sfx(j) + " (cross-handle)", RelationPattern::CrossHandle, "b", i, "m", j);
      RootContext ctx(p);
      std::array<SquareMatrix<RootScalar>, 4> printed = {r_plus(ctx), r_plus(ctx), r_plus(ctx), r_plus_inverse(ctx)};
      auto [ok, res] = check_pattern(T, printed, "b", "m", sfx(i), sfx(j));
      r.add_info("B" + sfx(i) + " with M" + sfx(j) + " as printed (R+, R+, R+, R+^-1)", ok ? "holds" : "fails: " + res);
    }
  }
  // Character level: M_1^p entries against the ordered product of handle Frobenius commutators.
  std::vector<Mat2<RootScalar>> FA, FB;
  for (int h = 1; h <= g; ++h) {
    auto a = frobenius_character(rep, false, h), b = frobenius_character(rep, true, h);
    if (!a || !b) {
      r.add("Frobenius matrices of handle " + std::to_string(h) + " are scalar", false);
      return r;
    }
    FA.push_back(*a);
    FB.push_back(*b);
  }
  Mat2<RootScalar> F = {{{RootScalar(f, Rational(1)), RootScalar(f, Rational())}, {RootScalar(f, Rational()), RootScalar(f, Rational(1))}}};
  for (int h = g; h >= 1; --h) {
    const auto& A = FA[static_cast<std::size_t>(h - 1)];
    const auto& B = FB[static_cast<std::size_t>(h - 1)];
    F = mat2_mul(F, mat2_mul(mat2_mul(mat2_mul(B, rs_inverse_unimodular(A)), rs_inverse_unimodular(B)), A));
  }
  const auto& M1 = M[1];
  for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}}) {
    auto v = M1[i][j].pow(p).scalar_value();
    bool ok = v && *v == F[i][j];
    std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
    r.add("chi((M_1)_" + ij + "^p) = ordered product of handle Frobenius monodromies", ok,
          ok ? "0" : (v ? "got " + v->str() + ", expected " + F[i][j].str() : "not scalar"));
  }
  return r;
}

// ---------------------------------------------------------------------------
// The anti-automorphism rho(A) = M_+ A^-1 M_+^-1, rho(B) = M_+ B^-1 M_+^-1 on an L1 representation

namespace detail {

inline SymExpr reversed(const SymExpr& e) {
  SymExpr r;
  for (const auto& [w, c] : e.terms()) r.add(SymExpr::Word(w.rbegin(), w.rend()), c);
  return r;
}

/// rho of a normal X-form element: each monomial a^e0 b^e1 X1^e2 .. X4^e5 maps to the reversed
/// product of the slot images.
class RhoEvaluator {
 public:
  RhoEvaluator(const CyclotomicField& f, int dim, std::array<SparseMatrix, 2> pos, std::array<SparseMatrix, 2> neg,
               std::array<SparseMatrix, 4> X)
      : f_(&f), dim_(dim), pos_(std::move(pos)), neg_(std::move(neg)), X_(std::move(X)) {}

  SparseMatrix operator()(const NcPoly<FormalScalar>& x) {
    SparseMatrix r(*f_, dim_, dim_);
    for (const auto& [k, c] : x.terms()) {
      SparseMatrix t = SparseMatrix::scalar(*f_, dim_, specialize(c, f_->order()).conj());
      for (int slot = kSlotsPerHandle - 1; slot >= 0; --slot)
        if (k[slot] != 0) t = t * power(slot, k[slot]);
      r += t;
    }
    return r;
  }

 private:
  const SparseMatrix& power(int slot, int e) {
    auto key = std::make_pair(slot, e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const SparseMatrix& base = slot >= 2 ? X_[static_cast<std::size_t>(slot - 2)]
                                         : (e > 0 ? pos_[static_cast<std::size_t>(slot)] : neg_[static_cast<std::size_t>(slot)]);
    return cache_.emplace(key, base.pow(e > 0 ? e : -e)).first->second;
  }

  const CyclotomicField* f_;
  int dim_;
  std::array<SparseMatrix, 2> pos_, neg_;
  std::array<SparseMatrix, 4> X_;
  std::map<std::pair<int, int>, SparseMatrix> cache_;
};

inline WordPoly<FormalScalar> random_word(std::mt19937_64& rng, int max_len) {
  static const Family letters[] = {Family::a11, Family::a12, Family::a21, Family::a22,
                                   Family::b11, Family::b12, Family::b21, Family::b22};
  std::uniform_int_distribution<int> len(1, max_len), pick(0, 7);
  WordPoly<FormalScalar>::Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back({1, letters[pick(rng)]});
  return WordPoly<FormalScalar>::word(w, FormalScalar::q_pow(0));
}

}  // namespace detail

/// rho is antilinear (zeta -> zeta^-1) and the matrix equations are read with the adjoint
/// convention: rho(a_ij) = (M_+ A^-1 M_+^-1)_ji, rho(b_ij) = (M_+ B^-1 M_+^-1)_ji.
inline Report rho_check(const Representation& rep, int pairs = 100, std::uint64_t seed = 1) {
  if (rep.kind != "l1") throw std::invalid_argument("rho_check needs an L1 representation");
  Report r;
  r.command = "rho-check";
  r.p = rep.p;
  r.genus = 1;
  const CyclotomicField& f = *rep.field;
  const int n = rep.dim;
  const int p = rep.p;
  auto A = rep.matrix(false), B = rep.matrix(true);
  auto M = op_handle_monodromy(A, B);
  auto gd = gauss_decompose_operator(M, sqrt_hint(rep, "sqrt_chi_m11"));
  r.merge(gd.report);
  auto RA = op_mul(op_mul(gd.plus, op_qinverse(A)), gd.plus_inv);
  auto RB = op_mul(op_mul(gd.plus, op_qinverse(B)), gd.plus_inv);
  // Symbols carry the rho images; rho of an expression is its reversed, conjugated evaluation.
  OperatorTable T(f, n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      T.add(family_name(entry_family(false, i + 1, j + 1)), RA[j][i]);
      T.add(family_name(entry_family(true, i + 1, j + 1)), RB[j][i]);
    }
  SparseMatrix ra11i, rb11i;
  try {
    ra11i = sparse_inverse(T.eval(T.sym("a11")));
    rb11i = sparse_inverse(T.eval(T.sym("b11")));
  } catch (const std::domain_error&) {
    r.add("rho(a11) and rho(b11) are invertible", false, "singular in this representation");
    return r;
  }
  T.add(family_name(Family::a11inv), ra11i);
  T.add(family_name(Family::b11inv), rb11i);
  auto anti = [](const SymExpr& e) {
    SymExpr out;
    for (const auto& [w, c] : e.terms()) out.add(SymExpr::Word(w.rbegin(), w.rend()), c.conj());
    return out;
  };
  auto rho_expr = [&](const SymExpr& e) { return T.eval(anti(e)); };
  RelationParser<RootScalar, SymExpr> parser(RootContext(p), [&](const std::string& s) { return T.sym(s); },
                                             SymExpr::constant(T.one()));
  {
    std::size_t bad = 0;
    auto tbl = ab_table();
    for (const auto& line : tbl)
      if (!rho_expr(parser.relation(line.text)).is_zero()) ++bad;
    r.add("rho preserves the printed ab relations (" + std::to_string(tbl.size()) + " lines)", bad == 0,
          bad == 0 ? "0" : std::to_string(bad) + " failing");
  }
  // X slots from ab_from_x.
  auto F = Presentation<FormalScalar>::make(FormalContext{});
  auto word_expr = [&](const WordPoly<FormalScalar>& w) {
    SymExpr e;
    for (const auto& [word, c] : w.terms()) {
      SymExpr t = SymExpr::constant(specialize(c, p));
      for (const auto& g : word) t = t * T.sym(family_name(g.family));
      e = e + t;
    }
    return e;
  };
  std::array<SparseMatrix, 4> X;
  for (int k = 0; k < 4; ++k)
    X[static_cast<std::size_t>(k)] = rho_expr(word_expr(ab_from_x(NcPoly<FormalScalar>::slot_power(F, 1, 2 + k, 1))));
  detail::RhoEvaluator rho(f, n, {T.eval(T.sym("a11")), T.eval(T.sym("b11"))}, {ra11i, rb11i}, X);
  auto I = rep.identity();
  r.add("rho(1) = 1", rho(NcPoly<FormalScalar>::one(F)) == I);
  {
    std::string bad;
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        for (bool is_b : {false, true}) {
          Family fam = entry_family(is_b, i, j);
          if (!(rho(F->image({1, fam})) == T.eval(T.sym(family_name(fam))))) bad += family_name(fam) + " ";
        }
    r.add("rho of the X-form of each generator = its defining image", bad.empty(), bad.empty() ? "0" : bad);
  }
  std::mt19937_64 rng(seed);
  int good = 0;
  std::string first_bad;
  for (int k = 0; k < pairs; ++k) {
    auto x = normal_form(detail::random_word(rng, 3), F);
    auto y = normal_form(detail::random_word(rng, 3), F);
    auto lhs = rho(x * y), rhs = rho(y) * rho(x);
    if (lhs == rhs)
      ++good;
    else if (first_bad.empty())
      first_bad = "pair " + std::to_string(k) + ": " + (lhs - rhs).summary();
  }
  r.add("rho(xy) = rho(y) rho(x) on " + std::to_string(pairs) + " random word pairs", good == pairs,
        good == pairs ? "0" : std::to_string(pairs - good) + " failing, " + first_bad);
  // rho of the monodromy entries from their expressions in the generators.
  auto one = T.one();
  auto q = [&](int k) { return RootScalar::zeta_pow(f, k); };
  auto qinv_sym = [&](const Mat2<SymExpr>& m) {
    Mat2<SymExpr> out;
    out[0][0] = q(2) * m[1][1] + (one - q(2)) * m[0][0];
    out[0][1] = -(q(2) * m[0][1]);
    out[1][0] = -(q(2) * m[1][0]);
    out[1][1] = m[0][0];
    return out;
  };
  auto As = T.sym_matrix("a"), Bs = T.sym_matrix("b");
  auto Ms = mat2_mul(mat2_mul(mat2_mul(Bs, qinv_sym(As)), qinv_sym(Bs)), As);
  Mat2<SparseMatrix> rM, rAi, rBi;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      rM[i][j] = rho_expr(q(-3) * Ms[i][j]);
      rAi[i][j] = rho_expr(qinv_sym(As)[i][j]);
      rBi[i][j] = rho_expr(qinv_sym(Bs)[i][j]);
    }
  // Q = s^-1 M11^{(p+1)/2}, Q^-1 = s c^-1 M11^{(p-1)/2}: rho conjugates the scalars.
  RootScalar c = gd.Q.power_scalar;
  const RootScalar& sc = gd.Q.scale;
  auto rQ = (one / sc).conj() * rM[0][0].pow((p + 1) / 2);
  auto rQi = (sc / c).conj() * rM[0][0].pow((p - 1) / 2);
  SparseMatrix Z(f, n, n);
  // rho applied entrywise with the adjoint transpose: (X^rho)_ij = rho(X_ji).
  Mat2<SparseMatrix> plus_rho = {{{rQ, Z}, {rM[0][1] * rQi, rQi}}};
  auto inv12 = -(rQ * rM[0][1] * rQi * rQi);  // rho(-Q^-1 Q^-1 M12 Q)
  Mat2<SparseMatrix> plus_inv_rho = {{{rQi, Z}, {inv12, rQ}}};
  const auto& Lm = gd.minus_inv[1][0];
  auto Pi = sparse_inverse(gd.minus_inv[1][1]);
  Mat2<SparseMatrix> minus = {{{gd.Q.root_inv, Z}, {-(Pi * Lm * gd.Q.root_inv), Pi}}};
  bool mp = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) mp = mp && plus_rho[i][j] == minus[i][j];
  r.add("rho(M_+) = M_-", mp);
  // rho^2(x_ij) = rho((M_+ X^-1 M_+^-1)_ji) = sum rho((M_+^-1)_li) rho((X^-1)_kl) rho((M_+)_jk).
  auto Minv = op_qinverse(M);
  for (bool is_b : {false, true}) {
    const auto& X0 = is_b ? B : A;
    const auto& rXi = is_b ? rBi : rAi;
    auto conj = op_mul(op_mul(M, X0), Minv);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        SparseMatrix acc(f, n, n);
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) acc += plus_inv_rho[i][l] * rXi[k][l] * plus_rho[k][j];
        Family fam = entry_family(is_b, i + 1, j + 1);
        bool ok = acc == conj[i][j];
        r.add("rho^2(" + family_name(fam) + ") = (M X M^-1)_" + std::to_string(i + 1) + std::to_string(j + 1), ok,
              ok ? "0" : (acc - conj[i][j]).summary());
      }
  }
  return r;
}

}  // namespace qgraph
