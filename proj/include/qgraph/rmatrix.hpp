#pragma once

// The quantum R-matrices R+, R- of sl2, the flip P, the quantum Yang-Baxter check,
// and the classical r-matrices obtained as d/dq at q = 1.

#include <qgraph/scalars.hpp>

#include <string>
#include <vector>

namespace qgraph {

/// Small dense square matrix over an exact scalar type (4x4 or 8x8 here).
template <class S>
struct SquareMatrix {
  int n = 0;
  std::vector<S> a;

  SquareMatrix() = default;
  SquareMatrix(int n_, const S& zero) : n(n_), a(static_cast<std::size_t>(n_ * n_), zero) {}
  static SquareMatrix identity(int n, const S& zero, const S& one) {
    SquareMatrix m(n, zero);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  S& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const S& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

  friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix r(x.n, x.a[0] - x.a[0]);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        if (x(i, k).is_zero()) continue;
        for (int j = 0; j < x.n; ++j)
          if (!y(k, j).is_zero()) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend SquareMatrix operator+(SquareMatrix x, const SquareMatrix& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
  }
  friend SquareMatrix operator-(SquareMatrix x, const SquareMatrix& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
  }
  friend SquareMatrix operator*(const S& s, SquareMatrix x) {
    for (auto& e : x.a) e = s * e;
    return x;
  }
  bool is_zero() const {
    for (const auto& e : a)
      if (!e.is_zero()) return false;
    return true;
  }
  friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) { return x.n == y.n && x.a == y.a; }
  /// Number of nonzero entries, used as a residual summary.
  int nonzeros() const {
    int c = 0;
    for (const auto& e : a) c += !e.is_zero();
    return c;
  }
};

template <class S>
SquareMatrix<S> kron(const SquareMatrix<S>& x, const SquareMatrix<S>& y) {
  S zero = x.a[0] - x.a[0];
  SquareMatrix<S> r(x.n * y.n, zero);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      if (x(i, j).is_zero()) continue;
      for (int k = 0; k < y.n; ++k)
        for (int l = 0; l < y.n; ++l) r(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
    }
  return r;
}

/// Flip on C^2 (x) C^2: P(e_i (x) e_j) = e_j (x) e_i; basis index 2i + j.
template <class S>
SquareMatrix<S> flip(const S& zero, const S& one) {
  SquareMatrix<S> P(4, zero);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) P(2 * j + i, 2 * i + j) = one;
  return P;
}

template <class S>
SquareMatrix<S> r_plus(const ScalarContext<S>& c) {
  SquareMatrix<S> R(4, c.zero());
  S h = c.v_pow(-1);  // q^{-1/2}
  R(0, 0) = h * c.q_pow(1);
  R(1, 1) = h;
  R(1, 2) = h * (c.q_pow(1) - c.q_pow(-1));
  R(2, 2) = h;
  R(3, 3) = h * c.q_pow(1);
  return R;
}

template <class S>
SquareMatrix<S> r_minus(const ScalarContext<S>& c) {
  SquareMatrix<S> R(4, c.zero());
  S h = c.v_pow(1);  // q^{1/2}
  R(0, 0) = h * c.q_pow(-1);
  R(1, 1) = h;
  R(2, 1) = h * (c.q_pow(-1) - c.q_pow(1));
  R(2, 2) = h;
  R(3, 3) = h * c.q_pow(-1);
  return R;
}

/// Inverses of R+ and R-, written out (each is triangular with monomial diagonal).
template <class S>
SquareMatrix<S> r_plus_inverse(const ScalarContext<S>& c) {
  SquareMatrix<S> R(4, c.zero());
  S h = c.v_pow(1);
  R(0, 0) = h * c.q_pow(-1);
  R(1, 1) = h;
  R(1, 2) = h * (c.q_pow(-1) - c.q_pow(1));
  R(2, 2) = h;
  R(3, 3) = h * c.q_pow(-1);
  return R;
}

template <class S>
SquareMatrix<S> r_minus_inverse(const ScalarContext<S>& c) {
  SquareMatrix<S> R(4, c.zero());
  S h = c.v_pow(-1);
  R(0, 0) = h * c.q_pow(1);
  R(1, 1) = h;
  R(2, 1) = h * (c.q_pow(1) - c.q_pow(-1));
  R(2, 2) = h;
  R(3, 3) = h * c.q_pow(1);
  return R;
}

struct YbeReport {
  bool qybe_plus = false;
  bool qybe_minus = false;
  bool flip_inverse = false;    // R+ = P R-^{-1} P
  bool inverses_ok = false;     // the written-out inverses are inverses
  bool ok() const { return qybe_plus && qybe_minus && flip_inverse && inverses_ok; }
};

/// R^{12} R^{13} R^{23} - R^{23} R^{13} R^{12} on (C^2)^{(x)3}.
template <class S>
SquareMatrix<S> qybe_residual(const SquareMatrix<S>& R, const ScalarContext<S>& c) {
  auto I2 = SquareMatrix<S>::identity(2, c.zero(), c.one());
  auto P = flip(c.zero(), c.one());
  auto R12 = kron(R, I2);
  auto R23 = kron(I2, R);
  auto P23 = kron(I2, P);
  auto R13 = P23 * R12 * P23;
  return R12 * R13 * R23 - R23 * R13 * R12;
}

template <class S>
YbeReport verify_ybe(const ScalarContext<S>& c) {
  YbeReport r;
  auto Rp = r_plus(c), Rm = r_minus(c);
  auto I4 = SquareMatrix<S>::identity(4, c.zero(), c.one());
  auto P = flip(c.zero(), c.one());
  r.qybe_plus = qybe_residual(Rp, c).is_zero();
  r.qybe_minus = qybe_residual(Rm, c).is_zero();
  r.inverses_ok = Rp * r_plus_inverse(c) == I4 && r_plus_inverse(c) * Rp == I4 && Rm * r_minus_inverse(c) == I4 &&
                  r_minus_inverse(c) * Rm == I4;
  // R+ = P R-^{-1} P  <=>  R+ (P R- P) = 1
  r.flip_inverse = Rp * (P * Rm * P) == I4 && Rp == P * r_minus_inverse(c) * P;
  return r;
}

// ---------------------------------------------------------------------------
// Classical r-matrices

struct ClassicalRData {
  SquareMatrix<Rational> r_plus, r_minus, casimir, flip;
  bool minus_is_flipped_plus = false;  // r- = -P r+ P
  bool casimir_ok = false;             // r+ - r- = C, C = 2P - 1
  bool cybe_plus = false;
  bool cybe_minus = false;
  bool ad_invariant = false;           // [h (x) 1 + 1 (x) h, C] = 0 for h in sl2
  bool ok() const { return minus_is_flipped_plus && casimir_ok && cybe_plus && cybe_minus && ad_invariant; }
};

inline SquareMatrix<Rational> derivative_at_one(const SquareMatrix<FormalScalar>& m) {
  SquareMatrix<Rational> r(m.n, Rational());
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = derivative_at_one(m.a[i]);
  return r;
}

/// [r12, r13] + [r12, r23] + [r13, r23] on (C^2)^{(x)3}.
inline SquareMatrix<Rational> cybe_residual(const SquareMatrix<Rational>& r) {
  auto I2 = SquareMatrix<Rational>::identity(2, Rational(), Rational(1));
  auto P = flip(Rational(), Rational(1));
  auto r12 = kron(r, I2), r23 = kron(I2, r);
  auto P23 = kron(I2, P);
  auto r13 = P23 * r12 * P23;
  auto br = [](const SquareMatrix<Rational>& x, const SquareMatrix<Rational>& y) { return x * y - y * x; };
  return br(r12, r13) + br(r12, r23) + br(r13, r23);
}

inline ClassicalRData classical_r_matrices() {
  FormalContext c;
  ClassicalRData d;
  d.r_plus = derivative_at_one(r_plus(c));
  d.r_minus = derivative_at_one(r_minus(c));
  d.flip = flip(Rational(), Rational(1));
  auto I4 = SquareMatrix<Rational>::identity(4, Rational(), Rational(1));
  d.casimir = d.r_plus - d.r_minus;
  d.minus_is_flipped_plus = (d.flip * d.r_plus * d.flip + d.r_minus).is_zero();
  d.casimir_ok = d.casimir == Rational(2) * d.flip - I4;
  d.cybe_plus = cybe_residual(d.r_plus).is_zero();
  d.cybe_minus = cybe_residual(d.r_minus).is_zero();
  // sl2 basis in the defining representation
  auto m2 = [](int a, int b, int c2, int dd) {
    SquareMatrix<Rational> m(2, Rational());
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c2;
    m(1, 1) = dd;
    return m;
  };
  auto I2 = SquareMatrix<Rational>::identity(2, Rational(), Rational(1));
  d.ad_invariant = true;
  for (const auto& h : {m2(1, 0, 0, -1), m2(0, 1, 0, 0), m2(0, 0, 1, 0)}) {
    auto D = kron(h, I2) + kron(I2, h);
    if (!(D * d.casimir - d.casimir * D).is_zero()) d.ad_invariant = false;
  }
  return d;
}

}  // namespace qgraph
