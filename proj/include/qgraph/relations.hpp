#pragma once

// Component form of the R-matrix exchange relations
//     X^1 R_a Y^2 R_b = R_c Y^2 R_d X^1,     X^1 = X (x) 1,  Y^2 = 1 (x) Y,
// for 2x2 matrices X, Y with entries in any (noncommutative) ring T over the scalars S.

#include <qgraph/ncpoly.hpp>
#include <qgraph/rmatrix.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgraph {

enum class RelationPattern {
  SameHandle,   // A-A and B-B of one handle, D-D, C-C, M_i-M_j (i <= j)
  AB,           // A_i with B_i
  CrossHandle,  // X_i with Y_j for i < j
  CD,           // C = B^-1 A with D = B A^-1
  MA,           // M with A (and with B) of a handle j >= i
  Identity,     // all four R-matrices replaced by 1
};

inline std::string pattern_name(RelationPattern p) {
  switch (p) {
    case RelationPattern::SameHandle: return "same-handle";
    case RelationPattern::AB: return "AB";
    case RelationPattern::CrossHandle: return "cross-handle";
    case RelationPattern::CD: return "CD";
    case RelationPattern::MA: return "MA";
    case RelationPattern::Identity: return "identity";
  }
  return "?";
}

inline RelationPattern parse_pattern(const std::string& s) {
  for (auto p : {RelationPattern::SameHandle, RelationPattern::AB, RelationPattern::CrossHandle, RelationPattern::CD,
                 RelationPattern::MA, RelationPattern::Identity})
    if (pattern_name(p) == s) return p;
  throw std::invalid_argument("unknown relation pattern '" + s + "'");
}

/// The four R-matrices (R_a, R_b, R_c, R_d) of a pattern.
template <class S>
std::array<SquareMatrix<S>, 4> pattern_matrices(RelationPattern p, const ScalarContext<S>& c) {
  auto Rp = r_plus(c), Rpi = r_plus_inverse(c), Rm = r_minus(c), Rmi = r_minus_inverse(c);
  auto I = SquareMatrix<S>::identity(4, c.zero(), c.one());
  switch (p) {
    case RelationPattern::SameHandle:
    case RelationPattern::MA: return {Rp, Rpi, Rm, Rmi};
    case RelationPattern::AB: return {Rp, Rpi, Rp, Rmi};
    case RelationPattern::CrossHandle:
    case RelationPattern::CD: return {Rp, Rpi, Rp, Rpi};
    case RelationPattern::Identity: return {I, I, I, I};
  }
  throw std::invalid_argument("unknown relation pattern");
}

struct ComponentRelation {
  int row = 0, col = 0;  // auxiliary index 2*i1 + i2
  std::string label() const {
    return "(" + std::to_string(row / 2 + 1) + std::to_string(row % 2 + 1) + "," + std::to_string(col / 2 + 1) +
           std::to_string(col % 2 + 1) + ")";
  }
};

namespace detail {

template <class T>
using Aux = std::array<std::array<std::optional<T>, 4>, 4>;

template <class T>
void accumulate(std::optional<T>& acc, T&& term) {
  if (acc)
    *acc = *acc + term;
  else
    acc = std::move(term);
}

template <class S, class T>
Aux<T> mul_ts(const Aux<T>& x, const SquareMatrix<S>& r) {
  Aux<T> out;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      if (!x[i][k]) continue;
      for (int j = 0; j < 4; ++j)
        if (!r(k, j).is_zero()) accumulate(out[i][j], T(r(k, j) * *x[i][k]));
    }
  return out;
}

template <class S, class T>
Aux<T> mul_st(const SquareMatrix<S>& r, const Aux<T>& x) {
  Aux<T> out;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      if (r(i, k).is_zero()) continue;
      for (int j = 0; j < 4; ++j)
        if (x[k][j]) accumulate(out[i][j], T(r(i, k) * *x[k][j]));
    }
  return out;
}

template <class T>
Aux<T> mul_tt(const Aux<T>& x, const Aux<T>& y) {
  Aux<T> out;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      if (!x[i][k]) continue;
      for (int j = 0; j < 4; ++j)
        if (y[k][j]) accumulate(out[i][j], T(*x[i][k] * *y[k][j]));
    }
  return out;
}

}  // namespace detail

/// The 16 component equations (LHS - RHS) of X^1 R_a Y^2 R_b = R_c Y^2 R_d X^1, in row-major
/// order of the auxiliary index; `zero` is the zero element of T.
template <class S, class T>
std::vector<T> compile_matrix_relation(const std::array<SquareMatrix<S>, 4>& R, const Mat2<T>& X, const Mat2<T>& Y,
                                       const T& zero) {
  detail::Aux<T> X1, Y2;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) {
          if (i2 == j2) X1[2 * i1 + i2][2 * j1 + j2] = X[i1][j1];
          if (i1 == j1) Y2[2 * i1 + i2][2 * j1 + j2] = Y[i2][j2];
        }
  auto lhs = detail::mul_ts(detail::mul_tt(detail::mul_ts(X1, R[0]), Y2), R[1]);
  auto rhs = detail::mul_tt(detail::mul_ts(detail::mul_st(R[2], Y2), R[3]), X1);
  std::vector<T> out;
  out.reserve(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      T l = lhs[i][j] ? *lhs[i][j] : zero;
      T r = rhs[i][j] ? *rhs[i][j] : zero;
      out.push_back(l - r);
    }
  return out;
}

template <class S, class T>
std::vector<T> compile_matrix_relation(RelationPattern pat, const Mat2<T>& X, const Mat2<T>& Y,
                                       const ScalarContext<S>& ctx, const T& zero) {
  return compile_matrix_relation(pattern_matrices(pat, ctx), X, Y, zero);
}

}  // namespace qgraph
