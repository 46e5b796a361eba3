#pragma once

// Points of the classical holonomy space: the flatness relation, the handle-by-handle
// conjugation by Gauss factors of the partial monodromies, and a seeded sampler.

#include <qgraph/ncpoly.hpp>
#include <qgraph/rational.hpp>
#include <qgraph/report.hpp>

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgraph {

using RMat = Mat2<Rational>;

inline RMat rmat(Rational a, Rational b, Rational c, Rational d) {
  RMat m;
  m[0][0] = std::move(a);
  m[0][1] = std::move(b);
  m[1][0] = std::move(c);
  m[1][1] = std::move(d);
  return m;
}
inline RMat rmat_identity() { return rmat(1, 0, 0, 1); }
inline Rational rmat_det(const RMat& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
inline RMat rmat_inverse(const RMat& m) {
  Rational d = rmat_det(m);
  if (d.is_zero()) throw std::domain_error("singular 2x2 matrix");
  Rational di = Rational(1) / d;
  return rmat(m[1][1] * di, -m[0][1] * di, -m[1][0] * di, m[0][0] * di);
}
inline bool rmat_equal(const RMat& a, const RMat& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (a[i][j] != b[i][j]) return false;
  return true;
}
inline RMat rmat_sub(const RMat& a, const RMat& b) {
  return rmat(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1]);
}
inline std::string rmat_str(const RMat& m) {
  return "[[" + m[0][0].str() + ", " + m[0][1].str() + "], [" + m[1][0].str() + ", " + m[1][1].str() + "]]";
}

/// Values of A_i, B_i (index i-1) and, when M11 != 0, mu = 1 / M11.
struct ClassicalPoint {
  std::vector<RMat> A, B;
  std::optional<Rational> mu;

  int genus() const { return static_cast<int>(A.size()); }
};

/// B A^-1 B^-1 A.
inline RMat handle_commutator(const RMat& A, const RMat& B) {
  return mat2_mul(mat2_mul(mat2_mul(B, rmat_inverse(A)), rmat_inverse(B)), A);
}

/// M_i = (B_g A_g^-1 B_g^-1 A_g) ... (B_i A_i^-1 B_i^-1 A_i).
inline RMat partial_monodromy(const ClassicalPoint& pt, int i) {
  RMat m = rmat_identity();
  for (int h = pt.genus(); h >= i; --h) m = mat2_mul(m, handle_commutator(pt.A[h - 1], pt.B[h - 1]));
  return m;
}

struct FlatnessResult {
  bool flat = false;
  RMat residual;  // M_1 - 1
};

inline void check_point(const ClassicalPoint& pt) {
  if (pt.A.size() != pt.B.size() || pt.A.empty()) throw std::invalid_argument("classical point needs g >= 1 handles");
  for (int h = 0; h < pt.genus(); ++h) {
    if (rmat_det(pt.A[h]) != Rational(1) || rmat_det(pt.B[h]) != Rational(1))
      throw std::invalid_argument("handle " + std::to_string(h + 1) + " is not unimodular");
    if (pt.A[h][0][0].is_zero() || pt.B[h][0][0].is_zero())
      throw std::invalid_argument("alpha11 or beta11 vanishes at handle " + std::to_string(h + 1));
  }
}

inline FlatnessResult check_flatness(const ClassicalPoint& pt) {
  check_point(pt);
  FlatnessResult r;
  r.residual = rmat_sub(partial_monodromy(pt, 1), rmat_identity());
  r.flat = rmat_equal(r.residual, rmat(0, 0, 0, 0));
  return r;
}

/// G = G_-^-1 G_+ with G_-^-1 lower unipotent and G_+ upper triangular (the diagonal kept in G_+).
struct GaussFactors {
  RMat minus_inv, plus;
};

inline GaussFactors gauss_factors(const RMat& G) {
  if (G[0][0].is_zero()) throw std::domain_error("Gauss decomposition needs an invertible (1,1) entry");
  Rational inv = Rational(1) / G[0][0];
  GaussFactors f;
  f.minus_inv = rmat(1, 0, G[1][0] * inv, 1);
  f.plus = rmat(G[0][0], G[0][1], 0, G[1][1] - G[1][0] * inv * G[0][1]);
  return f;
}

/// Conjugate the bar point handle by handle: A_i = M_+(i+1)^-1 Abar_i M_+(i+1) with
/// M_+(i) = Gbar_+(i) ... Gbar_+(g). Then M_1 is computed as the ordered product of the conjugated
/// handles and as M_-(1)^-1 M_+(1) from the Gauss factors; the two must agree.
inline Report verify_prop5_classical(const ClassicalPoint& bar) {
  check_point(bar);
  Report r;
  r.command = "prop5-classical";
  const int g = bar.genus();
  r.genus = g;
  std::vector<GaussFactors> gf;
  for (int h = 1; h <= g; ++h) gf.push_back(gauss_factors(handle_commutator(bar.A[h - 1], bar.B[h - 1])));
  // M_+(i) and M_-(i)^-1 for i = 1..g+1.
  std::vector<RMat> mplus(g + 2, rmat_identity()), mminus_inv(g + 2, rmat_identity());
  for (int i = g; i >= 1; --i) {
    mplus[i] = mat2_mul(gf[i - 1].plus, mplus[i + 1]);
    mminus_inv[i] = mat2_mul(mminus_inv[i + 1], gf[i - 1].minus_inv);
  }
  ClassicalPoint pt;
  bool dets = true;
  for (int i = 1; i <= g; ++i) {
    RMat c = mplus[i + 1], ci = rmat_inverse(c);
    pt.A.push_back(mat2_mul(mat2_mul(ci, bar.A[i - 1]), c));
    pt.B.push_back(mat2_mul(mat2_mul(ci, bar.B[i - 1]), c));
    dets = dets && rmat_det(pt.A.back()) == Rational(1) && rmat_det(pt.B.back()) == Rational(1);
  }
  r.add("conjugated A_i, B_i have det 1", dets);
  for (int i = 1; i <= g; ++i) {
    RMat direct = partial_monodromy(pt, i);
    RMat gauss = mat2_mul(mminus_inv[i], mplus[i]);
    bool ok = rmat_equal(direct, gauss);
    r.add("M_" + std::to_string(i) + " direct = M_-^-1 M_+", ok, ok ? "0" : rmat_str(rmat_sub(direct, gauss)));
  }
  // The flatness residual of the conjugated point is the Gauss-route M_1 minus 1.
  bool nonsingular = true;
  for (const auto& m : pt.A) nonsingular = nonsingular && !m[0][0].is_zero();
  for (const auto& m : pt.B) nonsingular = nonsingular && !m[0][0].is_zero();
  if (nonsingular) {
    auto fl = check_flatness(pt);
    auto gauss = mat2_mul(mminus_inv[1], mplus[1]);
    r.add("check_flatness residual + 1 = M_-^-1(1) M_+(1)", rmat_equal(rmat_sub(gauss, rmat_identity()), fl.residual));
    r.data["flat"] = fl.flat;
  } else {
    r.add_info("check_flatness skipped", "a conjugated (1,1) entry vanishes");
  }
  r.data["M1"] = rmat_str(partial_monodromy(pt, 1));
  return r;
}

namespace detail {

inline Rational small_rational(std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  for (;;) {
    int n = num(rng);
    if (nonzero && n == 0) continue;
    return Rational(n, den(rng));
  }
}

/// Product of elementary unimodular matrices with small integer entries.
inline RMat random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(-3, 3);
  RMat m = rmat_identity();
  for (int s = 0; s < 3; ++s) {
    m = mat2_mul(m, rmat(1, k(rng), 0, 1));
    m = mat2_mul(m, rmat(1, 0, k(rng), 1));
  }
  return m;
}

inline RMat conjugate(const RMat& P, const RMat& D) { return mat2_mul(mat2_mul(P, D), rmat_inverse(P)); }

inline void set_mu(ClassicalPoint& pt) {
  Rational m11 = partial_monodromy(pt, 1)[0][0];
  if (!m11.is_zero()) pt.mu = Rational(1) / m11;
}

}  // namespace detail

/// A flat point: per handle a diagonalizable A and a B commuting with it, conjugated by a random
/// unimodular matrix. Deterministic per seed; alpha11, beta11 are nonzero.
inline ClassicalPoint flat_sample(int genus, std::uint64_t seed) {
  if (genus < 1) throw std::invalid_argument("genus must be >= 1");
  std::mt19937_64 rng(seed);
  ClassicalPoint pt;
  for (int h = 0; h < genus; ++h) {
    for (;;) {
      RMat P = detail::random_unimodular(rng);
      Rational a = detail::small_rational(rng, true), b = detail::small_rational(rng, true);
      RMat A = detail::conjugate(P, rmat(a, 0, 0, Rational(1) / a));
      RMat B = detail::conjugate(P, rmat(b, 0, 0, Rational(1) / b));
      if (A[0][0].is_zero() || B[0][0].is_zero()) continue;
      pt.A.push_back(A);
      pt.B.push_back(B);
      break;
    }
  }
  detail::set_mu(pt);
  return pt;
}

/// A generic (non-flat) point with invertible (1,1) entries of every handle commutator.
inline ClassicalPoint random_point(int genus, std::uint64_t seed) {
  if (genus < 1) throw std::invalid_argument("genus must be >= 1");
  std::mt19937_64 rng(seed);
  ClassicalPoint pt;
  auto det1 = [&]() {
    for (;;) {
      Rational a = detail::small_rational(rng, true);
      RMat m = mat2_mul(detail::random_unimodular(rng), rmat(a, 0, 0, Rational(1) / a));
      if (!m[0][0].is_zero()) return m;
    }
  };
  for (int h = 0; h < genus; ++h) {
    for (;;) {
      RMat A = det1(), B = det1();
      if (handle_commutator(A, B)[0][0].is_zero()) continue;
      pt.A.push_back(A);
      pt.B.push_back(B);
      break;
    }
  }
  detail::set_mu(pt);
  return pt;
}

/// Seeded sweep: flatness of flat_sample points and the two routes to M_1 on random points.
inline Report verify_classical_sweep(int genus, int points, std::uint64_t seed) {
  Report r;
  r.command = "classical-sweep";
  r.genus = genus;
  int flat = 0, agree = 0;
  for (int k = 0; k < points; ++k) {
    if (check_flatness(flat_sample(genus, seed + static_cast<std::uint64_t>(k))).flat) ++flat;
    if (verify_prop5_classical(random_point(genus, seed + static_cast<std::uint64_t>(k))).passed()) ++agree;
  }
  r.add("flat_sample points are flat (" + std::to_string(flat) + "/" + std::to_string(points) + ")", flat == points);
  r.add("prop5 routes agree (" + std::to_string(agree) + "/" + std::to_string(points) + ")", agree == points);
  return r;
}

}  // namespace qgraph
