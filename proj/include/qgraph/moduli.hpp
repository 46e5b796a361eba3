#pragma once

// The constraint kernel V0 of Phi_ij = M_ij - delta_ij, its exact part dV0 and the quotient
// dimension, and the commutation condition on Frobenius matrices for unitarity.

#include <qgraph/genus.hpp>

namespace qgraph {

struct ModuliReport {
  int dim = 0;
  int dim_v0 = 0;
  int dim_dv0 = 0;         // V0 intersected with sum_ij Im Phi_ij
  int dim_dv0_single = 0;  // span of the V0 intersected with Im Phi_ij, one (i,j) at a time
  bool flat_character = false;
  Report report;

  int dim_vph() const { return dim_v0 - dim_dv0; }
  int dim_vph_single() const { return dim_v0 - dim_dv0_single; }
};

namespace detail {

struct ModuliDims {
  int v0 = 0, dv0 = 0, dv0_single = 0;
  bool operator==(const ModuliDims&) const = default;
};

inline ModuliDims moduli_dims(const Mat2<SparseMatrix>& M) {
  const CyclotomicField& f = M[0][0].field();
  const int n = M[0][0].rows();
  auto I = SparseMatrix::identity(f, n);
  std::vector<DenseMatrix> phi;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) phi.emplace_back(i == j ? M[i][j] - I : M[i][j]);
  DenseMatrix stacked(f, 0, n), images(f, n, 0);
  for (const auto& x : phi) {
    stacked = vconcat(stacked, x);
    images = hconcat(images, x);
  }
  ModuliDims d;
  DenseMatrix V0 = stacked.nullspace();
  d.v0 = V0.cols();
  if (d.v0 == 0) return d;
  d.dv0 = d.v0 + images.rank() - hconcat(V0, images).rank();
  // V0 meets Im Phi_ij: solutions of V0 a = Phi b give the vectors V0 a.
  DenseMatrix all(f, n, 0);
  for (const auto& x : phi) {
    DenseMatrix neg(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) neg(i, j) = -x(i, j);
    DenseMatrix sol = hconcat(V0, neg).nullspace();
    DenseMatrix coeff(f, d.v0, sol.cols());
    for (int i = 0; i < d.v0; ++i)
      for (int j = 0; j < sol.cols(); ++j) coeff(i, j) = sol(i, j);
    all = hconcat(all, DenseMatrix(SparseMatrix(V0.to_sparse() * coeff.to_sparse())));
  }
  d.dv0_single = all.cols() == 0 ? 0 : all.rank();
  return d;
}

}  // namespace detail

/// Exact dimensions for given monodromy images. `seed` drives the change-of-basis recheck.
inline ModuliReport moduli_reduce_operators(const Mat2<SparseMatrix>& M, bool flat_character, int genus, std::uint64_t seed = 1) {
  const CyclotomicField& f = M[0][0].field();
  const int n = M[0][0].rows();
  const int p = f.order();
  ModuliReport m;
  m.dim = n;
  m.flat_character = flat_character;
  Report& r = m.report;
  r.command = "moduli-dim";
  r.p = p;
  r.genus = genus;
  auto d = detail::moduli_dims(M);
  m.dim_v0 = d.v0;
  m.dim_dv0 = d.dv0;
  m.dim_dv0_single = d.dv0_single;
  if (!flat_character) r.add_info("central character", "not flat: chi(M11^p) != 1 or chi(M12^p), chi(M21^p) != 0, so V0 = 0 is expected");
  auto S = random_invertible(f, n, seed);
  auto Si = sparse_inverse(S);
  Mat2<SparseMatrix> Mc;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) Mc[i][j] = Si * M[i][j] * S;
  auto dc = detail::moduli_dims(Mc);
  r.add("dims unchanged under a random change of basis", dc == d,
        "V0 " + std::to_string(dc.v0) + ", dV0 " + std::to_string(dc.dv0) + ", dV0 single " + std::to_string(dc.dv0_single));
  if (!flat_character) r.add("non-flat character gives V0 = 0", d.v0 == 0, std::to_string(d.v0));
  r.add_info("dim V0", std::to_string(d.v0));
  r.add_info("dim dV0 (sum over ij)", std::to_string(d.dv0));
  r.add_info("dim dV0 (single constraint)", std::to_string(d.dv0_single));
  r.add_info("dim V_ph (sum over ij)", std::to_string(d.v0 - d.dv0));
  r.add_info("dim V_ph (single constraint)", std::to_string(d.v0 - d.dv0_single));
  if (genus == 1) r.add_info("Verlinde value (conjecture, not asserted)", std::to_string(p - 1));
  r.data["dim"] = n;
  r.data["dim_v0"] = d.v0;
  r.data["dim_dv0"] = d.dv0;
  r.data["dim_dv0_single"] = d.dv0_single;
  r.data["dim_vph"] = d.v0 - d.dv0;
  r.data["dim_vph_single"] = d.v0 - d.dv0_single;
  r.data["flat_character"] = flat_character;
  return m;
}

inline bool flat_character(const Mat2<SparseMatrix>& M) {
  const int p = M[0][0].field().order();
  auto m11 = M[0][0].pow(p).scalar_value(), m12 = M[0][1].pow(p).scalar_value(), m21 = M[1][0].pow(p).scalar_value();
  return m11 && m12 && m21 && *m11 == RootScalar(M[0][0].field(), Rational(1)) && m12->is_zero() && m21->is_zero();
}

inline ModuliReport moduli_reduce(const Representation& rep, std::uint64_t seed = 1) {
  if (rep.kind != "l1" && rep.kind != "genus") throw std::invalid_argument("moduli_reduce needs an L1 or genus representation");
  auto M = monodromies(rep)[1];
  return moduli_reduce_operators(M, flat_character(M), rep.genus, seed);
}

// ---------------------------------------------------------------------------
// Unitarity (necessary condition on the character)

inline Mat2<RootScalar> frobenius_monodromy(const std::vector<Mat2<RootScalar>>& A, const std::vector<Mat2<RootScalar>>& B) {
  if (A.empty() || A.size() != B.size()) throw std::invalid_argument("unitarity_check needs g >= 1 pairs of Frobenius matrices");
  const CyclotomicField& f = *A.front()[0][0].field();
  RootScalar one(f, Rational(1)), zero(f, Rational());
  Mat2<RootScalar> M = {{{one, zero}, {zero, one}}};
  for (std::size_t h = A.size(); h-- > 0;)
    M = mat2_mul(M, mat2_mul(mat2_mul(mat2_mul(B[h], rs_inverse_unimodular(A[h])), rs_inverse_unimodular(B[h])), A[h]));
  return M;
}

/// A_i M = M A_i and B_i M = M B_i for every handle, M the Frobenius monodromy.
inline bool unitarity_check(const std::vector<Mat2<RootScalar>>& A, const std::vector<Mat2<RootScalar>>& B) {
  auto M = frobenius_monodromy(A, B);
  auto same = [](const Mat2<RootScalar>& x, const Mat2<RootScalar>& y) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (!(x[i][j] == y[i][j])) return false;
    return true;
  };
  for (std::size_t h = 0; h < A.size(); ++h)
    if (!same(mat2_mul(A[h], M), mat2_mul(M, A[h])) || !same(mat2_mul(B[h], M), mat2_mul(M, B[h]))) return false;
  return true;
}

/// The Frobenius matrices of every handle of a representation (scalars of the p-th powers).
inline std::pair<std::vector<Mat2<RootScalar>>, std::vector<Mat2<RootScalar>>> character_matrices(const Representation& rep) {
  std::vector<Mat2<RootScalar>> A, B;
  for (int h = 1; h <= rep.genus; ++h) {
    auto a = frobenius_character(rep, false, h), b = frobenius_character(rep, true, h);
    if (!a || !b) throw std::domain_error("central elements of handle " + std::to_string(h) + " do not act by scalars");
    A.push_back(*a);
    B.push_back(*b);
  }
  return {A, B};
}

}  // namespace qgraph
