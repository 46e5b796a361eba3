#pragma once

// Exact matrices over Q(zeta_p): a row-sparse matrix for representation operators and a dense
// matrix for elimination (rank, nullspace, inverse).
//
// Products first try an integer kernel: both operands are scaled to a common denominator and
// multiplied with __int128 accumulators. When entries are too large the generic RootScalar
// path is used.

#include <qgraph/scalars.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgraph {

class SparseMatrix {
 public:
  using Entry = std::pair<int, RootScalar>;
  using Row = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(const CyclotomicField& f, int rows, int cols) : f_(&f), rows_(static_cast<std::size_t>(rows)), ncols_(cols) {}

  static SparseMatrix identity(const CyclotomicField& f, int n) { return scalar(f, n, RootScalar(f, Rational(1))); }
  static SparseMatrix scalar(const CyclotomicField& f, int n, const RootScalar& s) {
    SparseMatrix m(f, n, n);
    if (!s.is_zero())
      for (int i = 0; i < n; ++i) m.rows_[i].emplace_back(i, s);
    return m;
  }

  const CyclotomicField& field() const { return *f_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return ncols_; }
  const Row& row(int i) const { return rows_.at(static_cast<std::size_t>(i)); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }
  bool is_zero() const {
    for (const auto& r : rows_)
      if (!r.empty()) return false;
    return true;
  }

  RootScalar at(int i, int j) const {
    const auto& r = row(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == j) return it->second;
    return RootScalar(*f_, Rational());
  }

  /// Adds v at (i, j).
  void add(int i, int j, const RootScalar& v) {
    if (v.is_zero()) return;
    if (j < 0 || j >= ncols_) throw std::out_of_range("SparseMatrix::add column out of range");
    auto& r = rows_.at(static_cast<std::size_t>(i));
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      it->second += v;
      if (it->second.is_zero()) r.erase(it);
    } else {
      r.insert(it, Entry(j, v));
    }
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, false); }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, true); }
  SparseMatrix operator-() const {
    SparseMatrix r(*this);
    for (auto& row : r.rows_)
      for (auto& e : row) e.second = -e.second;
    return r;
  }
  friend SparseMatrix operator*(const RootScalar& s, const SparseMatrix& a) {
    SparseMatrix r(*a.f_, a.rows(), a.cols());
    if (s.is_zero()) return r;
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      r.rows_[i].reserve(a.rows_[i].size());
      for (const auto& [j, v] : a.rows_[i]) r.rows_[i].emplace_back(j, s * v);
    }
    return r;
  }
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("SparseMatrix: shape mismatch in product");
    SparseMatrix r(*a.f_, a.rows(), b.cols());
    if (!integer_product(a, b, r)) generic_product(a, b, r);
    return r;
  }
  SparseMatrix& operator+=(const SparseMatrix& o) { return *this = *this + o; }
  SparseMatrix& operator-=(const SparseMatrix& o) { return *this = *this - o; }
  SparseMatrix& operator*=(const SparseMatrix& o) { return *this = *this * o; }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      if (a.rows_[i].size() != b.rows_[i].size()) return false;
      for (std::size_t k = 0; k < a.rows_[i].size(); ++k)
        if (a.rows_[i][k].first != b.rows_[i][k].first || a.rows_[i][k].second != b.rows_[i][k].second) return false;
    }
    return true;
  }
  friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

  SparseMatrix pow(int n) const {
    if (n < 0) throw std::invalid_argument("SparseMatrix::pow: negative exponent");
    SparseMatrix r = identity(*f_, rows()), x = *this;
    while (n > 0) {
      if (n & 1) r = r * x;
      n >>= 1;
      if (n > 0) x = x * x;
    }
    return r;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(*f_, cols(), rows());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [j, v] : rows_[i]) t.rows_[static_cast<std::size_t>(j)].emplace_back(static_cast<int>(i), v);
    return t;
  }

  /// s if the matrix is s * identity.
  std::optional<RootScalar> scalar_value() const {
    if (rows() != cols()) return std::nullopt;
    if (rows() == 0) return RootScalar(*f_, Rational());
    RootScalar s = at(0, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (s.is_zero()) {
        if (!rows_[i].empty()) return std::nullopt;
        continue;
      }
      if (rows_[i].size() != 1 || rows_[i][0].first != static_cast<int>(i) || rows_[i][0].second != s) return std::nullopt;
    }
    return s;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& e : rows_[i])
        if (e.first != static_cast<int>(i)) return false;
    return true;
  }

  /// A (x) B with the index of A major.
  friend SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix r(*a.f_, a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int k = 0; k < b.rows(); ++k) {
        auto& out = r.rows_[static_cast<std::size_t>(i * b.rows() + k)];
        for (const auto& [j, x] : a.row(i))
          for (const auto& [l, y] : b.row(k)) out.emplace_back(j * b.cols() + l, x * y);
      }
    return r;
  }

  /// Short residual description for reports.
  std::string summary() const {
    if (is_zero()) return "0";
    return std::to_string(nnz()) + " nonzero entries";
  }

  void set_row(int i, Row r) { rows_.at(static_cast<std::size_t>(i)) = std::move(r); }

 private:
  static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, bool subtract) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("SparseMatrix: shape mismatch");
    SparseMatrix r(*a.f_, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      const auto &x = a.rows_[i], &y = b.rows_[i];
      auto& out = r.rows_[i];
      out.reserve(x.size() + y.size());
      std::size_t s = 0, t = 0;
      while (s < x.size() || t < y.size()) {
        if (t == y.size() || (s < x.size() && x[s].first < y[t].first)) {
          out.push_back(x[s++]);
        } else if (s == x.size() || y[t].first < x[s].first) {
          out.emplace_back(y[t].first, subtract ? -y[t].second : y[t].second);
          ++t;
        } else {
          RootScalar v = subtract ? x[s].second - y[t].second : x[s].second + y[t].second;
          if (!v.is_zero()) out.emplace_back(x[s].first, std::move(v));
          ++s;
          ++t;
        }
      }
    }
    return r;
  }

  static void generic_product(const SparseMatrix& a, const SparseMatrix& b, SparseMatrix& r) {
    const int n = b.cols();
    std::vector<RootScalar> acc(static_cast<std::size_t>(n));
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> touched;
    for (int i = 0; i < a.rows(); ++i) {
      touched.clear();
      for (const auto& [k, x] : a.row(i))
        for (const auto& [j, y] : b.row(k)) {
          if (!used[j]) {
            used[j] = 1;
            acc[j] = x * y;
            touched.push_back(j);
          } else {
            acc[j] += x * y;
          }
        }
      std::sort(touched.begin(), touched.end());
      auto& out = r.rows_[static_cast<std::size_t>(i)];
      for (int j : touched) {
        if (!acc[j].is_zero()) out.emplace_back(j, acc[j]);
        used[j] = 0;
      }
    }
  }

  struct IntRows {
    __int128 den = 1;
    std::vector<std::vector<int>> cols;
    std::vector<std::vector<std::int64_t>> coef;  // degree coefficients per entry
  };

  static constexpr __int128 kIntLimit = static_cast<__int128>(1) << 40;

  static bool to_int_rows(const SparseMatrix& m, IntRows& out) {
    const int d = m.f_->degree();
    __int128 den = 1;
    std::int64_t n = 0, dd = 1;
    for (const auto& row : m.rows_)
      for (const auto& e : row)
        for (const auto& c : e.second.coeffs()) {
          if (!c.small_parts(n, dd)) return false;
          if (dd == 1) continue;
          __int128 g = std::gcd(static_cast<long long>(den % dd), static_cast<long long>(dd));
          den = den / g * dd;
          if (den > kIntLimit) return false;
        }
    out.den = den;
    out.cols.assign(m.rows_.size(), {});
    out.coef.assign(m.rows_.size(), {});
    for (std::size_t i = 0; i < m.rows_.size(); ++i) {
      out.cols[i].reserve(m.rows_[i].size());
      out.coef[i].reserve(m.rows_[i].size() * static_cast<std::size_t>(d));
      for (const auto& e : m.rows_[i]) {
        out.cols[i].push_back(e.first);
        auto cs = e.second.coeffs();
        for (int t = 0; t < d; ++t) {
          cs[t].small_parts(n, dd);
          __int128 v = static_cast<__int128>(n) * (den / dd);
          if (v >= kIntLimit || v <= -kIntLimit) return false;
          out.coef[i].push_back(static_cast<std::int64_t>(v));
        }
      }
    }
    return true;
  }

  static bool integer_product(const SparseMatrix& a, const SparseMatrix& b, SparseMatrix& r) {
    IntRows A, B;
    if (!to_int_rows(a, A) || !to_int_rows(b, B)) return false;
    const CyclotomicField& f = *a.f_;
    const int d = f.degree(), w = 2 * d - 1, n = b.cols();
    // Reduction rows as integers.
    std::vector<std::vector<std::int64_t>> red(static_cast<std::size_t>(w), std::vector<std::int64_t>(d));
    std::int64_t rn = 0, rd = 1;
    for (int t = 0; t < w; ++t)
      for (int u = 0; u < d; ++u) {
        if (!f.power_row(t)[u].small_parts(rn, rd) || rd != 1) return false;
        red[t][u] = rn;
      }
    const __int128 den = A.den * B.den;
    std::vector<__int128> acc(static_cast<std::size_t>(n) * w, 0);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> touched;
    std::vector<__int128> res(static_cast<std::size_t>(d));
    RootScalar::Coeffs cs(static_cast<std::size_t>(d));
    for (int i = 0; i < a.rows(); ++i) {
      touched.clear();
      const auto& ac = A.cols[i];
      const auto& av = A.coef[i];
      for (std::size_t s = 0; s < ac.size(); ++s) {
        const int k = ac[s];
        const std::int64_t* x = &av[s * d];
        const auto& bc = B.cols[k];
        const auto& bv = B.coef[k];
        for (std::size_t t = 0; t < bc.size(); ++t) {
          const int j = bc[t];
          const std::int64_t* y = &bv[t * d];
          if (!used[j]) {
            used[j] = 1;
            touched.push_back(j);
          }
          __int128* z = &acc[static_cast<std::size_t>(j) * w];
          for (int u = 0; u < d; ++u) {
            if (x[u] == 0) continue;
            for (int v = 0; v < d; ++v) z[u + v] += static_cast<__int128>(x[u]) * y[v];
          }
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& out = r.rows_[static_cast<std::size_t>(i)];
      for (int j : touched) {
        __int128* z = &acc[static_cast<std::size_t>(j) * w];
        std::fill(res.begin(), res.end(), 0);
        for (int t = 0; t < w; ++t) {
          if (z[t] == 0) continue;
          for (int u = 0; u < d; ++u)
            if (red[t][u] != 0) res[u] += z[t] * red[t][u];
          z[t] = 0;
        }
        used[j] = 0;
        bool nz = false;
        for (int u = 0; u < d; ++u) nz = nz || res[u] != 0;
        if (!nz) continue;
        for (int u = 0; u < d; ++u) cs[u] = res[u] == 0 ? Rational() : Rational::from_i128(res[u], den);
        out.emplace_back(j, RootScalar(f, cs));
      }
    }
    return true;
  }

  const CyclotomicField* f_ = nullptr;
  std::vector<Row> rows_;
  int ncols_ = 0;
};

// ---------------------------------------------------------------------------
// Dense elimination.

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(const CyclotomicField& f, int rows, int cols)
      : f_(&f), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, RootScalar(f, Rational())) {}
  explicit DenseMatrix(const SparseMatrix& m) : DenseMatrix(m.field(), m.rows(), m.cols()) {
    for (int i = 0; i < m.rows(); ++i)
      for (const auto& [j, v] : m.row(i)) (*this)(i, j) = v;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const CyclotomicField& field() const { return *f_; }
  RootScalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const RootScalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  SparseMatrix to_sparse() const {
    SparseMatrix m(*f_, r_, c_);
    for (int i = 0; i < r_; ++i) {
      SparseMatrix::Row row;
      for (int j = 0; j < c_; ++j)
        if (!(*this)(i, j).is_zero()) row.emplace_back(j, (*this)(i, j));
      m.set_row(i, std::move(row));
    }
    return m;
  }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<int> rref() {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
      int sel = -1;
      for (int i = row; i < r_; ++i)
        if (!(*this)(i, col).is_zero()) {
          sel = i;
          break;
        }
      if (sel < 0) continue;
      if (sel != row)
        for (int j = 0; j < c_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
      RootScalar inv = RootScalar(*f_, Rational(1)) / (*this)(row, col);
      for (int j = col; j < c_; ++j)
        if (!(*this)(row, j).is_zero()) (*this)(row, j) = (*this)(row, j) * inv;
      for (int i = 0; i < r_; ++i) {
        if (i == row || (*this)(i, col).is_zero()) continue;
        RootScalar factor = (*this)(i, col);
        for (int j = col; j < c_; ++j)
          if (!(*this)(row, j).is_zero()) (*this)(i, j) -= factor * (*this)(row, j);
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }

  int rank() const {
    DenseMatrix t(*this);
    return static_cast<int>(t.rref().size());
  }

  /// Basis of {x : A x = 0}, one vector per column of the result.
  DenseMatrix nullspace() const {
    DenseMatrix t(*this);
    auto piv = t.rref();
    std::vector<char> is_piv(static_cast<std::size_t>(c_), 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<int> free;
    for (int j = 0; j < c_; ++j)
      if (!is_piv[j]) free.push_back(j);
    DenseMatrix n(*f_, c_, static_cast<int>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k) {
      n(free[k], static_cast<int>(k)) = RootScalar(*f_, Rational(1));
      for (std::size_t r = 0; r < piv.size(); ++r) n(piv[r], static_cast<int>(k)) = -t(static_cast<int>(r), free[k]);
    }
    return n;
  }

  DenseMatrix inverse() const {
    if (r_ != c_) throw std::invalid_argument("inverse of a non-square matrix");
    DenseMatrix aug(*f_, r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_ + i) = RootScalar(*f_, Rational(1));
    }
    auto piv = aug.rref();
    if (static_cast<int>(piv.size()) < r_ || piv.back() >= c_) throw std::domain_error("singular matrix");
    DenseMatrix inv(*f_, r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
  }

  /// Columns of a and b side by side.
  friend DenseMatrix hconcat(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.r_ != b.r_) throw std::invalid_argument("hconcat: row mismatch");
    DenseMatrix m(*a.f_, a.r_, a.c_ + b.c_);
    for (int i = 0; i < a.r_; ++i) {
      for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
      for (int j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
    }
    return m;
  }
  friend DenseMatrix vconcat(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.c_ != b.c_) throw std::invalid_argument("vconcat: column mismatch");
    DenseMatrix m(*a.f_, a.r_ + b.r_, a.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.r_; ++i)
      for (int j = 0; j < b.c_; ++j) m(a.r_ + i, j) = b(i, j);
    return m;
  }

 private:
  const CyclotomicField* f_ = nullptr;
  int r_ = 0, c_ = 0;
  std::vector<RootScalar> a_;
};

inline SparseMatrix sparse_inverse(const SparseMatrix& m) { return DenseMatrix(m).inverse().to_sparse(); }

/// Inverse of a diagonal matrix.
inline SparseMatrix diagonal_inverse(const SparseMatrix& m) {
  if (!m.is_diagonal()) throw std::invalid_argument("diagonal_inverse: matrix is not diagonal");
  SparseMatrix r(m.field(), m.rows(), m.cols());
  RootScalar one(m.field(), Rational(1));
  for (int i = 0; i < m.rows(); ++i) {
    RootScalar v = m.at(i, i);
    if (v.is_zero()) throw std::domain_error("diagonal_inverse: zero on the diagonal");
    r.add(i, i, one / v);
  }
  return r;
}

/// Random invertible matrix with small integer entries (unit lower times unit upper triangular,
/// then a random row permutation).
inline SparseMatrix random_invertible(const CyclotomicField& f, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-2, 2);
  SparseMatrix L(f, n, n), U(f, n, n);
  for (int i = 0; i < n; ++i) {
    L.add(i, i, RootScalar(f, Rational(1)));
    U.add(i, i, RootScalar(f, Rational(1)));
    for (int j = 0; j < i; ++j) L.add(i, j, RootScalar(f, Rational(dist(rng))));
    for (int j = i + 1; j < n; ++j) U.add(i, j, RootScalar(f, Rational(dist(rng))));
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  SparseMatrix P(f, n, n);
  for (int i = 0; i < n; ++i) P.add(i, perm[i], RootScalar(f, Rational(1)));
  return P * L * U;
}

}  // namespace qgraph
