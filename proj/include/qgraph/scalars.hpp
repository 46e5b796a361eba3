#pragma once

// Exact coefficient arithmetic in two regimes:
//   FormalScalar  Laurent polynomials in v over Q, with q = v^2.
//   RootScalar    elements of Q(zeta_p), p odd, stored modulo the p-th cyclotomic polynomial.
// The embedding v -> zeta^((p+1)/2) sends q to zeta and keeps q^(1/2) inside Q(zeta_p).

#include <qgraph/poly.hpp>
#include <qgraph/rational.hpp>

#include <boost/container/small_vector.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgraph {

// ---------------------------------------------------------------------------
// FormalScalar

class FormalScalar {
 public:
  FormalScalar() = default;
  FormalScalar(int r) : FormalScalar(Rational(r)) {}  // NOLINT
  FormalScalar(const Rational& r) {                     // NOLINT
    if (!r.is_zero()) c_.push_back(r);
  }
  /// c * v^k
  static FormalScalar v_pow(int k, const Rational& c = Rational(1)) {
    FormalScalar s(c);
    if (!s.c_.empty()) s.low_ = k;
    return s;
  }
  static FormalScalar q_pow(int k, const Rational& c = Rational(1)) { return v_pow(2 * k, c); }
  static FormalScalar from_coeffs(int low, std::vector<Rational> c) {
    FormalScalar s;
    s.low_ = low;
    s.c_ = std::move(c);
    s.trim();
    return s;
  }

  bool is_zero() const { return c_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  Rational coeff(int k) const {
    int i = k - low_;
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational();
  }
  const std::vector<Rational>& coeffs() const { return c_; }
  /// {exponent, coefficient} pairs of nonzero terms.
  std::map<int, Rational> terms() const {
    std::map<int, Rational> m;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) m.emplace(low_ + static_cast<int>(i), c_[i]);
    return m;
  }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && low_ == 0); }
  bool is_monomial() const { return c_.size() == 1; }

  friend FormalScalar operator+(const FormalScalar& a, const FormalScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.low_, b.low_);
    int hi = std::max(a.high(), b.high());
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[a.low_ - lo + i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[b.low_ - lo + i] += b.c_[i];
    return from_coeffs(lo, std::move(c));
  }
  FormalScalar operator-() const {
    FormalScalar r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend FormalScalar operator-(const FormalScalar& a, const FormalScalar& b) { return a + (-b); }
  friend FormalScalar operator*(const FormalScalar& a, const FormalScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return from_coeffs(a.low_ + b.low_, std::move(c));
  }
  FormalScalar& operator+=(const FormalScalar& o) { return *this = *this + o; }
  FormalScalar& operator-=(const FormalScalar& o) { return *this = *this - o; }
  FormalScalar& operator*=(const FormalScalar& o) { return *this = *this * o; }
  friend bool operator==(const FormalScalar& a, const FormalScalar& b) {
    return a.c_ == b.c_ && (a.c_.empty() || a.low_ == b.low_);
  }
  friend bool operator!=(const FormalScalar& a, const FormalScalar& b) { return !(a == b); }

  /// Inverse of a monomial c*v^k; anything else is not a unit of the Laurent ring.
  FormalScalar inverse() const {
    if (!is_monomial()) throw std::domain_error("FormalScalar: only monomials are invertible");
    return v_pow(-low_, c_[0].inverse());
  }

  /// Polynomial in v obtained after multiplying by v^(-low()).
  UPoly shifted_poly() const { return UPoly(c_); }

  Rational eval(const Rational& v) const {
    Rational acc;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) acc = acc * v + c_[i];
    return acc * pow(v, low_);
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      int e = low_ + static_cast<int>(i);
      os << "(" << c_[i] << ")";
      if (e != 0) os << "*v^" << e;
    }
    return os.str();
  }

 private:
  void trim() {
    std::size_t b = 0;
    while (b < c_.size() && c_[b].is_zero()) ++b;
    if (b == c_.size()) {
      c_.clear();
      low_ = 0;
      return;
    }
    std::size_t e = c_.size();
    while (c_[e - 1].is_zero()) --e;
    if (b > 0 || e < c_.size()) c_ = std::vector<Rational>(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
    low_ += static_cast<int>(b);
  }

  int low_ = 0;
  std::vector<Rational> c_;
};

/// 1 + q^2 + ... + q^(2(n-1)); the q-integer (n)_q = (1 - q^(2n)) / (1 - q^2).
inline FormalScalar q_integer(int n) {
  FormalScalar s;
  for (int i = 0; i < n; ++i) s += FormalScalar::q_pow(2 * i);
  return s;
}
inline FormalScalar q_factorial(int n) {
  FormalScalar s(1);
  for (int i = 1; i <= n; ++i) s *= q_integer(i);
  return s;
}

// ---------------------------------------------------------------------------
// Cyclotomic field Q(zeta_p)

class CyclotomicField {
 public:
  static const CyclotomicField& get(int p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("root of unity order must be odd and >= 3, got " + std::to_string(p));
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CyclotomicField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[p];
    if (!slot) slot.reset(new CyclotomicField(p));
    return *slot;
  }

  int order() const { return p_; }
  int degree() const { return n_; }
  const UPoly& modulus() const { return phi_; }
  /// Coefficients of x^k mod Phi_p, 0 <= k <= 2n-2.
  const std::vector<Rational>& power_row(int k) const { return pow_table_[k]; }

 private:
  explicit CyclotomicField(int p) : p_(p), phi_(cyclotomic_polynomial(p)) {
    n_ = phi_.degree();
    int top = std::max(2 * n_ - 1, p_);
    for (int k = 0; k < top; ++k) {
      UPoly r = UPoly::divmod(UPoly::monomial(k), phi_).second;
      std::vector<Rational> row(n_);
      for (int i = 0; i <= r.degree(); ++i) row[i] = r.coeff(i);
      pow_table_.push_back(std::move(row));
    }
  }
  int p_;
  int n_ = 0;
  UPoly phi_;
  std::vector<std::vector<Rational>> pow_table_;
};

// ---------------------------------------------------------------------------
// RootScalar

class RootScalar {
 public:
  using Coeffs = boost::container::small_vector<Rational, 4>;

  RootScalar() = default;
  RootScalar(const CyclotomicField& f, const Rational& r) : f_(&f), c_(f.degree()) { c_[0] = r; }
  RootScalar(const CyclotomicField& f, Coeffs c) : f_(&f), c_(std::move(c)) { c_.resize(f.degree()); }
  static RootScalar zeta_pow(const CyclotomicField& f, long k, const Rational& c = Rational(1)) {
    long p = f.order();
    long e = ((k % p) + p) % p;
    const auto& row = f.power_row(static_cast<int>(e));
    RootScalar s(f, Rational());
    for (int i = 0; i < f.degree(); ++i) s.c_[i] = row[i] * c;
    return s;
  }

  const CyclotomicField* field() const { return f_; }
  int order() const { return f_ ? f_->order() : 0; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  Rational rational_part() const { return c_.empty() ? Rational() : c_[0]; }
  /// Coefficient vector in the power basis 1, zeta, ..., zeta^(n-1).
  std::vector<Rational> coeffs() const { return {c_.begin(), c_.end()}; }
  /// Complex conjugation zeta -> zeta^-1.
  RootScalar conj() const {
    RootScalar r(*f_, Coeffs(static_cast<std::size_t>(f_->degree())));
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) r += zeta_pow(*f_, -static_cast<long>(i), c_[i]);
    return r;
  }

  friend RootScalar operator+(const RootScalar& a, const RootScalar& b) {
    if (!a.f_) return b;
    if (!b.f_) return a;
    check_same(a, b);
    RootScalar r(a);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  RootScalar operator-() const {
    RootScalar r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend RootScalar operator-(const RootScalar& a, const RootScalar& b) { return a + (-b); }
  friend RootScalar operator*(const RootScalar& a, const RootScalar& b) {
    if (!a.f_ || !b.f_) return {};
    check_same(a, b);
    const int n = a.f_->degree();
    boost::container::small_vector<Rational, 8> prod(static_cast<std::size_t>(2 * n - 1));
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (b.c_[j].is_zero()) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
        any = true;
      }
    }
    RootScalar r(*a.f_, Rational());
    if (!any) return r;
    for (int k = 0; k < 2 * n - 1; ++k) {
      if (prod[k].is_zero()) continue;
      if (k < n) {
        r.c_[k] += prod[k];
      } else {
        const auto& row = a.f_->power_row(k);
        for (int i = 0; i < n; ++i)
          if (!row[i].is_zero()) r.c_[i] += prod[k] * row[i];
      }
    }
    return r;
  }
  friend RootScalar operator*(const Rational& s, const RootScalar& a) {
    RootScalar r(a);
    for (auto& x : r.c_) x *= s;
    return r;
  }
  RootScalar& operator+=(const RootScalar& o) { return *this = *this + o; }
  RootScalar& operator-=(const RootScalar& o) { return *this = *this - o; }
  RootScalar& operator*=(const RootScalar& o) { return *this = *this * o; }

  friend bool operator==(const RootScalar& a, const RootScalar& b) {
    if (!a.f_ || !b.f_) return a.is_zero() && b.is_zero();
    return a.f_ == b.f_ && a.c_ == b.c_;
  }
  friend bool operator!=(const RootScalar& a, const RootScalar& b) { return !(a == b); }

  RootScalar inverse() const {
    if (!f_ || is_zero()) throw std::domain_error("RootScalar: inverse of zero");
    UPoly g, s, t;
    UPoly::ext_gcd(UPoly(std::vector<Rational>(c_.begin(), c_.end())), f_->modulus(), g, s, t);
    if (g.degree() != 0) throw std::domain_error("RootScalar: element not invertible");
    Coeffs c(f_->degree());
    UPoly r = UPoly::divmod(s, f_->modulus()).second;
    for (int i = 0; i <= r.degree(); ++i) c[i] = r.coeff(i);
    return RootScalar(*f_, std::move(c));
  }
  friend RootScalar operator/(const RootScalar& a, const RootScalar& b) { return a * b.inverse(); }

  RootScalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RootScalar r = RootScalar(*f_, Rational(1)), x(*this);
    while (e > 0) {
      if (e & 1) r *= x;
      x *= x;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i] << ")";
      if (i > 0) os << "*z^" << i;
    }
    return os.str();
  }

 private:
  static void check_same(const RootScalar& a, const RootScalar& b) {
    if (a.f_ != b.f_) throw std::invalid_argument("RootScalar: mixing different roots of unity");
  }
  const CyclotomicField* f_ = nullptr;
  Coeffs c_;
};

inline RootScalar pow(const RootScalar& b, long e) { return b.pow(e); }

// ---------------------------------------------------------------------------
// specialize / derivative_at_one

/// Evaluation homomorphism v -> zeta^((p+1)/2).
inline RootScalar specialize(const FormalScalar& x, int p) {
  const CyclotomicField& f = CyclotomicField::get(p);
  RootScalar r(f, Rational());
  long half = (p + 1) / 2;
  for (const auto& [e, c] : x.terms()) r += RootScalar::zeta_pow(f, half * e, c);
  return r;
}

/// d/dq at q = 1, via d/dq = (1/(2v)) d/dv.
inline Rational derivative_at_one(const FormalScalar& x) {
  Rational s;
  for (const auto& [e, c] : x.terms()) s += c * Rational(e);
  return s * Rational(1, 2);
}

// ---------------------------------------------------------------------------
// RationalExpr: quotient of Laurent polynomials in v, kept reduced.

class RationalExpr {
 public:
  RationalExpr(const FormalScalar& num, const FormalScalar& den) {  // NOLINT
    if (den.is_zero()) throw std::domain_error("RationalExpr: zero denominator");
    // Write num/den = v^shift * N(v)/D(v) with N, D ordinary polynomials.
    shift_ = num.is_zero() ? 0 : num.low() - den.low();
    UPoly n = num.shifted_poly(), d = den.shifted_poly();
    if (num.is_zero()) {
      num_ = UPoly();
      den_ = UPoly::constant(1);
      shift_ = 0;
      return;
    }
    UPoly g = UPoly::gcd(n, d);
    num_ = UPoly::divmod(n, g).first;
    den_ = UPoly::divmod(d, g).first;
    normalize();
  }

  const UPoly& numerator() const { return num_; }
  const UPoly& denominator() const { return den_; }
  int v_shift() const { return shift_; }

  RationalExpr reduced() const { return *this; }

  friend bool operator==(const RationalExpr& a, const RationalExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_ && (a.num_.is_zero() || a.shift_ == b.shift_);
  }

 private:
  // Denominator: content 1 over Z with positive leading coefficient; numerator absorbs the scale.
  void normalize() {
    Rational l = den_.lead();
    num_ = l.inverse() * num_;
    den_ = l.inverse() * den_;
    mpz_class lcm = 1;
    for (const auto& c : den_.coeffs()) {
      mpq_class q = c.to_mpq();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    }
    mpz_class g = 0;
    for (const auto& c : den_.coeffs()) {
      mpq_class q = c.to_mpq() * lcm;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    }
    Rational scale(mpq_class(lcm, g));
    num_ = scale * num_;
    den_ = scale * den_;
  }

  UPoly num_, den_;
  int shift_ = 0;
};

class NotCentralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value of the reduced expression at v = zeta^((p+1)/2).
inline RootScalar limit_at_root(const RationalExpr& x, int p) {
  auto to_root = [&](const UPoly& u) {
    return specialize(FormalScalar::from_coeffs(0, u.coeffs()), p);
  };
  RootScalar d = to_root(x.denominator());
  if (d.is_zero())
    throw NotCentralError("pole at the root of unity survives cancellation (argument was not central)");
  RootScalar n = to_root(x.numerator()) * specialize(FormalScalar::v_pow(x.v_shift()), p);
  return n / d;
}

// ---------------------------------------------------------------------------
// Scalar contexts: uniform constructors for generic code.

template <class S>
struct ScalarContext;

template <>
struct ScalarContext<FormalScalar> {
  FormalScalar zero() const { return {}; }
  FormalScalar one() const { return FormalScalar(1); }
  FormalScalar from(const Rational& r) const { return FormalScalar(r); }
  FormalScalar v_pow(int k) const { return FormalScalar::v_pow(k); }
  FormalScalar q_pow(int k) const { return FormalScalar::q_pow(k); }
  FormalScalar embed(const FormalScalar& x) const { return x; }
  bool is_root() const { return false; }
  int order() const { return 0; }
  friend bool operator==(const ScalarContext&, const ScalarContext&) { return true; }
};

template <>
struct ScalarContext<RootScalar> {
  explicit ScalarContext(int p_) : field(&CyclotomicField::get(p_)) {}
  const CyclotomicField* field;
  RootScalar zero() const { return RootScalar(*field, Rational()); }
  RootScalar one() const { return RootScalar(*field, Rational(1)); }
  RootScalar from(const Rational& r) const { return RootScalar(*field, r); }
  RootScalar v_pow(int k) const { return RootScalar::zeta_pow(*field, static_cast<long>(k) * ((field->order() + 1) / 2)); }
  RootScalar q_pow(int k) const { return RootScalar::zeta_pow(*field, k); }
  RootScalar embed(const FormalScalar& x) const { return specialize(x, field->order()); }
  bool is_root() const { return true; }
  int order() const { return field->order(); }
  friend bool operator==(const ScalarContext& a, const ScalarContext& b) { return a.field == b.field; }
};

using FormalContext = ScalarContext<FormalScalar>;
using RootContext = ScalarContext<RootScalar>;

inline std::string to_string(const FormalScalar& s) { return s.str(); }
inline std::string to_string(const RootScalar& s) { return s.str(); }
inline std::string to_string(const Rational& s) { return s.str(); }

}  // namespace qgraph
