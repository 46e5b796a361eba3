#pragma once

// Exact rational numbers. Small values live in a pair of int64 words; anything
// that overflows is promoted to a GMP rational and demoted again once it fits.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qgraph {

class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}        // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v) {}       // NOLINT
  Rational(long long v) : num_(v) {}  // NOLINT
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    set_small_checked(static_cast<__int128>(n), static_cast<__int128>(d));
  }
  explicit Rational(const mpq_class& q) { assign_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "n", "-n", "n/d".
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_from(num_), mpz_from(den_));
    q.canonicalize();
    return q;
  }
  std::string numerator_str() const { return big_ ? big_->get_num().get_str() : std::to_string(num_); }
  std::string denominator_str() const { return big_ ? big_->get_den().get_str() : std::to_string(den_); }
  std::string str() const {
    return is_integer() ? numerator_str() : numerator_str() + "/" + denominator_str();
  }
  double to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const {
    Rational r(*this);
    if (r.big_) {
      *r.big_ = -*r.big_;
    } else if (r.num_ == INT64_MIN) {
      r.assign_big(-to_mpq());
    } else {
      r.num_ = -r.num_;
    }
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        Rational r;
        r.set_small_checked(static_cast<__int128>(a.num_) + b.num_, 1);
        return r;
      }
      __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      Rational r;
      r.set_small_checked(n, d);
      return r;
    }
    return Rational(a.to_mpq() + b.to_mpq());
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      __int128 n = static_cast<__int128>(a.num_) * b.num_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      Rational r;
      r.set_small_checked(n, d);
      return r;
    }
    return Rational(a.to_mpq() * b.to_mpq());
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return a * b.inverse();
  }
  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    if (big_) return Rational(mpq_class(1) / *big_);
    Rational r;
    r.set_small_checked(den_, num_);
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a big value never fits the small form
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_)
      return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    return a.to_mpq() < b.to_mpq();
  }

  std::size_t hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    return std::hash<std::int64_t>{}(num_) * 31u + std::hash<std::int64_t>{}(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  /// Numerator and denominator when both fit in int64.
  bool small_parts(std::int64_t& n, std::int64_t& d) const {
    if (big_) return false;
    n = num_;
    d = den_;
    return true;
  }
  static Rational from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    Rational r;
    r.set_small_checked(n, d);
    return r;
  }

 private:
  static mpz_class mpz_from(std::int64_t v) { return mpz_from128(v); }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void set_small_checked(__int128 n, __int128 d) {
    big_.reset();
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    if (d != 1) {
      __int128 g = gcd128(n, d);
      if (g > 1) {
        n /= g;
        d /= g;
      }
    }
    if (n >= INT64_MIN + 1 && n <= INT64_MAX && d <= INT64_MAX) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return;
    }
    assign_big(mpq_class(mpz_from128(n), mpz_from128(d)));
  }

  static mpz_class mpz_from128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    auto hi = static_cast<std::uint64_t>(u >> 64);
    auto lo = static_cast<std::uint64_t>(u);
    mpz_class z(static_cast<unsigned long>(hi));
    z <<= 64;
    z += mpz_class(static_cast<unsigned long>(lo));
    return neg ? mpz_class(-z) : z;
  }

  void assign_big(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t()) && n.get_si() != INT64_MIN) {
      big_.reset();
      num_ = n.get_si();
      den_ = d.get_si();
      return;
    }
    big_ = std::make_unique<mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline Rational pow(const Rational& b, int e) {
  if (e < 0) return pow(b.inverse(), -e);
  Rational r(1), x(b);
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

}  // namespace qgraph
