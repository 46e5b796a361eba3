#pragma once

// Dense univariate polynomials over the rationals.

#include <qgraph/rational.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qgraph {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const Rational& r) { return UPoly(std::vector<Rational>{r}); }
  static UPoly monomial(int deg, const Rational& r = Rational(1)) {
    std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
    c.back() = r;
    return UPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Rational(); }
  const Rational& lead() const { return c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
  }
  UPoly operator-() const {
    std::vector<Rational> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const Rational& r, const UPoly& a) { return UPoly::constant(r) * a; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; returns {quotient, remainder}.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
    std::vector<Rational> r = a.c_;
    int db = b.degree();
    if (a.degree() < db) return {UPoly(), a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db) + 1);
    Rational inv = b.lead().inverse();
    for (int i = a.degree(); i >= db; --i) {
      if (r[i].is_zero()) continue;
      Rational f = r[i] * inv;
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    Rational inv = lead().inverse();
    std::vector<Rational> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * inv;
    return UPoly(std::move(c));
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// s*a + t*b = gcd(a, b) (monic).
  static void ext_gcd(const UPoly& a, const UPoly& b, UPoly& g, UPoly& s, UPoly& t) {
    UPoly r0 = a, r1 = b, s0 = constant(1), s1, t0, t1 = constant(1);
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      UPoly s2 = s0 - q * s1;
      s0 = std::move(s1);
      s1 = std::move(s2);
      UPoly t2 = t0 - q * t1;
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    Rational inv = r0.lead().inverse();
    g = inv * r0;
    s = inv * s0;
    t = inv * t0;
  }

  Rational eval(const Rational& x) const {
    Rational acc;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  UPoly derivative() const {
    if (degree() <= 0) return {};
    std::vector<Rational> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UPoly(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// The n-th cyclotomic polynomial, by exact division of x^n - 1 by the lower ones.
inline UPoly cyclotomic_polynomial(int n) {
  UPoly num = UPoly::monomial(n) - UPoly::constant(1);
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = UPoly::divmod(num, cyclotomic_polynomial(d)).first;
  return num;
}

}  // namespace qgraph
