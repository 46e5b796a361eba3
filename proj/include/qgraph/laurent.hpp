#pragma once

// Commutative multivariate Laurent polynomials over an exact coefficient ring.
// Used for the centre at a root of unity and for the classical (Poisson) side.

#include <qgraph/scalars.hpp>

#include <boost/container/small_vector.hpp>

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgraph {

using Exponents = boost::container::small_vector<int, 16>;

template <class C>
class LaurentPoly {
 public:
  using Terms = std::map<Exponents, C>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}
  static LaurentPoly constant(std::size_t nvars, const C& c) {
    LaurentPoly r(nvars);
    if (!c.is_zero()) r.terms_.emplace(Exponents(nvars, 0), c);
    return r;
  }
  static LaurentPoly monomial(std::size_t nvars, const Exponents& e, const C& c) {
    LaurentPoly r(nvars);
    if (!c.is_zero()) r.terms_.emplace(e, c);
    return r;
  }
  static LaurentPoly variable(std::size_t nvars, std::size_t i, const C& one, int power = 1) {
    Exponents e(nvars, 0);
    e[i] = power;
    return monomial(nvars, e, one);
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& e, const C& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a.adopt(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  LaurentPoly operator-() const {
    LaurentPoly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(std::max(a.nvars_, b.nvars_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(r.nvars_, 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend LaurentPoly operator*(const C& s, const LaurentPoly& a) {
    LaurentPoly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly pow(int n) const {
    if (n < 0) return inverse_monomial().pow(-n);
    LaurentPoly r = constant(nvars_, one_like());
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
  }

  bool is_monomial() const { return terms_.size() == 1; }
  /// Inverse of a single term (the only units of the Laurent ring over a field).
  LaurentPoly inverse_monomial() const {
    if (!is_monomial()) throw std::domain_error("LaurentPoly: inverse of a non-monomial");
    const auto& [e, c] = *terms_.begin();
    Exponents ne(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
    return monomial(nvars_, ne, invert(c));
  }

  /// Exact division by a monomial unit.
  LaurentPoly divide_by_monomial(const LaurentPoly& m) const { return *this * m.inverse_monomial(); }

  /// Ring homomorphism x_i -> images[i]; negative powers need images given in inverse_images.
  template <class D>
  LaurentPoly<D> substitute(const std::vector<LaurentPoly<D>>& images, const std::vector<LaurentPoly<D>>& inverse_images,
                            const std::function<D(const C&)>& coef_map, std::size_t out_vars) const {
    LaurentPoly<D> r(out_vars);
    for (const auto& [e, c] : terms_) {
      LaurentPoly<D> t = LaurentPoly<D>::constant(out_vars, coef_map(c));
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0) t *= images.at(i).pow(e[i]);
        if (e[i] < 0) t *= inverse_images.at(i).pow(-e[i]);
      }
      r += t;
    }
    return r;
  }

  /// Partial derivative with respect to variable i.
  LaurentPoly derivative(std::size_t i) const {
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents ne = e;
      ne[i] -= 1;
      r.add_term(ne, Rational(e[i]) * c);
    }
    return r;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << to_string(c) << ")";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        os << "*" << (i < names.size() ? names[i] : "x" + std::to_string(i));
        if (e[i] != 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  static C invert(const C& c) {
    if constexpr (std::is_same_v<C, Rational>) {
      return c.inverse();
    } else {
      return c.inverse();
    }
  }
  C one_like() const {
    if constexpr (std::is_same_v<C, RootScalar>) {
      if (!terms_.empty()) return RootScalar(*terms_.begin()->second.field(), Rational(1));
      throw std::logic_error("LaurentPoly<RootScalar>::pow of zero needs a field");
    } else {
      return C(Rational(1));
    }
  }
  void adopt(const LaurentPoly& b) {
    if (b.nvars_ > nvars_) {
      nvars_ = b.nvars_;
    }
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

using ClassicalPoly = LaurentPoly<Rational>;

}  // namespace qgraph
