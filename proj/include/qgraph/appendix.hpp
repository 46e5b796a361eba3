#pragma once

// Printed component relations, stored as text and evaluated into any ring with a symbol table.
//
// Syntax: sums of products of numbers, q, q^k, symbols and parenthesized sums; "(...)^k" for
// nonnegative k. Relations are "lhs = rhs". The symbol `la`, `lb` (quantum determinants) are 1.

#include <qgraph/scalars.hpp>

#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgraph {

struct TableRelation {
  std::string table;  // "ab", "cd", "am", "half-cd", "half-am"
  std::string text;
};

/// Recursive-descent evaluator. T needs +, -, T*T, S*T; `one` is the unit of T.
template <class S, class T>
class RelationParser {
 public:
  RelationParser(const ScalarContext<S>& ctx, std::function<T(const std::string&)> lookup, T one)
      : ctx_(ctx), lookup_(std::move(lookup)), one_(std::move(one)) {}

  T parse(const std::string& s) {
    src_ = s;
    pos_ = 0;
    T v = expr();
    skip();
    if (pos_ != src_.size()) fail("trailing input");
    return v;
  }

  /// lhs - rhs of "lhs = rhs".
  T relation(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("relation without '=': " + s);
    T l = parse(s.substr(0, eq));
    T r = parse(s.substr(eq + 1));
    return l - r;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("relation parse error (" + msg + ") at " + std::to_string(pos_) + " in '" + src_ + "'");
  }
  int integer() {
    skip();
    bool neg = false;
    if (pos_ < src_.size() && src_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    int v = std::stoi(src_.substr(start, pos_ - start));
    return neg ? -v : v;
  }
  T expr() {
    bool neg = eat('-');
    T acc = term();
    if (neg) acc = ctx_.from(Rational(-1)) * acc;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }
  T term() {
    T acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }
  T factor() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      T v = expr();
      if (!eat(')')) fail("expected ')'");
      if (eat('^')) {
        int k = integer();
        if (k < 0) fail("negative power of a sum");
        T r = one_;
        for (int i = 0; i < k; ++i) r = r * v;
        return r;
      }
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int n = integer();
      return ctx_.from(Rational(n)) * one_;
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    if (name.empty()) fail("expected factor");
    if (name == "q") {
      int k = 1;
      if (eat('^')) k = integer();
      return ctx_.q_pow(k) * one_;
    }
    if (name == "la" || name == "lb") return one_;
    return lookup_(name);
  }

  ScalarContext<S> ctx_;
  std::function<T(const std::string&)> lookup_;
  T one_;
  std::string src_;
  std::size_t pos_ = 0;
};

namespace detail {
inline std::string swap_letter(std::string s, char from, char to) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == from && std::isdigit(static_cast<unsigned char>(s[i + 1]))) s[i] = to;
  return s;
}
}  // namespace detail

/// Relations of the L_1 generators a_ij, b_ij (same-handle A-A, B-B and A-B).
inline std::vector<TableRelation> ab_table() {
  std::vector<std::string> aa = {
      "a11*a12 = q^-2*a12*a11",
      "a11*a21 = q^2*a21*a11",
      "a11*a22 = a22*a11",
      "a12*a21 - a21*a12 = -(1-q^-2)*a11*(a11-a22)",
      "a12*a21 = q^2*a21*a12 + (1-q^-2)*(la - a11*a11)",
      "a12*a22 - a22*a12 = -(1-q^-2)*a11*a12",
      "a21*a22 - a22*a21 = (1-q^-2)*a21*a11",
  };
  std::vector<TableRelation> out;
  for (const auto& s : aa) out.push_back({"ab", s});
  for (const auto& s : aa) {
    std::string t = detail::swap_letter(s, 'a', 'b');
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      if (t.compare(i, 2, "la") == 0) t.replace(i, 2, "lb");
    out.push_back({"ab", t});
  }
  for (const char* s : {
           "a11*b11 = q*b11*a11",
           "a11*b12 = q^-1*b12*a11",
           "a11*b21 = q*b21*a11 + (q-q^-1)*b11*a21",
           "a11*b22 = q^-1*b22*a11 + q^-1*(q-q^-1)^2*b11*a11 + (q-q^-1)*b12*a21",
           "a12*b11 = q*b11*a12 + (q-q^-1)*b12*a11",
           "a12*b12 = q*b12*a12",
           "a12*b21 = q^-1*b21*a12 + q^-1*(q-q^-1)^2*b12*a21 + q^-2*(q-q^-1)*(b22*a11 + b11*a22 + (q^-2-2)*b11*a11)",
           "a12*b22 = q^-1*b22*a12 + q^-1*(q-q^-1)^2*b11*a12 + (q-q^-1)*b12*a22 - q^-2*(q-q^-1)*b12*a11",
           "a21*b11 = q^-1*b11*a21",
           "a21*b12 = q^-1*b12*a21 + q^-2*(q-q^-1)*b11*a11",
           "a21*b21 = q*b21*a21",
           "a21*b22 = q*b22*a21 + (q-q^-1)*b21*a11",
           "a22*b11 = q^-1*b11*a22 + q^-1*(q-q^-1)^2*b11*a11 + (q-q^-1)*b12*a21",
           "a22*b22 = q*b22*a22 - q^-3*(q-q^-1)^2*b11*a11 + (q-q^-1)*b21*a12 - q^-2*(q-q^-1)*b12*a21",
           "a22*b21 = q^-1*b21*a22 + q^-1*(q-q^-1)^2*b21*a11 + (q-q^-1)*b22*a21 - q^-2*(q-q^-1)*b11*a21",
           "a22*b12 = q*b12*a22 + (q-q^-1)*b11*a12",
       })
    out.push_back({"ab", s});
  return out;
}

/// Relations between C = B^-1 A and D = B A^-1.
inline std::vector<TableRelation> cd_table() {
  std::vector<TableRelation> out;
  for (const char* s : {
           "c11*d11 = d11*c11 - q*(q-q^-1)*d12*c21",
           "c11*d21 = d21*c11 + q*(q-q^-1)*(d11-d22)*c21",
           "c11*d12 = d12*c11",
           "c11*d22 = d22*c11 + q^-1*(q-q^-1)*d12*c21",
           "c12*d11 = d11*c12 + q*(q-q^-1)*d12*(c11-c22)",
           "c12*d12 = q^2*d12*c12",
           "c12*d21 + q^-1*(q-q^-1)*c11*(d11-d22) = q^-2*d21*c12 + q^-1*(q-q^-1)*(d11-d22)*c22",
           "c12*d22 = d22*c12 - q^-1*(q-q^-1)*d12*(c11-c22)",
           "c21*d11 = d11*c21",
           "c21*d12 = q^-2*d12*c21",
           "c21*d21 = q^2*d21*c21",
           "c21*d22 = d22*c21",
           "c22*d11 = d11*c22 + q^-1*(q-q^-1)*d12*c21",
           "c22*d22 = d22*c22 - q^-3*(q-q^-1)*d12*c21",
           "c22*d12 = d12*c22",
           "c22*d21 = d21*c22 - q^-1*(q-q^-1)*(d11-d22)*c21",
       })
    out.push_back({"cd", s});
  return out;
}

/// Relations between the monodromy M and A.
inline std::vector<TableRelation> am_table() {
  std::vector<TableRelation> out;
  for (const char* s : {
           "a11*m11 = m11*a11",
           "a11*m12 = m12*a11 - q*(q-q^-1)*m11*a12",
           "a11*m21 = m21*a11 + q^-1*(q-q^-1)*m11*a21",
           "a11*m22 = m22*a11 + q*(q-q^-1)*(m12*a21-m21*a12) - (q-q^-1)^2*m11*(a22-a11)",
           "a12*m11 = q^2*m11*a12",
           "a12*m12 = m12*a12",
           "a12*m21 = m21*a12 - q^-1*(q-q^-1)*m11*(a11-a22)",
           "a12*m22 = q^-2*m22*a12 - q^-1*(q-q^-1)*m12*(a11-a22) + q^-1*(q-q^-1)*(q^2-q^-2)*m11*a12",
           "a21*m11 = q^-2*m11*a21",
           "a21*m12 = m12*a21 + q^-1*(q-q^-1)*m11*(a11-a22)",
           "a21*m21 = m21*a21",
           "a21*m22 = q^2*m22*a21 + q*(q-q^-1)*m21*(a11-a22)",
           "a22*m11 = m11*a22",
           "a22*m12 = m12*a22 + q^-1*(q-q^-1)*m11*a12",
           "a22*m21 = m21*a22 - q^-3*(q-q^-1)*m11*a21",
           "a22*m22 = m22*a22 - q^-1*(q-q^-1)*(m12*a21-m21*a12) + q^-2*(q-q^-1)^2*m11*(a22-a11)",
       })
    out.push_back({"am", s});
  return out;
}

/// Relations with the half powers d11^{1/2} (symbol d11h, inverse d11hi) and a11^{1/2} (a11h, a11hi).
inline std::vector<TableRelation> half_power_table() {
  return {
      {"half-cd", "c11*d11h = d11h*c11 + (1-q)*d11hi*d12*c21"},
      {"half-cd", "c12*d11h = d11h*c12 - (1-q)*d11hi*d12*(c11-c22) + q^-3*(1-q)^2*d11hi*d11hi*d11hi*d12*d12*c21"},
      {"half-am", "a11h*m12 = m12*a11h + (1-q)*m11*a11hi*a12"},
      {"half-am", "a11h*m21 = m21*a11h + (1-q^-1)*m11*a11hi*a21"},
  };
}

}  // namespace qgraph
