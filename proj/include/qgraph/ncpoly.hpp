#pragma once

// Noncommutative polynomials in the graph-algebra generators, kept in PBW normal form.
//
// The canonical presentation works per handle with the word generators
//     a11^{+-1} < b11^{+-1} < X1 < X2 < X3 < X4
// where a11, b11 are Laurent (exponents in Z) and X1..X4 obey
//     X_k X_j = c_kj X_j X_k + d_kj   (k > j, d_kj a scalar).
// The remaining matrix entries a12, a21, a22, b12, b21, b22 are expressed through these
// (the quantum determinants fix a22 and b22). Different handles commute.
//
// At a primitive p-th root of unity the p-th powers a11^p, b11^p, X_i^p are central; normal
// words keep exponents in 0..p-1 and the excess is moved into commuting central symbols:
//     alpha = a11^p, beta = b11^p, Z_i = X_i^p  (per handle),   mu = M11^{-p}  (genus 1).

#include <qgraph/laurent.hpp>
#include <qgraph/scalars.hpp>

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qgraph {

enum class Family { a11, a12, a21, a22, b11, b12, b21, b22, a11inv, b11inv, X1, X2, X3, X4 };

struct GeneratorId {
  int handle = 1;  // 1-based
  Family family = Family::a11;
  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::a11: return "a11";
    case Family::a12: return "a12";
    case Family::a21: return "a21";
    case Family::a22: return "a22";
    case Family::b11: return "b11";
    case Family::b12: return "b12";
    case Family::b21: return "b21";
    case Family::b22: return "b22";
    case Family::a11inv: return "a11inv";
    case Family::b11inv: return "b11inv";
    case Family::X1: return "X1";
    case Family::X2: return "X2";
    case Family::X3: return "X3";
    case Family::X4: return "X4";
  }
  return "?";
}

inline std::string generator_name(const GeneratorId& g, bool with_handle) {
  return with_handle ? family_name(g.family) + "_" + std::to_string(g.handle) : family_name(g.family);
}

inline std::optional<Family> parse_family(const std::string& s) {
  for (Family f : {Family::a11, Family::a12, Family::a21, Family::a22, Family::b11, Family::b12, Family::b21,
                   Family::b22, Family::a11inv, Family::b11inv, Family::X1, Family::X2, Family::X3, Family::X4})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

/// Matrix-entry family for (A or B, row, col), rows/cols 1-based.
inline Family entry_family(bool is_b, int r, int c) {
  static constexpr Family a[2][2] = {{Family::a11, Family::a12}, {Family::a21, Family::a22}};
  static constexpr Family b[2][2] = {{Family::b11, Family::b12}, {Family::b21, Family::b22}};
  return is_b ? b[r - 1][c - 1] : a[r - 1][c - 1];
}

// ---------------------------------------------------------------------------
// 2x2 matrices with entries in a noncommutative ring

template <class T>
using Mat2 = std::array<std::array<T, 2>, 2>;

template <class T>
Mat2<T> mat2_mul(const Mat2<T>& x, const Mat2<T>& y) {
  Mat2<T> r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

// ---------------------------------------------------------------------------
// Presentation

inline constexpr int kSlotsPerHandle = 6;  // a11, b11, X1, X2, X3, X4
inline constexpr int kCentralPerHandle = 6;  // alpha, beta, Z1..Z4

template <class S>
class NcPoly;

template <class S>
class Presentation : public std::enable_shared_from_this<Presentation<S>> {
 public:
  struct Rule {
    S c;          // X_k X_j = c X_j X_k + d
    S d;
    int c_qexp;   // c = q^c_qexp when the rule is a pure q-commutation (used for Laurent moves)
  };

  static std::shared_ptr<const Presentation> make(ScalarContext<S> ctx, int genus = 1) {
    return std::shared_ptr<const Presentation>(new Presentation(std::move(ctx), genus));
  }

  /// Same presentation with one rule scalar replaced; used to inject faults.
  std::shared_ptr<const Presentation> with_rule(int k, int j, S c, S d) const {
    auto p = std::shared_ptr<Presentation>(new Presentation(ctx_, genus_));
    p->rules_ = rules_;
    p->rules_[k][j] = Rule{std::move(c), std::move(d), rules_[k][j].c_qexp};
    return p;
  }

  const ScalarContext<S>& ctx() const { return ctx_; }
  int genus() const { return genus_; }
  bool root_mode() const { return ctx_.is_root(); }
  int p() const { return ctx_.order(); }
  int word_size() const { return kSlotsPerHandle * genus_; }
  int central_size() const { return kCentralPerHandle * genus_ + 1; }
  int key_size() const { return word_size() + central_size(); }
  int mu_index() const { return key_size() - 1; }

  static bool is_laurent_slot(int local) { return local < 2; }

  const Rule& rule(int k_local, int j_local) const { return rules_[k_local][j_local]; }

  /// Normal-form product of two normal monomial keys. Central parts add.
  std::vector<std::pair<S, Exponents>> multiply_keys(const Exponents& a, const Exponents& b) const;

  NcPoly<S> image(const GeneratorId& g) const;

  /// Root mode: move exponents outside 0..p-1 into the central symbols.
  void fold_root(Exponents& key, S& coef) const;
  /// Root mode, genus 1: eliminate mu * Z1 Z2 Z3 Z4 using mu * M11^p = 1.
  void localize(std::map<Exponents, S>& terms) const;

  /// Central-symbol names: alpha_h, beta_h, Z1_h..Z4_h, mu.
  std::vector<std::string> central_names() const {
    std::vector<std::string> n;
    for (int h = 1; h <= genus_; ++h) {
      std::string s = "_" + std::to_string(h);
      for (const char* b : {"alpha", "beta", "Z1", "Z2", "Z3", "Z4"}) n.push_back(b + s);
    }
    n.push_back("mu");
    return n;
  }

 private:
  Presentation(ScalarContext<S> ctx, int genus) : ctx_(std::move(ctx)), genus_(genus) {
    if (genus < 1) throw std::invalid_argument("genus must be >= 1");
    for (auto& row : rules_)
      for (auto& r : row) r = Rule{ctx_.one(), ctx_.zero(), 0};
    auto set = [&](int k, int j, int cq, bool affine) {
      rules_[k][j] = Rule{ctx_.q_pow(cq), affine ? ctx_.q_pow(-2) - ctx_.one() : ctx_.zero(), cq};
    };
    // local slots: 0 a11, 1 b11, 2 X1, 3 X2, 4 X3, 5 X4
    set(1, 0, -1, false);  // b11 a11 = q^-1 a11 b11
    set(3, 2, -2, true);   // X2 X1 = q^-2 X1 X2 + q^-2 - 1
    set(4, 2, 2, false);   // X3 X1 = q^2 X1 X3
    set(5, 2, -2, false);  // X4 X1 = q^-2 X1 X4
    set(4, 3, -2, true);   // X3 X2 = q^-2 X2 X3 + q^-2 - 1
    set(5, 3, 2, false);   // X4 X2 = q^2 X2 X4
    set(5, 4, -2, true);   // X4 X3 = q^-2 X3 X4 + q^-2 - 1
  }


  ScalarContext<S> ctx_;
  int genus_;
  std::array<std::array<Rule, kSlotsPerHandle>, kSlotsPerHandle> rules_;

  struct KeyHash {
    std::size_t operator()(const std::pair<Exponents, Exponents>& k) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : k.first) h = (h ^ static_cast<std::size_t>(x + 1000)) * 1099511628211ull;
      for (int x : k.second) h = (h ^ static_cast<std::size_t>(x + 7000)) * 1099511628211ull;
      return h;
    }
  };
  mutable std::mutex cache_mu_;
  mutable std::unordered_map<std::pair<Exponents, Exponents>, std::vector<std::pair<S, Exponents>>, KeyHash> cache_;
};

template <class S>
using PresentationPtr = std::shared_ptr<const Presentation<S>>;

// ---------------------------------------------------------------------------
// NcPoly

template <class S>
class NcPoly {
 public:
  using Terms = std::map<Exponents, S>;

  NcPoly() = default;
  explicit NcPoly(PresentationPtr<S> p) : pres_(std::move(p)) {}

  static NcPoly scalar(const PresentationPtr<S>& p, const S& s) {
    NcPoly r(p);
    if (!s.is_zero()) r.terms_.emplace(Exponents(p->key_size(), 0), s);
    return r;
  }
  static NcPoly one(const PresentationPtr<S>& p) { return scalar(p, p->ctx().one()); }
  /// Word slot to a power (negative allowed for a11, b11).
  static NcPoly slot_power(const PresentationPtr<S>& p, int handle, int local, int e) {
    if (e < 0 && !Presentation<S>::is_laurent_slot(local)) throw std::invalid_argument("negative power of X generator");
    NcPoly r = one(p);
    Exponents k(p->key_size(), 0);
    k[(handle - 1) * kSlotsPerHandle + local] = e;
    S c = p->ctx().one();
    if (p->root_mode()) p->fold_root(k, c);
    r.terms_.clear();
    r.terms_.emplace(k, c);
    return r;
  }
  /// Central symbol (index into central_names()) to a power.
  static NcPoly central(const PresentationPtr<S>& p, int index, int e = 1) {
    Exponents k(p->key_size(), 0);
    k[p->word_size() + index] = e;
    NcPoly r(p);
    r.terms_.emplace(k, p->ctx().one());
    if (index == p->mu_index() - p->word_size()) p->localize(r.terms_);
    return r;
  }
  static NcPoly generator(const PresentationPtr<S>& p, const GeneratorId& g) { return p->image(g); }

  const PresentationPtr<S>& presentation() const { return pres_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& k, const S& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms_.try_emplace(k, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend NcPoly operator+(NcPoly a, const NcPoly& b) {
    if (!a.pres_) a.pres_ = b.pres_;
    for (const auto& [k, c] : b.terms_) a.add_term(k, c);
    return a;
  }
  NcPoly operator-() const {
    NcPoly r(*this);
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  friend NcPoly operator-(const NcPoly& a, const NcPoly& b) { return a + (-b); }
  friend NcPoly operator*(const S& s, const NcPoly& a) {
    NcPoly r(a.pres_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : a.terms_) r.add_term(k, s * c);
    return r;
  }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    const auto& p = a.pres_ ? a.pres_ : b.pres_;
    NcPoly r(p);
    if (a.is_zero() || b.is_zero()) return r;
    bool has_mu = false;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        S cab = ca * cb;
        for (const auto& [c, k] : p->multiply_keys(ka, kb)) {
          if (p->root_mode() && k[p->mu_index()] > 0) has_mu = true;
          r.add_term(k, cab * c);
        }
      }
    if (has_mu) p->localize(r.terms_);
    return r;
  }
  NcPoly& operator+=(const NcPoly& o) { return *this = *this + o; }
  NcPoly& operator-=(const NcPoly& o) { return *this = *this - o; }
  NcPoly& operator*=(const NcPoly& o) { return *this = *this * o; }
  friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

  NcPoly pow(int n) const {
    if (n < 0) throw std::invalid_argument("NcPoly::pow: negative exponent");
    NcPoly r = one(pres_), x = *this;
    while (n > 0) {
      if (n & 1) r *= x;
      n >>= 1;
      if (n) x *= x;
    }
    return r;
  }

  /// True when every word is empty (the element lies in the commutative coefficient ring).
  bool is_central_form() const {
    for (const auto& [k, c] : terms_)
      for (int i = 0; i < pres_->word_size(); ++i)
        if (k[i] != 0) return false;
    return true;
  }

  /// Coefficient-ring part; throws if some word is nonempty.
  LaurentPoly<S> central_part() const {
    LaurentPoly<S> r(static_cast<std::size_t>(pres_ ? pres_->central_size() : 0));
    for (const auto& [k, c] : terms_) {
      for (int i = 0; i < pres_->word_size(); ++i)
        if (k[i] != 0) throw std::logic_error("central_part: element has a nonempty word");
      Exponents e(k.begin() + pres_->word_size(), k.end());
      r.add_term(e, c);
    }
    return r;
  }

  static NcPoly from_central(const PresentationPtr<S>& p, const LaurentPoly<S>& c) {
    NcPoly r(p);
    for (const auto& [e, s] : c.terms()) {
      Exponents k(p->word_size(), 0);
      k.insert(k.end(), e.begin(), e.end());
      r.add_term(k, s);
    }
    if (p->root_mode()) p->localize(r.terms_);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto cn = pres_->central_names();
    static const char* slot_names[] = {"a11", "b11", "X1", "X2", "X3", "X4"};
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << to_string(c) << ")";
      for (int i = 0; i < pres_->word_size(); ++i) {
        if (k[i] == 0) continue;
        os << "*" << slot_names[i % kSlotsPerHandle];
        if (pres_->genus() > 1) os << "_" << (i / kSlotsPerHandle + 1);
        if (k[i] != 1) os << "^" << k[i];
      }
      for (int i = 0; i < pres_->central_size(); ++i) {
        int e = k[pres_->word_size() + i];
        if (e == 0) continue;
        os << "*" << cn[i];
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  PresentationPtr<S> pres_;
  Terms terms_;
};

// ---------------------------------------------------------------------------
// Presentation internals

template <class S>
void Presentation<S>::fold_root(Exponents& key, S& /*coef*/) const {
  const int p = ctx_.order();
  for (int i = 0; i < word_size(); ++i) {
    int e = key[i];
    if (e >= 0 && e < p) continue;
    int q = e >= 0 ? e / p : -((-e + p - 1) / p);
    key[i] = e - q * p;
    int h = i / kSlotsPerHandle, local = i % kSlotsPerHandle;
    key[word_size() + h * kCentralPerHandle + local] += q;
  }
}

template <class S>
void Presentation<S>::localize(std::map<Exponents, S>& terms) const {
  if (!root_mode() || genus_ != 1) return;
  // mu * (1 + Z1 Z2 + Z1 Z4 + Z3 Z4 + Z1 Z2 Z3 Z4) = 1, oriented as
  // mu Z1 Z2 Z3 Z4 -> 1 - mu (1 + Z1 Z2 + Z1 Z4 + Z3 Z4).
  const int w = word_size();
  const int mu = mu_index();
  const int z1 = w + 2, z2 = w + 3, z3 = w + 4, z4 = w + 5;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      const Exponents& k = it->first;
      if (k[mu] > 0 && k[z1] > 0 && k[z2] > 0 && k[z3] > 0 && k[z4] > 0) {
        Exponents base = k;
        S c = it->second;
        terms.erase(it);
        base[mu] -= 1;
        base[z1] -= 1;
        base[z2] -= 1;
        base[z3] -= 1;
        base[z4] -= 1;
        auto add = [&](Exponents e, const S& s) {
          auto [jt, ins] = terms.try_emplace(e, s);
          if (!ins) {
            jt->second += s;
            if (jt->second.is_zero()) terms.erase(jt);
          }
        };
        add(base, c);
        Exponents m = base;
        m[mu] += 1;
        add(m, -c);
        Exponents t = m;
        t[z1] += 1;
        t[z2] += 1;
        add(t, -c);
        t = m;
        t[z1] += 1;
        t[z4] += 1;
        add(t, -c);
        t = m;
        t[z3] += 1;
        t[z4] += 1;
        add(t, -c);
        changed = true;
        break;
      }
    }
  }
}

template <class S>
std::vector<std::pair<S, Exponents>> Presentation<S>::multiply_keys(const Exponents& a, const Exponents& b) const {
  const int W = word_size();
  Exponents wa(a.begin(), a.begin() + W), wb(b.begin(), b.begin() + W);
  std::vector<std::pair<S, Exponents>> words;
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = cache_.find({wa, wb});
    if (it != cache_.end()) words = it->second;
  }
  if (words.empty()) {
    // Keys here carry word + central so that root folding can spill into central symbols.
    std::map<Exponents, S> cur;
    Exponents start(a.size(), 0);
    for (int i = 0; i < W; ++i) start[i] = wa[i];
    cur.emplace(start, ctx_.one());
    auto add = [](std::map<Exponents, S>& m, Exponents k, const S& c) {
      if (c.is_zero()) return;
      auto [it, ins] = m.try_emplace(std::move(k), c);
      if (!ins) {
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (int j = 0; j < W; ++j) {
      int e = wb[j];
      if (e == 0) continue;
      const int h = j / kSlotsPerHandle, jl = j % kSlotsPerHandle, base = h * kSlotsPerHandle;
      if (is_laurent_slot(jl)) {
        std::map<Exponents, S> next;
        for (auto& [k, c] : cur) {
          int qe = 0;
          for (int kl = jl + 1; kl < kSlotsPerHandle; ++kl) qe += rules_[kl][jl].c_qexp * k[base + kl] * e;
          Exponents nk = k;
          nk[j] += e;
          S nc = c * ctx_.q_pow(qe);
          if (root_mode()) fold_root(nk, nc);
          add(next, std::move(nk), nc);
        }
        cur = std::move(next);
        continue;
      }
      for (int step = 0; step < e; ++step) {
        std::map<Exponents, S> next;
        for (auto& [k, c] : cur) {
          S coef = c;
          for (int kl = kSlotsPerHandle - 1; kl > jl; --kl) {
            int n = k[base + kl];
            if (n == 0) continue;
            const Rule& r = rules_[kl][jl];
            if (!r.d.is_zero()) {
              // X_k^n X_j = c^n X_j X_k^n + d (1 + c + ... + c^(n-1)) X_k^(n-1)
              S geo = ctx_.zero(), cp = ctx_.one();
              for (int i = 0; i < n; ++i) {
                geo += cp;
                cp *= r.c;
              }
              Exponents dk = k;
              dk[base + kl] -= 1;
              add(next, std::move(dk), coef * r.d * geo);
            }
            for (int i = 0; i < n; ++i) coef *= r.c;
          }
          Exponents nk = k;
          nk[j] += 1;
          if (root_mode()) fold_root(nk, coef);
          add(next, std::move(nk), coef);
        }
        cur = std::move(next);
      }
    }
    for (auto& [k, c] : cur) words.emplace_back(c, k);
    std::lock_guard<std::mutex> lock(cache_mu_);
    cache_.emplace(std::pair{wa, wb}, words);
  }
  // Attach the combined central part.
  std::vector<std::pair<S, Exponents>> out;
  out.reserve(words.size());
  for (auto& [c, k] : words) {
    Exponents nk = k;
    for (int i = W; i < static_cast<int>(a.size()); ++i) nk[i] += a[i] + b[i];
    out.emplace_back(c, std::move(nk));
  }
  return out;
}

template <class S>
NcPoly<S> Presentation<S>::image(const GeneratorId& g) const {
  if (g.handle < 1 || g.handle > genus_) throw std::invalid_argument("generator handle out of range");
  auto self = this->shared_from_this();
  const int h = g.handle;
  auto slot = [&](int local, int e = 1) { return NcPoly<S>::slot_power(self, h, local, e); };
  auto q = [&](int k) { return ctx_.q_pow(k); };
  auto one = NcPoly<S>::one(self);
  switch (g.family) {
    case Family::a11: return slot(0);
    case Family::a11inv: return slot(0, -1);
    case Family::b11: return slot(1);
    case Family::b11inv: return slot(1, -1);
    case Family::X1: return slot(2);
    case Family::X2: return slot(3);
    case Family::X3: return slot(4);
    case Family::X4: return slot(5);
    case Family::b12:  // from X3 = a11^-2 b12 b11
      return slot(0, 2) * slot(4) * slot(1, -1);
    case Family::a12:  // from X1 = (a11^-1 a12 - b11^-1 b12) b11^2
      return slot(0) * slot(2) * slot(1, -2) + slot(0) * slot(1, -1) * image({h, Family::b12});
    case Family::a21:  // from X2 = a11 a21 b11^-2
      return slot(0, -1) * slot(3) * slot(1, 2);
    case Family::b21:  // from X4 = (b21 b11^-1 - a21 a11^-1) a11^2
      return slot(5) * slot(0, -2) * slot(1) + image({h, Family::a21}) * slot(0, -1) * slot(1);
    case Family::a22:  // detq A = 1
      return slot(0, -1) * (one + q(2) * (image({h, Family::a21}) * image({h, Family::a12})));
    case Family::b22:  // detq B = 1
      return slot(1, -1) * (one + q(2) * (image({h, Family::b21}) * image({h, Family::b12})));
  }
  throw std::logic_error("unknown generator family");
}

// ---------------------------------------------------------------------------
// Free-algebra polynomials over generator ids (unnormalized words)

template <class S>
class WordPoly {
 public:
  using Word = std::vector<GeneratorId>;
  using Terms = std::map<Word, S>;

  WordPoly() = default;
  static WordPoly word(const Word& w, const S& c) {
    WordPoly r;
    r.add_term(w, c);
    return r;
  }
  static WordPoly gen(const GeneratorId& g, const S& one) { return word({g}, one); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Word& w, const S& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms_.try_emplace(w, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  friend WordPoly operator+(WordPoly a, const WordPoly& b) {
    for (const auto& [w, c] : b.terms_) a.add_term(w, c);
    return a;
  }
  WordPoly operator-() const {
    WordPoly r(*this);
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }
  friend WordPoly operator-(const WordPoly& a, const WordPoly& b) { return a + (-b); }
  friend WordPoly operator*(const WordPoly& a, const WordPoly& b) {
    WordPoly r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add_term(w, ca * cb);
      }
    return r;
  }
  friend WordPoly operator*(const S& s, const WordPoly& a) {
    WordPoly r;
    for (const auto& [w, c] : a.terms_) r.add_term(w, s * c);
    return r;
  }
  WordPoly& operator+=(const WordPoly& o) { return *this = *this + o; }
  friend bool operator==(const WordPoly& a, const WordPoly& b) { return a.terms_ == b.terms_; }

  std::string str(bool with_handle = false) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << to_string(c) << ")";
      for (const auto& g : w) os << "*" << generator_name(g, with_handle);
    }
    return os.str();
  }

 private:
  Terms terms_;
};

/// Substitute generator images and reduce: the PBW normal form of a free-algebra element.
template <class S>
NcPoly<S> normal_form(const WordPoly<S>& x, const PresentationPtr<S>& p) {
  NcPoly<S> r(p);
  std::map<GeneratorId, NcPoly<S>> cache;
  for (const auto& [w, c] : x.terms()) {
    NcPoly<S> t = NcPoly<S>::scalar(p, c);
    for (const auto& g : w) {
      auto it = cache.find(g);
      if (it == cache.end()) it = cache.emplace(g, p->image(g)).first;
      t = t * it->second;
    }
    r += t;
  }
  return r;
}

/// NcPoly values are always normal; normal_form is the identity on them.
template <class S>
const NcPoly<S>& normal_form(const NcPoly<S>& x) {
  return x;
}

template <class S>
NcPoly<S> commutator(const NcPoly<S>& x, const NcPoly<S>& y) {
  return x * y - y * x;
}

/// Generic noncommutative commutator for any ring type with * and -.
template <class T>
T ring_commutator(const T& x, const T& y) {
  return x * y - y * x;
}

// ---------------------------------------------------------------------------
// Translation between the (a,b) and X generators

/// Interpret a free (a,b)-word polynomial in the X presentation.
template <class S>
NcPoly<S> x_from_ab(const WordPoly<S>& x, const PresentationPtr<S>& p) {
  return normal_form(x, p);
}

/// Rewrite a normal X-form element as a free polynomial in the (a,b) generators, using
///   X1 = (a11^-1 a12 - b11^-1 b12) b11^2,  X2 = a11 a21 b11^-2,
///   X3 = a11^-2 b12 b11,                   X4 = (b21 b11^-1 - a21 a11^-1) a11^2.
template <class S>
WordPoly<S> ab_from_x(const NcPoly<S>& x) {
  const auto& p = x.presentation();
  WordPoly<S> r;
  if (!p) return r;
  const S one = p->ctx().one();
  if (p->root_mode() && !x.is_zero()) {
    for (const auto& [k, c] : x.terms())
      for (int i = p->word_size(); i < p->key_size(); ++i)
        if (k[i] != 0) throw std::invalid_argument("ab_from_x: central symbols are not translated");
  }
  for (const auto& [k, c] : x.terms()) {
    WordPoly<S> t = WordPoly<S>::word({}, c);
    for (int h = 1; h <= p->genus(); ++h) {
      auto g = [&](Family f) { return WordPoly<S>::gen({h, f}, one); };
      auto power = [&](const WordPoly<S>& base, int n) {
        WordPoly<S> acc = WordPoly<S>::word({}, one);
        for (int i = 0; i < n; ++i) acc = acc * base;
        return acc;
      };
      const int b = (h - 1) * kSlotsPerHandle;
      int ea = k[b], eb = k[b + 1];
      t = t * (ea >= 0 ? power(g(Family::a11), ea) : power(g(Family::a11inv), -ea));
      t = t * (eb >= 0 ? power(g(Family::b11), eb) : power(g(Family::b11inv), -eb));
      WordPoly<S> X1 = (g(Family::a11inv) * g(Family::a12) - g(Family::b11inv) * g(Family::b12)) * g(Family::b11) * g(Family::b11);
      WordPoly<S> X2 = g(Family::a11) * g(Family::a21) * g(Family::b11inv) * g(Family::b11inv);
      WordPoly<S> X3 = g(Family::a11inv) * g(Family::a11inv) * g(Family::b12) * g(Family::b11);
      WordPoly<S> X4 = (g(Family::b21) * g(Family::b11inv) - g(Family::a21) * g(Family::a11inv)) * g(Family::a11) * g(Family::a11);
      t = t * power(X1, k[b + 2]) * power(X2, k[b + 3]) * power(X3, k[b + 4]) * power(X4, k[b + 5]);
    }
    r += t;
  }
  return r;
}

// ---------------------------------------------------------------------------
// OpMatrix helpers

template <class S>
using OpMatrix = Mat2<NcPoly<S>>;

template <class S>
OpMatrix<S> generator_matrix(const PresentationPtr<S>& p, bool is_b, int handle = 1) {
  OpMatrix<S> m;
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) m[r - 1][c - 1] = p->image({handle, entry_family(is_b, r, c)});
  return m;
}

template <class S>
OpMatrix<S> identity_opmatrix(const PresentationPtr<S>& p) {
  OpMatrix<S> m;
  m[0][0] = NcPoly<S>::one(p);
  m[1][1] = NcPoly<S>::one(p);
  m[0][1] = NcPoly<S>(p);
  m[1][0] = NcPoly<S>(p);
  return m;
}

/// detq M = M11 M22 - q^2 M21 M12. `scal` embeds a q-power as a ring element.
template <class T, class QPow>
T detq(const Mat2<T>& m, QPow qpow) {
  return m[0][0] * m[1][1] - qpow(2) * (m[1][0] * m[0][1]);
}
/// trq M = q^-1 M11 + q M22.
template <class T, class QPow>
T trq(const Mat2<T>& m, QPow qpow) {
  return qpow(-1) * m[0][0] + qpow(1) * m[1][1];
}

template <class S>
NcPoly<S> detq(const OpMatrix<S>& m) {
  const auto& p = m[0][0].presentation() ? m[0][0].presentation() : m[1][1].presentation();
  return detq(m, [&](int k) { return NcPoly<S>::scalar(p, p->ctx().q_pow(k)); });
}
template <class S>
NcPoly<S> trq(const OpMatrix<S>& m) {
  const auto& p = m[0][0].presentation() ? m[0][0].presentation() : m[1][1].presentation();
  return trq(m, [&](int k) { return NcPoly<S>::scalar(p, p->ctx().q_pow(k)); });
}

/// Inverse of a unimodular matrix of the graph algebra:
///   M^-1 = [[q^2 M22 + (1 - q^2) M11, -q^2 M12], [-q^2 M21, M11]].
template <class T, class QPow, class One>
Mat2<T> qmat_inverse_formula(const Mat2<T>& m, QPow qpow, One one) {
  Mat2<T> r;
  r[0][0] = qpow(2) * m[1][1] + (one() - qpow(2)) * m[0][0];
  r[0][1] = T() - qpow(2) * m[0][1];
  r[1][0] = T() - qpow(2) * m[1][0];
  r[1][1] = m[0][0];
  return r;
}

template <class S>
OpMatrix<S> qmat_inverse(const OpMatrix<S>& m) {
  const auto& p = m[0][0].presentation() ? m[0][0].presentation() : m[1][1].presentation();
  if (detq(m) != NcPoly<S>::one(p)) throw std::invalid_argument("qmat_inverse: quantum determinant is not 1");
  auto qpow = [&](int k) { return NcPoly<S>::scalar(p, p->ctx().q_pow(k)); };
  auto one = [&] { return NcPoly<S>::one(p); };
  auto r = qmat_inverse_formula(m, qpow, one);
  for (auto& row : r)
    for (auto& e : row)
      if (!e.presentation()) e = NcPoly<S>(p);
  return r;
}

/// Genus-1 monodromy M = q^-3 B A^-1 B^-1 A.
template <class S>
OpMatrix<S> monodromy(const PresentationPtr<S>& p, int genus = 1, int index = 1) {
  if (index < 1 || index > genus) throw std::out_of_range("monodromy index out of range");
  if (genus != p->genus() || genus != 1)
    throw std::invalid_argument("symbolic monodromy is available for genus 1; use the representation layer for g > 1");
  OpMatrix<S> A = generator_matrix(p, false), B = generator_matrix(p, true);
  OpMatrix<S> M = mat2_mul(mat2_mul(mat2_mul(B, qmat_inverse(A)), qmat_inverse(B)), A);
  S s = p->ctx().q_pow(-3);
  for (auto& row : M)
    for (auto& e : row) e = s * e;
  return M;
}

/// M11 = q^-2 (1 + X1 X2 + X1 X4 + X3 X4 + X1 X2 X3 X4), the X-form of the monodromy entry.
template <class S>
NcPoly<S> m11_x_form(const PresentationPtr<S>& p, int h = 1) {
  auto X = [&](int i) { return NcPoly<S>::slot_power(p, h, 1 + i, 1); };
  auto one = NcPoly<S>::one(p);
  return p->ctx().q_pow(-2) * (one + X(1) * X(2) + X(1) * X(4) + X(3) * X(4) + X(1) * X(2) * X(3) * X(4));
}

/// M11^{-1} = M11^{p-1} mu (root mode, genus 1).
template <class S>
NcPoly<S> m11_inverse(const PresentationPtr<S>& p) {
  if (!p->root_mode() || p->genus() != 1) throw std::invalid_argument("m11_inverse needs root mode at genus 1");
  return m11_x_form(p).pow(p->p() - 1) * NcPoly<S>::central(p, p->mu_index() - p->word_size());
}

}  // namespace qgraph
