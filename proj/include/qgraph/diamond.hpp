#pragma once

// Word-level rewrite systems and the overlap (diamond) check for local confluence.

#include <qgraph/ncpoly.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qgraph {

/// Rewrite system on words over letters 0..n-1 with length-2 left-hand sides.
template <class S>
struct RewriteSystem {
  using Word = std::vector<int>;
  using Poly = std::map<Word, S>;

  std::vector<std::string> letters;
  std::map<std::pair<int, int>, Poly> rules;  // (y, x) -> rhs

  static void add(Poly& p, const Word& w, const S& c) {
    if (c.is_zero()) return;
    auto [it, ins] = p.try_emplace(w, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) p.erase(it);
    }
  }

  /// Rewrite the leftmost reducible pair of every term until nothing applies.
  Poly reduce(Poly p) const {
    for (;;) {
      bool changed = false;
      Poly next;
      for (const auto& [w, c] : p) {
        std::size_t i = 0;
        for (; i + 1 < w.size(); ++i)
          if (rules.count({w[i], w[i + 1]})) break;
        if (i + 1 >= w.size()) {
          add(next, w, c);
          continue;
        }
        changed = true;
        for (const auto& [rw, rc] : rules.at({w[i], w[i + 1]})) {
          add(next, splice(w, i, rw), c * rc);
        }
      }
      p = std::move(next);
      if (!changed) return p;
    }
  }

  /// w with the letters at i, i+1 replaced by rw.
  static Word splice(const Word& w, std::size_t i, const Word& rw) {
    Word nw;
    nw.reserve(w.size() + rw.size());
    for (std::size_t k = 0; k < i; ++k) nw.push_back(w[k]);
    for (int l : rw) nw.push_back(l);
    for (std::size_t k = i + 2; k < w.size(); ++k) nw.push_back(w[k]);
    return nw;
  }

  /// Apply the rule at position i of a single word (one step).
  Poly step(const Word& w, std::size_t i, const S& one) const {
    Poly out;
    for (const auto& [rw, rc] : rules.at({w[i], w[i + 1]})) {
      add(out, splice(w, i, rw), one * rc);
    }
    return out;
  }
};

struct OverlapFailure {
  std::string word;
  std::string difference;
};

/// All length-3 overlaps xyz (xy and yz both reducible) whose two resolutions differ.
template <class S>
std::vector<OverlapFailure> diamond_check(const RewriteSystem<S>& rs, const S& one) {
  std::vector<OverlapFailure> out;
  for (const auto& [l1, r1] : rs.rules)
    for (const auto& [l2, r2] : rs.rules) {
      if (l1.second != l2.first) continue;
      typename RewriteSystem<S>::Word w{l1.first, l1.second, l2.second};
      auto left = rs.reduce(rs.step(w, 0, one));
      auto right = rs.reduce(rs.step(w, 1, one));
      if (left == right) continue;
      typename RewriteSystem<S>::Poly diff = left;
      for (const auto& [ww, c] : right) RewriteSystem<S>::add(diff, ww, -c);
      std::string ws = rs.letters[w[0]] + " " + rs.letters[w[1]] + " " + rs.letters[w[2]];
      std::string ds;
      for (const auto& [ww, c] : diff) {
        if (!ds.empty()) ds += " + ";
        ds += "(" + to_string(c) + ")";
        for (int l : ww) ds += "*" + rs.letters[l];
      }
      out.push_back({ws, ds});
    }
  return out;
}

/// The single-handle rewrite system of a presentation, over the letters
/// a11inv < a11 < b11inv < b11 < X1 < X2 < X3 < X4.
template <class S>
RewriteSystem<S> rewrite_system(const Presentation<S>& p) {
  RewriteSystem<S> rs;
  rs.letters = {"a11inv", "a11", "b11inv", "b11", "X1", "X2", "X3", "X4"};
  const auto& ctx = p.ctx();
  auto rule = [&](int y, int x, const S& c, const S& d) {
    typename RewriteSystem<S>::Poly rhs;
    RewriteSystem<S>::add(rhs, {x, y}, c);
    RewriteSystem<S>::add(rhs, {}, d);
    rs.rules[{y, x}] = rhs;
  };
  // Cancellation of the Laurent pairs.
  rs.rules[{1, 0}] = {{{}, ctx.one()}};
  rs.rules[{0, 1}] = {{{}, ctx.one()}};
  rs.rules[{3, 2}] = {{{}, ctx.one()}};
  rs.rules[{2, 3}] = {{{}, ctx.one()}};
  const S c = p.rule(1, 0).c;  // b11 a11 = c a11 b11
  const S ci = c.inverse();
  rule(3, 1, c, ctx.zero());
  rule(3, 0, ci, ctx.zero());
  rule(2, 1, ci, ctx.zero());
  rule(2, 0, c, ctx.zero());
  // letter 4 + i  <->  slot 2 + i
  for (int k = 4; k < 8; ++k) {
    for (int j = 0; j < 4; ++j) {
      int slot_j = j / 2;  // 0 for a11^{+-1}, 1 for b11^{+-1}
      const auto& r = p.rule(k - 2, slot_j);
      bool inv = (j % 2) == 0;
      rule(k, j, inv ? r.c.inverse() : r.c, ctx.zero());
    }
    for (int j = 4; j < k; ++j) {
      const auto& r = p.rule(k - 2, j - 2);
      rule(k, j, r.c, r.d);
    }
  }
  return rs;
}

template <class S>
std::vector<OverlapFailure> diamond_check(const Presentation<S>& p) {
  return diamond_check(rewrite_system(p), p.ctx().one());
}

}  // namespace qgraph
