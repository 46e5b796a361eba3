#pragma once

// One entry point per CLI command. Each returns a Report; the CLI only parses flags and writes
// the JSON.

#include <qgraph/center.hpp>
#include <qgraph/classical.hpp>
#include <qgraph/diamond.hpp>
#include <qgraph/lemmas.hpp>
#include <qgraph/moduli.hpp>
#include <qgraph/poisson.hpp>

#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qgraph {

/// Bad flags or config; the CLI maps it to exit status 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  int p = 3;
  int genus = 1;
  std::uint64_t seed = 1;
  nlohmann::json params = nlohmann::json::object();
  std::string family;           // overrides params["family"]
  bool formal = false;          // generic q instead of a root of unity
  bool classical = false;       // verify-ybe: also the classical r-matrices
  bool commutant = false;       // check-rep: commutant dimension for L1 too
  bool dump = false;            // build-rep: include the generator matrices
  std::string dv0 = "sum";      // moduli-dim: "sum" or "single"
  int points = 100;
  int pairs = 100;
};

inline nlohmann::json load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open params file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("params file " + path + ": " + e.what());
  }
}

namespace detail {

inline RootScalar param(const nlohmann::json& j, const char* key, const CyclotomicField& f) {
  if (!j.contains(key)) throw UsageError(std::string("params: missing key '") + key + "'");
  try {
    return parse_root_scalar(j.at(key), f);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("params: key '") + key + "': " + e.what());
  }
}

inline void copy_sqrt_hints(const nlohmann::json& j, Representation& rep) {
  for (const char* k : {"sqrt_chi_m11", "sqrt_chi_a11", "sqrt_chi_d11"})
    if (j.contains(k)) rep.params[k] = j.at(k);
}

inline Representation x_rep_from(int p, const nlohmann::json& j, const std::string& family) {
  const CyclotomicField& f = CyclotomicField::get(p);
  if (family == "x-family1")
    return build_x_rep1(p, RepParams1{param(j, "x1", f), param(j, "x4", f), param(j, "y2", f), param(j, "y3", f),
                                      param(j, "z2", f), param(j, "z3", f)});
  if (family == "x-family2")
    return build_x_rep2(p, RepParams2{param(j, "x1", f), param(j, "x4", f), param(j, "b1", f), param(j, "b2", f),
                                      param(j, "c_last", f)});
  throw UsageError("unknown X family '" + family + "'");
}

}  // namespace detail

/// Builds "x-family1", "x-family2", "weil" or "l1" (default) from a params object.
inline Representation rep_from_params(int p, const nlohmann::json& j, const std::string& family_override = "") {
  if (p < 3 || p % 2 == 0) throw UsageError("p must be odd and >= 3");
  const CyclotomicField& f = CyclotomicField::get(p);
  std::string family = !family_override.empty() ? family_override : j.value("family", std::string("l1"));
  Representation rep;
  if (family == "x-family1" || family == "x-family2") {
    rep = detail::x_rep_from(p, j, family);
  } else if (family == "weil") {
    rep = build_weil_rep(p, WeilParams{detail::param(j, "alpha11", f), detail::param(j, "beta11", f)});
  } else if (family == "l1") {
    std::string xf = j.value("x_family", std::string("x-family1"));
    WeilParams W{detail::param(j, "alpha11", f), detail::param(j, "beta11", f)};
    if (xf == "x-family1") {
      RepParams1 P{detail::param(j, "x1", f), detail::param(j, "x4", f), detail::param(j, "y2", f),
                   detail::param(j, "y3", f), detail::param(j, "z2", f), detail::param(j, "z3", f)};
      rep = build_l1_rep(p, P, W);
    } else {
      rep = build_l1_rep_from(detail::x_rep_from(p, j, xf), build_weil_rep(p, W), nullptr);
    }
  } else {
    throw UsageError("unknown family '" + family + "' (x-family1, x-family2, weil, l1)");
  }
  detail::copy_sqrt_hints(j, rep);
  return rep;
}

/// Per-handle L1 factors: params["handles"] when present, else params for every handle.
inline std::vector<Representation> handle_factors(int p, int genus, const nlohmann::json& j) {
  if (genus < 1) throw UsageError("genus must be >= 1");
  std::vector<Representation> out;
  for (int h = 0; h < genus; ++h) {
    const nlohmann::json& hj = j.contains("handles") ? j.at("handles").at(static_cast<std::size_t>(h)) : j;
    out.push_back(rep_from_params(p, hj, "l1"));
  }
  return out;
}

inline Representation l1_or_genus(const RunConfig& c) {
  auto factors = handle_factors(c.p, c.genus, c.params);
  return c.genus == 1 ? factors.front() : build_genus_rep(factors);
}

// ---------------------------------------------------------------------------
// Symbolic commands

template <class S>
Report run_verify_ybe(const ScalarContext<S>& ctx, int p, bool classical) {
  Report r;
  r.command = "verify-ybe";
  r.p = p;
  Stopwatch sw;
  auto y = verify_ybe(ctx);
  r.add("QYBE for R+ and R-", y.qybe_plus && y.qybe_minus, "", false, sw.seconds());
  r.add("R+ = P R-^-1 P", y.flip_inverse && y.inverses_ok, y.inverses_ok ? "" : "written-out inverses are wrong");
  if (classical) {
    auto d = classical_r_matrices();
    r.add("CYBE for r+ and r-", d.cybe_plus && d.cybe_minus);
    r.add("r- = -P r+ P", d.minus_is_flipped_plus);
    r.add("r+ - r- = C", d.casimir_ok);
    r.add("C is ad-invariant", d.ad_invariant);
  }
  return r;
}

namespace detail {

/// Components of a pattern with generic matrices x (handle 1 slots) and y (handle 2 slots).
template <class S>
std::vector<std::string> pattern_text(RelationPattern pat, const ScalarContext<S>& ctx) {
  using W = WordPoly<S>;
  Mat2<W> X, Y;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      X[i][j] = W::gen({1, entry_family(false, i + 1, j + 1)}, ctx.one());
      Y[i][j] = W::gen({2, entry_family(false, i + 1, j + 1)}, ctx.one());
    }
  std::vector<std::string> out;
  for (const auto& w : compile_matrix_relation(pat, X, Y, ctx, W())) {
    std::string s;
    for (const auto& [word, c] : w.terms()) {
      if (!s.empty()) s += " + ";
      s += "(" + to_string(c) + ")";
      for (const auto& g : word) s += std::string("*") + (g.handle == 1 ? "x" : "y") + family_name(g.family).substr(1);
    }
    out.push_back(s.empty() ? "0" : s + " = 0");
  }
  return out;
}

template <class S>
struct SymbolicMatrices {
  OpMatrix<S> A, B, C, D, M;
  explicit SymbolicMatrices(const PresentationPtr<S>& P) {
    A = generator_matrix(P, false);
    B = generator_matrix(P, true);
    C = mat2_mul(qmat_inverse(B), A);
    D = mat2_mul(B, qmat_inverse(A));
    M = monodromy(P);
  }
  const OpMatrix<S>& get(char n) const {
    switch (n) {
      case 'a': return A;
      case 'b': return B;
      case 'c': return C;
      case 'd': return D;
      default: return M;
    }
  }
};

/// Compiled patterns realizable in the one-handle presentation, each normal-formed.
template <class S>
void add_symbolic_pattern_checks(Report& r, const PresentationPtr<S>& P, const SymbolicMatrices<S>& m) {
  struct Case {
    RelationPattern pat;
    char x, y;
  };
  NcPoly<S> zero(P);
  for (const auto& c : {Case{RelationPattern::SameHandle, 'a', 'a'}, Case{RelationPattern::SameHandle, 'b', 'b'},
                        Case{RelationPattern::AB, 'a', 'b'}, Case{RelationPattern::CD, 'c', 'd'},
                        Case{RelationPattern::CrossHandle, 'c', 'd'}, Case{RelationPattern::SameHandle, 'm', 'm'},
                        Case{RelationPattern::MA, 'm', 'a'}, Case{RelationPattern::MA, 'm', 'b'}}) {
    Stopwatch sw;
    int bad = 0;
    for (const auto& e : compile_matrix_relation(c.pat, m.get(c.x), m.get(c.y), P->ctx(), zero)) bad += !e.is_zero();
    r.add("pattern " + pattern_name(c.pat) + " (" + c.x + ", " + c.y + ") normal-forms to 0", bad == 0,
          bad == 0 ? "0" : std::to_string(bad) + " of 16 components nonzero", false, sw.seconds());
  }
}

template <class S>
Report gen_relations(const ScalarContext<S>& ctx, int p) {
  Report r;
  r.command = "gen-relations";
  r.p = p;
  r.genus = 1;
  auto P = Presentation<S>::make(ctx);
  nlohmann::ordered_json text = nlohmann::ordered_json::object();
  for (auto pat : {RelationPattern::SameHandle, RelationPattern::AB, RelationPattern::CrossHandle, RelationPattern::CD,
                   RelationPattern::MA, RelationPattern::Identity})
    text[pattern_name(pat)] = pattern_text(pat, ctx);
  r.data["relations"] = text;
  add_symbolic_pattern_checks(r, P, SymbolicMatrices<S>(P));
  r.add_info("pattern identity", "needs a central partner; evaluated in check-rep on (A, Frobenius matrix of A)");
  r.add_info("pattern cross-handle between handles", "evaluated in genus-rep at genus >= 2");
  return r;
}

template <class S>
Report check_appendix(const ScalarContext<S>& ctx, int p) {
  Report r;
  r.command = "check-appendix";
  r.p = p;
  r.genus = 1;
  auto P = Presentation<S>::make(ctx);
  SymbolicMatrices<S> m(P);
  add_symbolic_pattern_checks(r, P, m);
  using T = NcPoly<S>;
  auto lookup = [&](const std::string& n) -> T {
    if (n.size() != 3 || std::string("abcdm").find(n[0]) == std::string::npos) throw std::invalid_argument("unknown symbol " + n);
    return m.get(n[0])[n[1] - '1'][n[2] - '1'];
  };
  RelationParser<S, T> parser(ctx, lookup, T::one(P));
  auto discrepancies = nlohmann::ordered_json::array();
  std::size_t total = 0;
  for (const auto& tbl : {ab_table(), cd_table(), am_table()})
    for (const auto& line : tbl) {
      ++total;
      if (!parser.relation(line.text).is_zero()) discrepancies.push_back(line.table + ": " + line.text);
    }
  r.add_info("printed lines checked", std::to_string(total));
  r.add_info("printed lines that do not normal-form to 0",
             discrepancies.empty() ? "none" : std::to_string(discrepancies.size()) + ", see data");
  r.data["discrepancies"] = discrepancies;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Representation commands

inline Report run_build_rep(const RunConfig& c) {
  Report r;
  r.command = "build-rep";
  r.p = c.p;
  r.genus = c.genus;
  Representation rep = c.genus == 1 ? rep_from_params(c.p, c.params, c.family) : l1_or_genus(c);
  r.add("parameters satisfy the constraints of " + rep.kind, true);
  r.data["kind"] = rep.kind;
  r.data["dim"] = rep.dim;
  r.data["params"] = rep.params;
  if (!rep.notes.empty()) r.data["notes"] = rep.notes;
  if (c.dump) {
    nlohmann::ordered_json mats = nlohmann::ordered_json::object();
    for (const auto& [g, m] : rep.gens) {
      auto entries = nlohmann::json::array();
      for (int i = 0; i < m.rows(); ++i)
        for (const auto& [j, v] : m.row(i)) entries.push_back({i, j, root_scalar_json(v)});
      mats[generator_name(g, rep.genus > 1)] = entries;
    }
    r.data["matrices"] = mats;
  }
  return r;
}

inline Report run_check_rep(const RunConfig& c) {
  Representation rep = rep_from_params(c.p, c.params, c.family);
  Report r = verify_relations(rep);
  r.command = "check-rep";
  r.data["kind"] = rep.kind;
  r.data["dim"] = rep.dim;
  if (rep.kind != "weil") {
    auto ch = central_character(rep);
    r.merge(ch.report);
    auto vals = nlohmann::ordered_json::object();
    for (const auto& [n, v] : ch.values) vals[n] = root_scalar_json(v);
    r.data["character"] = vals;
  }
  if (rep.kind != "l1" || c.commutant) {
    Stopwatch sw;
    int d = commutant_dim(generator_ops(rep));
    r.add("commutant dimension = 1", d == 1, std::to_string(d), false, sw.seconds());
  }
  if (rep.kind == "l1") {
    try {
      r.merge(verify_half_powers(rep));
    } catch (const std::domain_error& e) {
      r.add_info("half-power relations", std::string("skipped: ") + e.what());
    }
  }
  return r;
}

inline Report run_genus_rep(const RunConfig& c) {
  auto factors = handle_factors(c.p, c.genus, c.params);
  Report r;
  r.command = "genus-rep";
  r.p = c.p;
  r.genus = c.genus;
  Representation rep = c.genus == 1 ? factors.front() : build_genus_rep(factors);
  r.data["dim"] = rep.dim;
  r.merge(c.genus == 1 ? verify_relations(rep) : verify_genus_relations(rep));
  int half_lines = 0;
  for (std::size_t h = 0; h < factors.size(); ++h) {
    Report hp = verify_half_powers(factors[h]);
    half_lines += hp.data["half_power_lines_checked"].get<int>();
    for (auto ch : hp.checks) {
      ch.name = "handle " + std::to_string(h + 1) + ": " + ch.name;
      r.checks.push_back(ch);
    }
  }
  r.data["half_power_lines_checked"] = half_lines;
  r.command = "genus-rep";
  r.genus = c.genus;
  return r;
}

inline Report run_moduli_dim(const RunConfig& c) {
  if (c.dv0 != "sum" && c.dv0 != "single") throw UsageError("--dv0 must be 'sum' or 'single'");
  Representation rep = l1_or_genus(c);
  auto m = moduli_reduce(rep, c.seed);
  m.report.data["dv0_variant"] = c.dv0;
  m.report.data["dim_vph_selected"] = c.dv0 == "sum" ? m.dim_vph() : m.dim_vph_single();
  return m.report;
}

inline Report run_rho_check(const RunConfig& c) {
  if (c.genus != 1) throw UsageError("rho-check works on the genus-1 representation");
  Representation rep = rep_from_params(c.p, c.params, "l1");
  return rho_check(rep, c.pairs, c.seed);
}

inline Report run_unitarity(const RunConfig& c) {
  Representation rep = l1_or_genus(c);
  Report r;
  r.command = "unitarity";
  r.p = c.p;
  r.genus = c.genus;
  auto [A, B] = character_matrices(rep);
  auto Fm = frobenius_monodromy(A, B);
  auto M = monodromies(rep)[1];
  bool consistent = true;
  for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}}) {
    auto s = M[i][j].pow(c.p).scalar_value();
    consistent = consistent && s && *s == Fm[i][j];
  }
  r.add("Frobenius monodromy matches chi(M^p) on entries 11, 12, 21", consistent);
  bool ok = unitarity_check(A, B);
  r.add("Frobenius matrices commute with the Frobenius monodromy", ok, ok ? "0" : "condition violated");
  auto mj = nlohmann::json::array();
  for (const auto& row : Fm)
    for (const auto& e : row) mj.push_back(root_scalar_json(e));
  r.data["frobenius_monodromy"] = mj;
  return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "verify-ybe", "gen-relations", "check-appendix", "verify-center",      "prop4",
      "prop3-poisson", "lemmas",     "build-rep",      "check-rep",          "genus-rep",
      "moduli-dim", "rho-check",     "classical-flatness", "prop5-classical", "unitarity"};
  return names;
}

inline Report run(const RunConfig& c) {
  if (c.p < 3 || c.p % 2 == 0) throw UsageError("--p must be odd and >= 3");
  if (c.genus < 1) throw UsageError("--genus must be >= 1");
  const std::string& cmd = c.command;
  if (cmd == "verify-ybe")
    return c.formal ? run_verify_ybe(FormalContext{}, 0, c.classical) : run_verify_ybe(RootContext(c.p), c.p, c.classical);
  if (cmd == "gen-relations")
    return c.formal ? detail::gen_relations(FormalContext{}, 0) : detail::gen_relations(RootContext(c.p), c.p);
  if (cmd == "check-appendix")
    return c.formal ? detail::check_appendix(FormalContext{}, 0) : detail::check_appendix(RootContext(c.p), c.p);
  if (cmd == "verify-center") return verify_center(c.p);
  if (cmd == "prop4") {
    Report r = verify_prop4(c.p);
    r.merge(verify_single_relation(c.p));
    r.command = "prop4";
    return r;
  }
  if (cmd == "prop3-poisson") return verify_prop3(c.p);
  if (cmd == "lemmas") {
    Report r = verify_lemma1(4);
    r.merge(verify_lemma2(c.p));
    r.merge(verify_lemma3(c.p));
    r.command = "lemmas";
    r.p = c.p;
    return r;
  }
  if (cmd == "build-rep") return run_build_rep(c);
  if (cmd == "check-rep") return run_check_rep(c);
  if (cmd == "genus-rep") return run_genus_rep(c);
  if (cmd == "moduli-dim") return run_moduli_dim(c);
  if (cmd == "rho-check") return run_rho_check(c);
  if (cmd == "classical-flatness") {
    Report r = verify_classical_sweep(c.genus, c.points, c.seed);
    r.command = "classical-flatness";
    return r;
  }
  if (cmd == "prop5-classical") {
    Report r;
    r.command = "prop5-classical";
    r.genus = c.genus;
    int agree = 0;
    for (int k = 0; k < c.points; ++k)
      agree += verify_prop5_classical(random_point(c.genus, c.seed + static_cast<std::uint64_t>(k))).passed();
    r.add("both computations of M_i agree (" + std::to_string(agree) + "/" + std::to_string(c.points) + ")",
          agree == c.points);
    r.merge(verify_prop5_classical(random_point(c.genus, c.seed)));
    return r;
  }
  if (cmd == "unitarity") return run_unitarity(c);
  throw UsageError("unknown command '" + cmd + "'");
}

}  // namespace qgraph
