// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include <qgraph/commands.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

using namespace qgraph;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void require(const Report& r, const std::string& what) {
    for (const auto& c : r.checks)
      if (!c.informational && !c.ok) {
        require(false, what + ": " + c.name + " (" + c.residual + ")");
        return;
      }
    require(!r.checks.empty(), what + ": no checks ran");
  }
};

nlohmann::json config(const std::string& name) { return load_params(std::string(QGRAPH_CONFIG_DIR) + "/" + name); }

RunConfig command(const std::string& cmd, int p, const std::string& params = "") {
  RunConfig c;
  c.command = cmd;
  c.p = p;
  if (!params.empty()) c.params = config(params);
  return c;
}

bool has_check(const Report& r, const std::string& needle, bool informational) {
  for (const auto& c : r.checks)
    if (c.informational == informational && c.name.find(needle) != std::string::npos && (informational || c.ok)) return true;
  return false;
}

Outcome criterion1() {
  Outcome o;
  auto formal = command("verify-ybe", 3);
  formal.formal = true;
  o.require(run(formal), "formal");
  for (int p : {3, 5}) o.require(run(command("verify-ybe", p)), "p=" + std::to_string(p));
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto d = classical_r_matrices();
  o.require(d.cybe_plus && d.cybe_minus, "CYBE");
  o.require(d.minus_is_flipped_plus, "r- = -P r+ P");
  o.require(d.casimir_ok, "r+ - r- = C");
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto r = run(command("check-rep", 3, "l1_flat.json"));
  o.require(r, "L1 relations");
  std::set<std::string> patterns;
  for (const auto& c : r.checks)
    if (c.name.rfind("pattern ", 0) == 0 && c.ok) patterns.insert(c.name.substr(8, c.name.find(' ', 8) - 8));
  o.require(patterns.size() == 6, std::to_string(patterns.size()) + " of 6 patterns verified");
  auto appendix = run(command("check-appendix", 3));
  o.require(appendix, "printed tables");
  o.require(appendix.data.contains("discrepancies"), "discrepancy log missing");
  return o;
}

Outcome criterion4() {
  Outcome o;
  o.require(verify_center(3), "symbolic commutators");
  auto rep = rep_from_params(3, config("l1_flat.json"));
  auto ch = central_character(rep);
  o.require(ch.report, "central elements in the L1 representation");
  o.require(has_check(ch.report, "acts as a scalar", false), "no scalar action checks");
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto r = run(command("prop4", 3));
  o.require(r, "prop4");
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto r = verify_prop3(3);
  o.require(r, "prop3");
  o.require(has_check(r, "{alpha11, beta11} = -alpha11 beta11", false), "classical spot value");
  o.require(has_check(r, "{a11^p, b11^p} = -a11^p b11^p", false), "quantum spot value");
  return o;
}

Outcome criterion7() {
  Outcome o;
  o.require(verify_lemma1(4), "lemma1");
  for (int p : {3, 5}) {
    o.require(verify_lemma2(p), "lemma2 p=" + std::to_string(p));
    o.require(verify_lemma3(p), "lemma3 p=" + std::to_string(p));
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const char* params : {"family1.json", "family2.json"}) {
    auto r = run(command("check-rep", 3, params));
    o.require(r, params);
    o.require(has_check(r, "M11 = q^{2(l-k", false), std::string(params) + ": M11 action line");
    o.require(has_check(r, "commutant dimension = 1", false), std::string(params) + ": commutant");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto c = command("genus-rep", 3, "genus2.json");
  c.genus = 2;
  auto r = run(c);
  o.require(r, "genus 2");
  o.require(r.data["dim"] == 729, "dimension");
  o.require(has_check(r, "(cross-handle)", false), "cross-handle relations");
  o.require(has_check(r, "(MA)", false), "monodromy relations");
  o.require(r.data["half_power_lines_checked"].get<int>() > 0, "no half-power lines checked");
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto c = command("rho-check", 3, "l1_rho.json");
  c.pairs = 100;
  o.require(run(c), "rho");
  return o;
}

Outcome criterion11() {
  Outcome o;
  auto flat = run(command("moduli-dim", 3, "l1_flat.json"));
  o.require(flat, "flat");
  o.require(flat.data["flat_character"] == true, "flat character not detected");
  o.require(has_check(flat, "dims unchanged under a random change of basis", false), "basis independence");
  o.require(has_check(flat, "conjecture, not asserted", true), "Verlinde note");
  auto nonflat = run(command("moduli-dim", 3, "l1_nonflat.json"));
  o.require(nonflat, "non-flat");
  o.require(nonflat.data["dim_v0"] == 0, "non-flat V0");
  return o;
}

Outcome criterion12() {
  Outcome o;
  for (int g : {1, 2}) o.require(verify_classical_sweep(g, 100, 1), "g=" + std::to_string(g));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"R-matrix identities (formal, p=3, p=5)", criterion1},
      {"classical r-matrices", criterion2},
      {"compiled relations in the p^3-dim L1 representation", criterion3},
      {"centrality at p=3", criterion4},
      {"p-th powers of the monodromy at p=3", criterion5},
      {"quantum and classical Poisson tables at p=3", criterion6},
      {"rewriting lemmas", criterion7},
      {"both X-families at p=3", criterion8},
      {"genus-2 assembly and half powers", criterion9},
      {"rho on 100 word pairs", criterion10},
      {"moduli reduction", criterion11},
      {"classical flatness sweep at g=1, 2", criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s %s (%.2f s)%s%s\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), s,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
