// qgraph: command-line front end. Exit status 0 pass, 1 check failure, 2 usage error.

#include <qgraph/commands.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <gmp.h>

#include <fstream>
#include <iostream>
#include <map>

namespace {

nlohmann::ordered_json environment_stamp() {
  nlohmann::ordered_json e;
#if defined(__clang__)
  e["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  e["compiler"] = std::string("gcc ") + __VERSION__;
#endif
  e["gmp"] = gmp_version;
  e["cxx_standard"] = static_cast<long>(__cplusplus);
  return e;
}

const std::map<std::string, std::string> kDescriptions = {
    {"verify-ybe", "quantum Yang-Baxter equation and R+ = P R-^-1 P (--classical adds the r-matrices)"},
    {"gen-relations", "component relations of every R-matrix pattern"},
    {"check-appendix", "normal-form the printed relation tables"},
    {"verify-center", "commutators of the central elements with all generators"},
    {"prop4", "p-th powers of the monodromy against the Frobenius matrices"},
    {"prop3-poisson", "quantum-limit and classical Poisson tables"},
    {"lemmas", "the three rewriting lemmas"},
    {"build-rep", "build a representation from --params"},
    {"check-rep", "relations, central character and commutant of a representation"},
    {"genus-rep", "assemble the genus-g representation and check all relations"},
    {"moduli-dim", "dimensions of V0, dV0 and V_ph"},
    {"rho-check", "the anti-automorphism rho on random word pairs"},
    {"classical-flatness", "seeded sweep of classical flat points"},
    {"prop5-classical", "two computations of the classical monodromies"},
    {"unitarity", "commutation of the Frobenius matrices with the Frobenius monodromy"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the quantum graph algebra of sl2 at roots of unity"};
  app.require_subcommand(1);
  qgraph::RunConfig cfg;
  std::string params_path, out_path;
  bool timing = false, verbose = false;

  for (const auto& name : qgraph::command_names()) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--p", cfg.p, "order of the root of unity q (odd, >= 3)");
    sub->add_option("--genus", cfg.genus, "number of handles");
    sub->add_option("--seed", cfg.seed, "seed for random words, points and changes of basis");
    sub->add_option("--params", params_path, "JSON file with representation parameters");
    sub->add_option("--out", out_path, "write the JSON report here instead of stdout");
    sub->add_option("--family", cfg.family, "x-family1, x-family2, weil or l1");
    sub->add_option("--dv0", cfg.dv0, "dV0 variant for moduli-dim: sum or single");
    sub->add_option("--points", cfg.points, "number of seeded classical points");
    sub->add_option("--pairs", cfg.pairs, "number of random word pairs for rho-check");
    sub->add_flag("--formal", cfg.formal, "generic q instead of a root of unity");
    sub->add_flag("--classical", cfg.classical, "verify-ybe: also check the classical r-matrices");
    sub->add_flag("--commutant", cfg.commutant, "check-rep: compute the commutant for L1 as well");
    sub->add_flag("--dump", cfg.dump, "build-rep: include generator matrices");
    sub->add_flag("--timing", timing, "include per-check timings in the report");
    sub->add_flag("-v,--verbose", verbose, "print one line per check on stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  qgraph::Report report;
  try {
    if (!params_path.empty()) cfg.params = qgraph::load_params(params_path);
    report = qgraph::run(cfg);
  } catch (const qgraph::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return 2;
  }

  auto j = report.to_json(timing);
  j["seed"] = cfg.seed;
  j["environment"] = environment_stamp();
  if (verbose)
    for (const auto& c : report.checks)
      std::cerr << (c.informational ? "info " : c.ok ? "ok   " : "FAIL ") << c.name << ": " << c.residual << "\n";
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << j.dump(2) << "\n";
  }
  return report.passed() ? 0 : 1;
}
