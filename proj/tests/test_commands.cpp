#include <qgraph/commands.hpp>

#include <gtest/gtest.h>

using namespace qgraph;

namespace {

std::string cfg_path(const std::string& name) { return std::string(QGRAPH_CONFIG_DIR) + "/" + name; }

RunConfig make(const std::string& command, const std::string& params = "") {
  RunConfig c;
  c.command = command;
  if (!params.empty()) c.params = load_params(cfg_path(params));
  c.points = 10;
  c.pairs = 10;
  return c;
}

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.informational && !c.ok) return c.name + ": " + c.residual;
  return "";
}

bool has_info(const Report& r, const std::string& needle) {
  for (const auto& c : r.checks)
    if (c.informational && c.name.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Commands, NamesAreUnique) {
  auto names = command_names();
  std::sort(names.begin(), names.end());
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
  EXPECT_EQ(names.size(), 15u);
}

TEST(Commands, AlgebraicCommandsPass) {
  for (const char* cmd : {"verify-ybe", "gen-relations", "check-appendix", "verify-center", "prop4", "prop3-poisson", "lemmas",
                          "classical-flatness", "prop5-classical"}) {
    auto r = run(make(cmd));
    EXPECT_TRUE(r.passed()) << cmd << ": " << first_failure(r);
    EXPECT_FALSE(r.checks.empty()) << cmd;
  }
}

TEST(Commands, FormalMode) {
  auto c = make("verify-ybe");
  c.formal = true;
  c.classical = true;
  auto r = run(c);
  EXPECT_TRUE(r.passed()) << first_failure(r);
  EXPECT_GT(r.checks.size(), 2u);
}

TEST(Commands, CheckRepOnConfigs) {
  for (const char* params : {"family1.json", "family2.json", "l1_flat.json"}) {
    auto r = run(make("check-rep", params));
    EXPECT_TRUE(r.passed()) << params << ": " << first_failure(r);
  }
}

TEST(Commands, BuildRepDump) {
  auto c = make("build-rep", "family1.json");
  c.dump = true;
  auto r = run(c);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.to_json().dump().empty());
}

TEST(Commands, GenusRep) {
  auto c = make("genus-rep", "genus2.json");
  c.genus = 2;
  auto r = run(c);
  EXPECT_TRUE(r.passed()) << first_failure(r);
  EXPECT_GT(r.data["half_power_lines_checked"].get<int>(), 0);
}

TEST(Commands, ModuliDim) {
  auto c = make("moduli-dim", "l1_flat.json");
  auto sum = run(c);
  EXPECT_TRUE(sum.passed()) << first_failure(sum);
  EXPECT_TRUE(has_info(sum, "conjecture, not asserted"));
  c.dv0 = "single";
  auto single = run(c);
  EXPECT_EQ(single.data["dim_vph_selected"], single.data["dim_vph_single"]);
  c.dv0 = "both";
  EXPECT_THROW(run(c), UsageError);
}

TEST(Commands, RhoCheck) {
  auto r = run(make("rho-check", "l1_rho.json"));
  EXPECT_TRUE(r.passed()) << first_failure(r);
}

TEST(Commands, Unitarity) {
  EXPECT_TRUE(run(make("unitarity", "l1_flat.json")).passed());
  EXPECT_FALSE(run(make("unitarity", "l1_nonflat.json")).passed());
}

TEST(Commands, ReportsAreDeterministic) {
  auto c = make("rho-check", "l1_rho.json");
  EXPECT_EQ(run(c).to_json().dump(), run(c).to_json().dump());
}

TEST(Commands, UsageErrors) {
  auto c = make("verify-ybe");
  c.p = 4;
  EXPECT_THROW(run(c), UsageError);
  c = make("no-such-command");
  EXPECT_THROW(run(c), UsageError);
  c = make("check-rep");
  c.params = {{"family", "x-family1"}, {"x1", 1}};
  EXPECT_THROW(run(c), UsageError);
  c.params = {{"family", "nonsense"}};
  EXPECT_THROW(run(c), UsageError);
  EXPECT_THROW(load_params(cfg_path("missing.json")), UsageError);
}

TEST(Commands, ConstraintViolationIsInvalidInput) {
  EXPECT_THROW(run(make("check-rep", "bad_family1.json")), std::invalid_argument);
}
