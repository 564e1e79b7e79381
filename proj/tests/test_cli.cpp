#include "fixtures.hpp"
#include "redukit/commands.hpp"
#include "redukit/error.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace redukit;
using nlohmann::json;

namespace {

json raw(const std::string& name) {
  std::ifstream in(fixtures::scenario_path(name));
  return json::parse(in);
}

ErrorCode load_error(const json& j) {
  try {
    parse_scenario(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string line = env + " " + std::string(REDUKIT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(line.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(Scenario, BundledFilesLoad) {
  const Scenario s1 = fixtures::load("s1");
  EXPECT_EQ(s1.name, "S1");
  EXPECT_EQ(s1.g_basis.size(), 3u);
  EXPECT_EQ(s1.omega.size(), 3u);
  EXPECT_EQ(s1.focusing.families.size(), 4u);
  const Scenario s2 = fixtures::load("s2");
  EXPECT_EQ(s2.g_basis.size(), 8u);
  EXPECT_EQ(s2.h_coords.cols(), 3);
}

TEST(Scenario, MalformedInputs) {
  json j = raw("s1");
  j["rep"]["drho"].erase(2);
  EXPECT_EQ(load_error(j), ErrorCode::LoadError);

  j = raw("s1");
  j["schema_version"] = 99;
  EXPECT_EQ(load_error(j), ErrorCode::LoadError);

  j = raw("s1");
  j["omega"][0]["factors"][0] = {1, 2};
  EXPECT_EQ(load_error(j), ErrorCode::LoadError);

  j = raw("s1");
  j.erase("g_basis");
  EXPECT_EQ(load_error(j), ErrorCode::LoadError);

  EXPECT_THROW(load_scenario("/nonexistent/file.json"), Error);
}

TEST(Scenario, MatrixElementsAreConverted) {
  json j = raw("s1");
  j["h_basis"] = json::array({json::array({json::array({1, 0}), json::array({0, -1})})});
  const Scenario s = parse_scenario(j);
  EXPECT_NEAR(s.h_coords(0, 0), 1.0, 1e-14);
  j["h_basis"] = json::array({json::array({json::array({1, 0}), json::array({0, 1})})});  // identity not in sl(2)
  EXPECT_EQ(load_error(j), ErrorCode::LoadError);
}

TEST(CmdCheck, BundledScenariosPass) {
  for (const char* name : {"s1", "s2"}) {
    const Report r = cmd_check(fixtures::load(name));
    EXPECT_EQ(r.exit_code, kExitOk) << r.results.dump();
    EXPECT_EQ(r.results["remarks"].size(), 9u);
  }
}

TEST(CmdCheck, UnstableSubalgebraReported) {
  json j = raw("s1");
  j["h_basis"] = json::array({json::array({0, 1, 0})});
  const Report r = cmd_check(parse_scenario(j));
  EXPECT_EQ(r.exit_code, kExitValidation);
  EXPECT_EQ(r.results["error"]["code"], "NotThetaStable");
}

TEST(CmdCheck, BrokenRepresentationReported) {
  json j = raw("s1");
  j["rep"]["drho"][0] = json::array({json::array({2, 0}), json::array({0, -2})});
  const Report r = cmd_check(parse_scenario(j));
  EXPECT_EQ(r.exit_code, kExitValidation);
  EXPECT_EQ(r.results["error"]["code"], "ValidationFailed");
}

TEST(CmdConstant, TorusAndSo3) {
  const Report r1 = cmd_constant(fixtures::load("s1"));
  ASSERT_EQ(r1.exit_code, kExitOk);
  const double coth1 = std::cosh(1.0) / std::sinh(1.0);
  EXPECT_NEAR(r1.results["certificate"]["c_prime"].get<double>(), coth1 * coth1, 1e-9);
  const Report r2 = cmd_constant(fixtures::load("s2"));
  ASSERT_EQ(r2.exit_code, kExitOk);
  EXPECT_EQ(r2.results["coefficient_dim"], 35);
  EXPECT_GE(r2.results["certificate"]["c_prime"].get<double>(), 1.0);
  EXPECT_LE(r2.results["certificate"]["lp"]["duality_gap"].get<double>(), 1e-8);
}

TEST(CmdConstant, EmptyOmegaIsStarViolation) {
  json j = raw("s1");
  j["omega"] = json::array();
  const Report r = cmd_constant(parse_scenario(j));
  EXPECT_EQ(r.exit_code, kExitValidation);
  EXPECT_EQ(r.results["error"]["code"], "StarViolated");
}

TEST(CmdMostow, SuppliedElement) {
  CommandOptions opts;
  Mat g(2, 2);
  g << 2, 1, 3, 2;  // det 1
  opts.element = g;
  const Report r = cmd_mostow(fixtures::load("s1"), opts);
  ASSERT_EQ(r.exit_code, kExitOk) << r.results.dump();
  EXPECT_LE(r.results["factorizations"][0]["residual"].get<double>(), 1e-8);
}

TEST(CmdFocusing, TruthTable) {
  const Report r = cmd_focusing(fixtures::load("s1"));
  ASSERT_EQ(r.exit_code, kExitOk) << r.results.dump();
  const json& f = r.results["families"];
  EXPECT_EQ(f[0]["a_holds"], true);
  EXPECT_EQ(f[0]["b_verdict"], "holds");
  EXPECT_EQ(f[1]["a_holds"], false);
  EXPECT_EQ(f[1]["b_verdict"], "fails");
  EXPECT_EQ(f[2]["a_holds"], true);
  EXPECT_EQ(f[2]["b_verdict"], "fails");
  EXPECT_EQ(f[2]["in_y"], false);
}

TEST(Report, RoundTripKeepsEveryBit) {
  CommandOptions opts;
  opts.samples = 50;
  const Report r = cmd_verify(fixtures::load("s1"), opts);
  const auto path = std::filesystem::temp_directory_path() / "redukit_roundtrip.json";
  write_report(r, path);
  const Report back = read_report(path);
  EXPECT_EQ(report_body(back), report_body(r));
  EXPECT_EQ(back.results["min_ratio"].get<double>(), r.results["min_ratio"].get<double>());
  std::filesystem::remove(path);
}

TEST(Report, VerifyIsDeterministic) {
  CommandOptions a, b;
  a.samples = b.samples = 200;
  a.seed = b.seed = 1234;
  a.threads = 1;
  b.threads = 3;
  EXPECT_EQ(report_body(cmd_verify(fixtures::load("s2"), a)), report_body(cmd_verify(fixtures::load("s2"), b)));
  CommandOptions c = a;
  c.seed = 4321;
  EXPECT_NE(report_body(cmd_verify(fixtures::load("s2"), a)), report_body(cmd_verify(fixtures::load("s2"), c)));
}

TEST(Binary, ExitCodes) {
  const std::string s1 = fixtures::scenario_path("s1");
  EXPECT_EQ(run_cli("check --scenario " + s1 + " --quiet"), 0);
  EXPECT_EQ(run_cli("verify --scenario " + s1 + " --samples 100 --seed 9 --quiet"), 0);
  EXPECT_EQ(run_cli("mostow --scenario " + s1 + " --element '[[2,1],[3,2]]' --quiet"), 0);

  const auto bad = std::filesystem::temp_directory_path() / "redukit_bad.json";
  {
    json j = raw("s1");
    j["rep"]["drho"].erase(0);
    std::ofstream(bad) << j.dump();
  }
  EXPECT_EQ(run_cli("check --scenario " + bad.string() + " --quiet"), 2);
  std::filesystem::remove(bad);
}

TEST(Binary, ReportFileAndTolerance) {
  const auto out = std::filesystem::temp_directory_path() / "redukit_out.json";
  const std::string cmd = "constant --scenario " + fixtures::scenario_path("s1") + " --quiet --out " + out.string();
  ASSERT_EQ(run_cli(cmd), 0);
  const Report r = read_report(out);
  EXPECT_EQ(r.command, "constant");
  EXPECT_EQ(run_cli(cmd, "REDUKIT_TOL=1e-10"), 0);
  EXPECT_EQ(run_cli(cmd, "REDUKIT_TOL=abc"), 2);
  std::filesystem::remove(out);
}
