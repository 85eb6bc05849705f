#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wbshift/catalog.hpp"

using namespace wbshift;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRun cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path();
  const std::string tag = ::testing::UnitTest::GetInstance()->current_test_info()->name();
  const fs::path out = dir / ("wbshift_" + tag + ".out"), err = dir / ("wbshift_" + tag + ".err");
  const std::string cmd = std::string(WBSHIFT_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

class CatalogSuite : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogSuite, AllExpectedVerdictsMatch) {
  const SuiteResult s = run_expected_suite(build_example(GetParam()));
  for (const auto& o : s.outcomes) {
    ASSERT_TRUE(o.report) << o.spec.label << ": " << o.error;
    EXPECT_TRUE(o.matched) << o.spec.label << " gave " << to_string(o.report->verdict);
  }
  EXPECT_TRUE(s.all_matched);
}

INSTANTIATE_TEST_SUITE_P(Catalog, CatalogSuite, ::testing::ValuesIn(catalog_names()));

TEST(Catalog, UnknownEntryThrows) { EXPECT_THROW(build_example("nope"), std::invalid_argument); }

TEST(Cli, ExampleSuiteExitsZero) {
  const CliRun r = cli("--example ex2_kothe_dc_not_hc");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("status: 0"), std::string::npos);
}

TEST(Cli, CheckFilterUsesRawVerdicts) {
  const CliRun r = cli("--example unweighted_lp_N --check dc_search");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("condition-failed"), std::string::npos);
}

TEST(Cli, MalformedConfigIsAnErrorWithLocation) {
  const fs::path p = write_temp("wbshift_bad.json", "{\n  \"schema_version\": 1,\n  \"space\": [1,\n}\n");
  const CliRun r = cli("--config " + p.string());
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.err.find(p.string() + ":4:"), std::string::npos) << r.err;
}

TEST(Cli, SchemaViolationIsAnErrorWithLocation) {
  const fs::path p = write_temp("wbshift_schema.json", R"({
  "schema_version": 1,
  "space": {"kind": "lp", "p": 2, "J": "Q"},
  "weights": {"sequence": {"constant": 2}},
  "checks": [{"kind": "continuity"}]
})");
  const CliRun r = cli("--config " + p.string());
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.err.find(p.string() + ":3:"), std::string::npos) << r.err;
}

TEST(Cli, ExportRunsAsConfig) {
  const CliRun exp = cli("--example rolewicz_lp_N --export");
  ASSERT_EQ(exp.status, 0);
  const fs::path p = write_temp("wbshift_rolewicz.json", exp.out);
  const CliRun r = cli("--config " + p.string() + " --format json");
  EXPECT_EQ(r.status, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["experiment"], "rolewicz_lp_N");
  EXPECT_EQ(j["status"], 0);
}

TEST(Cli, InconclusiveWithoutExpectation) {
  // Hypercyclicity witness with too short a sequence to settle.
  const fs::path p = write_temp("wbshift_short.json", R"({
  "schema_version": 1,
  "space": {"kind": "s", "J": "Z"},
  "weights": {"sequence": {"split": 0, "negative": {"template": "alternating_powers"},
                           "nonnegative": {"template": "constant", "value": 2}}},
  "checks": [{"kind": "hypercyclicity", "params": {"n": {"poly": [0, -1, 4], "count": 20}, "K": 4}}]
})");
  EXPECT_EQ(cli("--config " + p.string()).status, 2);
}

TEST(Cli, ListAndBadArguments) {
  const CliRun list = cli("--list");
  EXPECT_EQ(list.status, 0);
  for (const auto& n : catalog_names()) EXPECT_NE(list.out.find(n), std::string::npos);
  EXPECT_EQ(cli("--example nope").status, 3);
  EXPECT_EQ(cli("--example ex1_s_Z_hc_not_dc --format xml").status, 3);
  EXPECT_EQ(cli("").status, 3);
}

TEST(Cli, CsvOutputToFile) {
  const fs::path out = fs::temp_directory_path() / "wbshift_out.csv";
  const CliRun r = cli("--example halfweights_bilateral --format csv --out " + out.string());
  EXPECT_EQ(r.status, 0);
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.rfind("# no falsifier,acb,condition-failed", 0), 0u) << csv.substr(0, 80);
}
