#include <gtest/gtest.h>

#include <sstream>

#include "wbshift/catalog.hpp"
#include "wbshift/config.hpp"
#include "wbshift/runner.hpp"

using namespace wbshift;

namespace {

const char* kMinimal = R"({
  "schema_version": 1,
  "name": "mini",
  "space": {"kind": "lp", "p": 2, "J": "N"},
  "weights": {"sequence": {"constant": 2}},
  "checks": [
    {"kind": "dc", "expect": "certified-at-horizon",
     "params": {"m": 1, "entries": [{"k": 4, "N": 100, "terms": [{"index": 110}]}]}}
  ]
})";

std::string error_of(const std::string& text) {
  try {
    const ExperimentConfig cfg = parse_config(text, "doc.json");
    prepare_all(cfg, make_operator(cfg));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesAndRuns) {
  const ExperimentConfig cfg = parse_config(kMinimal, "mini.json");
  EXPECT_EQ(cfg.name, "mini");
  EXPECT_EQ(cfg.space.J, IndexSet::N);
  const auto out = run_checks(cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].matched);
  EXPECT_EQ(out[0].report->table.at<Index>(0, "count"), 98);
  EXPECT_EQ(exit_status(out), kExitOk);
}

TEST(Config, SyntaxErrorsCarryLineAndColumn) {
  const std::string bad = "{\n  \"schema_version\": 1,\n  \"name\": oops\n}";
  EXPECT_EQ(error_of(bad).rfind("doc.json:3:", 0), 0u) << error_of(bad);
}

TEST(Config, SchemaErrorsPointAtTheOffendingValue) {
  std::string t = kMinimal;
  t.replace(t.find("\"p\": 2"), 6, "\"p\": 0.5");
  const std::string e = error_of(t);
  EXPECT_NE(e.find("doc.json:4:"), std::string::npos) << e;
  EXPECT_NE(e.find("p must be"), std::string::npos) << e;

  std::string u = kMinimal;
  u.replace(u.find("\"m\": 1"), 6, "\"mm\": 1");
  const std::string e2 = error_of(u);
  EXPECT_NE(e2.find("doc.json:8:"), std::string::npos) << e2;

  std::string v = kMinimal;
  v.replace(v.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
  EXPECT_NE(error_of(v).find("doc.json:2:"), std::string::npos) << error_of(v);

  std::string w = kMinimal;
  w.replace(w.find("\"dc\""), 4, "\"dcx\"");
  EXPECT_NE(error_of(w).find("unknown check kind"), std::string::npos);
}

TEST(Config, ExpectedVerdictsMustBeKnown) {
  std::string t = kMinimal;
  t.replace(t.find("certified-at-horizon"), 20, "certified");
  EXPECT_NE(error_of(t).find("unknown verdict"), std::string::npos);
}

TEST(Config, CatalogExportsRoundTrip) {
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = build_example(name);
    const std::string doc = export_config(e);
    const ExperimentConfig back = parse_config(doc, name);
    EXPECT_EQ(config_json(back).dump(2) + "\n", doc) << name;
    EXPECT_EQ(back.checks.size(), e.config.checks.size());
    EXPECT_NO_THROW(prepare_all(back, make_operator(back))) << name;
  }
}

TEST(Config, HorizonOverrideRewritesParameters) {
  ExperimentConfig cfg = build_example("halfweights_bilateral").config;
  override_horizon(cfg, 77);
  for (const auto& c : cfg.checks) {
    if (c.params.contains("N_max")) EXPECT_EQ(c.params["N_max"], 77);
    if (c.params.contains("horizon")) EXPECT_EQ(c.params["horizon"], 77);
  }
  EXPECT_THROW(override_horizon(cfg, 0), ConfigError);
}

TEST(Runner, ExitStatusRules) {
  CheckOutcome ok{CheckSpec{"dc", Verdict::failed, {}, "x"}, CertificateReport{}, "", true};
  CheckOutcome miss{CheckSpec{"dc", Verdict::certified, {}, "x"}, CertificateReport{}, "", false};
  CheckOutcome open{CheckSpec{"dc", std::nullopt, {}, "x"}, CertificateReport{}, "", false};
  CheckOutcome err{CheckSpec{"dc", std::nullopt, {}, "x"}, std::nullopt, "boom", false};
  EXPECT_EQ(exit_status({ok}), kExitOk);
  EXPECT_EQ(exit_status({ok, miss}), kExitFailed);
  EXPECT_EQ(exit_status({ok, open}), kExitInconclusive);
  EXPECT_EQ(exit_status({miss, open}), kExitFailed);
  EXPECT_EQ(exit_status({ok, err}), kExitError);
}

TEST(Runner, JsonNumbersCarryLogMagnitudes) {
  const auto j = field_json(Field(LogScalar::from_log(1, 5000.0)));
  EXPECT_EQ(j["sign"], 1);
  EXPECT_DOUBLE_EQ(j["logmag"].get<double>(), 5000.0);
  const std::string dec = j["decimal"].get<std::string>();
  EXPECT_EQ(dec.substr(0, 8), "2.967628");
  EXPECT_EQ(dec.substr(dec.size() - 6), "e+2171");
  EXPECT_TRUE(field_json(Field(LogScalar::zero()))["logmag"].is_null());
  EXPECT_EQ(field_json(Field(Index(12))), 12);
}

TEST(Runner, FormatsAreDeterministic) {
  const ExperimentConfig cfg = parse_config(kMinimal, "mini.json");
  for (const char* fmt : {"report", "csv", "json"}) {
    std::ostringstream a, b;
    write_outcomes(a, run_checks(cfg), cfg, fmt);
    write_outcomes(b, run_checks(cfg), cfg, fmt);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_FALSE(a.str().empty());
  }
  std::ostringstream j;
  write_outcomes(j, run_checks(cfg), cfg, "json");
  const json parsed = json::parse(j.str());
  EXPECT_EQ(parsed["status"], 0);
  EXPECT_EQ(parsed["reports"][0]["verdict"], "certified-at-horizon");
}
