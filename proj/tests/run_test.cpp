#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <sstream>

#include "fcuc/run.hpp"
#include "support/fixtures.hpp"

using namespace fcuc;
using namespace fcuc::run;

namespace {

std::string scratch(const std::string& tag) {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  return (report::fs::temp_directory_path() / ("fcuc_run_" + tag + "_" + std::to_string(stamp))).string();
}

RunConfig config(const std::string& command, const std::string& dir) {
  RunConfig c;
  c.command = command;
  c.scenario_path = fixtures::data_path("small_system.json");
  c.output_dir = dir;
  return c;
}

int quiet(const RunConfig& c, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream o, e;
  const int code = run::run(c, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

}  // namespace

TEST(Run, PriceWritesAllFiles) {
  const auto dir = scratch("price");
  auto c = config("price", dir);
  c.method = pricing::Method::Uplift;
  std::string out;
  ASSERT_EQ(quiet(c, &out), kOk);
  EXPECT_NE(out.find("590.00"), std::string::npos);
  for (const char* f : {"uplift_report.csv", "uplift_prices.csv", "uplift_dispatch.csv", "uplift_summary.json"})
    EXPECT_TRUE(report::fs::exists(report::fs::path(dir) / f)) << f;
  report::fs::remove_all(dir);
}

TEST(Run, FormatFilter) {
  const auto dir = scratch("fmt");
  auto c = config("solve", dir);
  c.formats.csv = false;
  ASSERT_EQ(quiet(c), kOk);
  EXPECT_TRUE(report::fs::exists(report::fs::path(dir) / "solve_summary.json"));
  EXPECT_FALSE(report::fs::exists(report::fs::path(dir) / "solve_dispatch.csv"));
  report::fs::remove_all(dir);
}

TEST(Run, OutputDirPrecedence) {
  RunConfig c;
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(resolve_output_dir(c), kDefaultOutputDir);
  ::setenv(kOutputDirEnv, "/tmp/from_env", 1);
  EXPECT_EQ(resolve_output_dir(c), "/tmp/from_env");
  c.output_dir = "/tmp/from_flag";
  EXPECT_EQ(resolve_output_dir(c), "/tmp/from_flag");
  ::unsetenv(kOutputDirEnv);
}

TEST(Run, ExitCodes) {
  const auto dir = scratch("codes");
  auto c = config("price", dir);
  EXPECT_EQ(quiet(c), kInputError);  // no method

  c.method = pricing::Method::ExPost;
  c.scenario_path = "/nonexistent.json";
  EXPECT_EQ(quiet(c), kInputError);

  c = config("solve", dir);
  c.rocof_limit = 0.01;
  std::string err;
  EXPECT_EQ(quiet(c, nullptr, &err), kInfeasible);
  EXPECT_NE(err.find("hour(s)"), std::string::npos);

  c = config("sweep-slack", dir);
  c.grid = "1,x";
  EXPECT_EQ(quiet(c), kInputError);
  c.grid = "2,1";
  EXPECT_EQ(quiet(c), kInputError);

  c = config("bogus", dir);
  EXPECT_EQ(quiet(c), kInputError);
  report::fs::remove_all(dir);
}

TEST(Run, MalformedScenarioIsInputError) {
  const auto dir = scratch("bad");
  report::write_text(report::fs::path(dir) / "bad.json", "{\"horizon\": ");
  auto c = config("solve", dir);
  c.scenario_path = (report::fs::path(dir) / "bad.json").string();
  std::string err;
  EXPECT_EQ(quiet(c, nullptr, &err), kInputError);
  EXPECT_NE(err.find("line 1"), std::string::npos);
  report::fs::remove_all(dir);
}

TEST(Run, RocofOverrideChangesTheSchedule) {
  const auto dir = scratch("rocof");
  auto c = config("solve", dir);
  c.rocof_limit = 10.0;
  std::string out;
  ASSERT_EQ(quiet(c, &out), kOk);
  EXPECT_NE(out.find("objective 3360.00"), std::string::npos);
  report::fs::remove_all(dir);
}

TEST(Run, PlaceholderScenarioWarns) {
  const auto dir = scratch("ph");
  auto s = fixtures::small_system();
  s.placeholder_profiles = true;
  report::write_text(report::fs::path(dir) / "ph.json", io::serialize_scenario(s));
  auto c = config("solve", dir);
  c.scenario_path = (report::fs::path(dir) / "ph.json").string();
  std::string err;
  ASSERT_EQ(quiet(c, nullptr, &err), kOk);
  EXPECT_NE(err.find("placeholder"), std::string::npos);
  report::fs::remove_all(dir);
}

TEST(Run, FreqMetrics) {
  RunConfig c;
  c.command = "freq-metrics";
  c.freq.delta_p = 0.1;
  c.freq.params = {8, 1, 20, 0.3, 8, 0.5, 1, 2};
  std::string out;
  ASSERT_EQ(quiet(c, &out), kOk);
  const auto j = nlohmann::json::parse(out);
  EXPECT_DOUBLE_EQ(j["rocof_pu_per_s"].get<double>(), -0.0125);
  EXPECT_DOUBLE_EQ(j["min_inertia_for_rocof_s"].get<double>(), 20.0);
  c.freq.params.M = 0;
  EXPECT_EQ(quiet(c), kInputError);
}
