#include <gtest/gtest.h>

#include <chrono>

#include "fcuc/report.hpp"
#include "support/fixtures.hpp"

using namespace fcuc;
using namespace fcuc::report;

namespace {

fs::path scratch(const std::string& tag) {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  auto p = fs::temp_directory_path() / ("fcuc_" + tag + "_" + std::to_string(stamp));
  fs::create_directories(p);
  return p;
}

const TwoStepResult& small_run() {
  static const TwoStepResult r = [] {
    UcVariant v;
    v.frequency_constrained = true;
    return two_step_pipeline(fixtures::small_system(), v);
  }();
  return r;
}

}  // namespace

TEST(Format, FixedDecimals) {
  EXPECT_EQ(eur(590.0), "590.00");
  EXPECT_EQ(eur(-360.004), "-360.00");
  EXPECT_EQ(eur(-0.001), "0.00");
  EXPECT_EQ(dual(0.328125), "0.328125");
  EXPECT_EQ(dual(-1e-9), "0.000000");
  EXPECT_EQ(round_to(-1e-12, 2), 0.0);
}

TEST(Csv, EmptyReportIsHeaderOnly) {
  EXPECT_EQ(profit_csv({}), "hour,unit,eom_profit,startup_cost,inertia_payment,total_profit\n");
  EXPECT_EQ(prices_csv({}, {}), "hour,mu,lambda_hat\n");
  EXPECT_EQ(two_column_csv("bid", "total_payments", {}), "bid,total_payments\n");
}

TEST(Csv, ProfitRowsForUplift) {
  const auto& s = fixtures::small_system();
  const auto r = pricing::run_method(s, small_run(), pricing::Method::Uplift);
  const auto csv = profit_csv(r.report);
  EXPECT_NE(csv.find("\n5,G2,-20.00,300.00,320.00,0.00\n"), std::string::npos);
  EXPECT_NE(csv.find("\n4,G3,-10.00,200.00,210.00,0.00\n"), std::string::npos);
  const auto prices = prices_csv(r.report.mu, r.price);
  EXPECT_EQ(prices.substr(0, prices.find('\n', 20) + 1), "hour,mu,lambda_hat\n1,10.000000,0.000000\n");
}

TEST(Write, UpliftSummaryCarriesTotal) {
  const auto& s = fixtures::small_system();
  const auto r = pricing::run_method(s, small_run(), pricing::Method::Uplift);
  const auto dir = scratch("uplift");
  const auto files = write_method(dir, s, small_run(), r);
  ASSERT_EQ(files.size(), 4u);
  const auto j = json::parse(io::read_file(files[3].string()));
  EXPECT_EQ(j["total_inertia_payments"].get<double>(), 590.0);
  EXPECT_EQ(j["units"]["G2"]["inertia_payment"].get<double>(), 360.0);
  EXPECT_NE(io::read_file(files[3].string()).find("\"total_inertia_payments\": 590.0"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Write, RerunsAreByteIdentical) {
  const auto& s = fixtures::small_system();
  const auto a = scratch("a"), b = scratch("b");
  for (const auto& dir : {a, b}) {
    UcVariant v;
    v.frequency_constrained = true;
    const auto ts = two_step_pipeline(s, v);
    for (auto m : analysis::kMethods) write_method(dir, s, ts, pricing::run_method(s, ts, m));
    write_solve(dir, s, ts);
  }
  std::size_t compared = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    EXPECT_EQ(io::read_file(e.path().string()), io::read_file((b / e.path().filename()).string()))
        << e.path().filename();
    ++compared;
  }
  EXPECT_EQ(compared, 15u);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Write, DispatchTablesMatchAcrossMethods) {
  const auto& s = fixtures::small_system();
  const auto dir = scratch("cmp");
  write_comparison(dir, s, analysis::compare_methods(s));
  const auto ref = io::read_file((dir / "expost_dispatch.csv").string());
  EXPECT_EQ(io::read_file((dir / "utility_dispatch.csv").string()), ref);
  EXPECT_EQ(io::read_file((dir / "uplift_dispatch.csv").string()), ref);
  const auto j = json::parse(io::read_file((dir / "compare_summary.json").string()));
  EXPECT_EQ(j["methods"][2]["total_inertia_payments"].get<double>(), 590.0);
  fs::remove_all(dir);
}

TEST(Write, SweepOutputsAreTwoColumns) {
  const auto& s = fixtures::small_system();
  const auto dir = scratch("sweep");
  const auto files = write_substitution(dir, analysis::substitution_sweep(s, {0.0, 1.0}));
  const auto text = io::read_file(files[0].string());
  EXPECT_EQ(text, "c_plus,purchased_inertia\n0.000000,964.00\n1.000000,0.00\n");
  fs::remove_all(dir);
}

TEST(Write, UnwritablePathIsIoError) {
  const auto dir = scratch("ro");
  write_text(dir / "blocker", "x");
  try {
    write_text(dir / "blocker" / "out.csv", "y");
    FAIL();
  } catch (const io::IoError& e) {
    EXPECT_NE(e.path().find("blocker"), std::string::npos);
  }
  fs::remove_all(dir);
}
