#include <gtest/gtest.h>

#include <algorithm>

#include "fcuc/analysis.hpp"
#include "support/fixtures.hpp"

using namespace fcuc;
using namespace fcuc::analysis;

namespace {

void expect_monotone(const SubstitutionCurve& c) {
  for (std::size_t k = 1; k < c.points.size(); ++k) {
    EXPECT_LE(c.points[k].purchased, c.points[k - 1].purchased + 1e-6) << "C+ = " << c.points[k].cost;
    EXPECT_GE(c.points[k].total_cost, c.points[k - 1].total_cost - 1e-6) << "C+ = " << c.points[k].cost;
  }
}

}  // namespace

TEST(Substitution, FreeSlackCoversTheWholeShortfall) {
  const auto& s = fixtures::small_system();
  const auto c = substitution_sweep(s, {0.0});
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_NEAR(c.points[0].purchased, 964.0, 1e-6);
  EXPECT_NEAR(c.points[0].purchased_total, 3108.0, 1e-6);
  EXPECT_NEAR(c.points[0].total_cost, 3360.0, 1e-6);
}

TEST(Substitution, ExpensiveSlackIsNeverBought) {
  const auto& s = fixtures::small_system();
  const auto c = substitution_sweep(s, {1.2 * fleet_replacement_cost(s)});
  EXPECT_EQ(c.points[0].purchased, 0.0);
  EXPECT_NEAR(c.points[0].total_cost, 3950.0, 1e-6);
}

TEST(Substitution, AutoGridIsMonotoneAndEndsAtZero) {
  const auto& s = fixtures::small_system();
  const auto g = auto_grid(s);
  ASSERT_EQ(g.size(), 30u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 1.2 * fleet_replacement_cost(s), 1e-9);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));

  const auto c = adaptive_substitution_sweep(s);
  EXPECT_GE(c.points.size(), g.size());
  expect_monotone(c);
  EXPECT_EQ(c.points.back().purchased, 0.0);
  EXPECT_GT(c.points.front().purchased, 0.0);
}

TEST(Substitution, ZeroDisturbanceBuysNothing) {
  auto s = fixtures::small_system();
  std::fill(s.disturbance.begin(), s.disturbance.end(), 0.0);
  for (const auto& p : substitution_sweep(s, {0.0, 0.1, 1.0, 100.0}).points) EXPECT_EQ(p.purchased, 0.0);
  EXPECT_EQ(auto_grid(s).size(), 1u);
}

TEST(Substitution, RejectsBadGrids) {
  const auto& s = fixtures::small_system();
  EXPECT_THROW(substitution_sweep(s, {}), std::invalid_argument);
  EXPECT_THROW(substitution_sweep(s, {1.0, 0.5}), std::invalid_argument);
}

TEST(ViSweep, UpliftStaysBelowTheNoViLevel) {
  const auto& s = fixtures::small_system();
  const auto sw = vi_cost_sweep(s, {0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0, 5.0}, pricing::Method::Uplift);
  EXPECT_NEAR(sw.no_vi_payments, 590.0, 1e-6);
  ASSERT_EQ(sw.points.size(), 8u);
  for (const auto& p : sw.points) EXPECT_LE(p.total_payments, sw.no_vi_payments + 1e-6) << "bid " << p.bid;
  EXPECT_NEAR(sw.points.back().total_payments, 590.0, 1e-6);
}

TEST(ViSweep, UtilityFlagsNegativeDualsAtHighBids) {
  const auto& s = fixtures::small_system();
  const auto sw = vi_cost_sweep(s, {0.05, 0.3}, pricing::Method::Utility);
  EXPECT_FALSE(sw.points[0].negative_dual);
  EXPECT_TRUE(sw.points[1].negative_dual);
}

TEST(ViSweep, ExPostAtZeroBidHasNoExtraUnits) {
  const auto& s = fixtures::small_system();
  const auto sw = vi_cost_sweep(s, {0.0}, pricing::Method::ExPost);
  EXPECT_NEAR(sw.points[0].uc_objective, 3360.0, 1e-6);
  EXPECT_NEAR(sw.points[0].total_payments, 0.0, 1e-6);
}

TEST(ViSweep, RequiresViUnits) {
  auto s = fixtures::small_system();
  s.vi_units.clear();
  EXPECT_THROW(vi_cost_sweep(s, {1.0}, pricing::Method::Uplift), std::invalid_argument);
}

TEST(Compare, SmallSystem) {
  const auto& s = fixtures::small_system();
  const auto c = compare_methods(s);
  for (const auto& m : c.summary) EXPECT_NEAR(m.uc_objective, 3950.0, 1e-6);
  EXPECT_NEAR(c.summary[1].total_payments, 590.0, 1e-6);
  EXPECT_NEAR(c.summary[2].total_payments, 590.0, 1e-6);
  EXPECT_EQ(c.summary[2].negative_profit_units, 0);
  EXPECT_EQ(c.summary[0].negative_profit_units, 0);
  for (std::size_t k = 1; k < 3; ++k) {
    ASSERT_EQ(c.results[k].report.cells.size(), c.results[0].report.cells.size());
    for (std::size_t i = 0; i < c.results[0].report.cells.size(); ++i) {
      EXPECT_EQ(c.results[k].report.cells[i].eom_profit, c.results[0].report.cells[i].eom_profit);
      EXPECT_EQ(c.results[k].report.cells[i].startup_cost, c.results[0].report.cells[i].startup_cost);
    }
  }
}

TEST(Compare, ZeroDisturbance) {
  auto s = fixtures::small_system();
  std::fill(s.disturbance.begin(), s.disturbance.end(), 0.0);
  const auto c = compare_methods(s);
  for (const auto& m : c.summary) {
    EXPECT_NEAR(m.total_payments, 0.0, 1e-9);
    EXPECT_EQ(m.negative_profit_units, 0);
    EXPECT_EQ(m.positive_profit_units, 0);
  }
}

TEST(Compare, WithVirtualInertia) {
  const auto& s = fixtures::small_system();
  const auto c = compare_methods(s, true);
  for (const auto& m : c.summary) EXPECT_EQ(m.uc_objective, c.summary[0].uc_objective);
  EXPECT_LE(c.summary[2].total_payments, 590.0 + 1e-6);
}
