#pragma once

// Scenario-level studies: slack-inertia substitution curve, VI bid sweep and
// the side-by-side comparison of the three payment schemes.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <cstddef>
#include <future>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fcuc/pricing.hpp"
#include "fcuc/uc.hpp"

namespace fcuc::analysis {

struct SubstitutionPoint {
  double cost = 0.0;       // C+, EUR/(MW s^2)
  double purchased = 0.0;  // horizon max of slack inertia actually used, MW s^2
  double purchased_total = 0.0;
  double total_cost = 0.0;  // UC objective including the slack cost, EUR
};

struct SubstitutionCurve {
  std::vector<SubstitutionPoint> points;
};

/// Slack inertia that actually covers a shortfall, per hour, MW s^2.
inline std::vector<double> purchased_slack(const UcSolution& sol) {
  std::vector<double> out(sol.m.size(), 0.0);
  for (std::size_t t = 0; t < sol.m.size(); ++t) {
    const double gap = std::max(0.0, sol.required[t] - sol.inertia(t));
    out[t] = std::min(sol.m_plus[t] * sol.inertia_base, gap);
    if (out[t] < 1e-9) out[t] = 0.0;
  }
  return out;
}

inline SubstitutionPoint substitution_point(const Scenario& s, double cost) {
  UcVariant v;
  v.frequency_constrained = true;
  v.slack_inertia = cost;
  const auto sol = solve_uc(s, v);
  SubstitutionPoint p;
  p.cost = cost;
  p.total_cost = sol.objective;
  for (double x : purchased_slack(sol)) {
    p.purchased = std::max(p.purchased, x);
    p.purchased_total += x;
  }
  return p;
}

inline SubstitutionCurve substitution_sweep(const Scenario& s, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("substitution_sweep: empty cost grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("substitution_sweep: grid not ascending");
  std::vector<std::future<SubstitutionPoint>> jobs;
  for (double cost : grid) jobs.push_back(std::async(std::launch::async, substitution_point, std::cref(s), cost));
  SubstitutionCurve c;
  for (auto& j : jobs) c.points.push_back(j.get());
  return c;
}

/// Upper end for automatic grids: committing every SG at minimum output for the
/// whole horizon, spread over the smallest positive hourly requirement.
inline double fleet_replacement_cost(const Scenario& s) {
  double fleet = 0.0;
  for (const auto& g : s.generators) fleet += g.startup_cost + g.fuel_cost * g.p_min * static_cast<double>(s.horizon);
  double smallest = 0.0;
  for (double r : required_inertia(s, s.pu_base()))
    if (r > 1e-9 && (smallest == 0.0 || r < smallest)) smallest = r;
  return smallest > 0.0 ? fleet / smallest : 0.0;
}

/// 0 plus log-spaced points up to 1.2x the replacement cost.
inline std::vector<double> auto_grid(const Scenario& s, std::size_t points = 30) {
  const double hi = 1.2 * fleet_replacement_cost(s);
  std::vector<double> g{0.0};
  if (hi <= 0.0 || points < 2) return g;
  const double lo = hi * 1e-3;
  for (std::size_t k = 0; k + 1 < points; ++k)
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(points - 2)));
  return g;
}

/// Auto grid, then bisection between neighbours whose purchases differ.
inline SubstitutionCurve adaptive_substitution_sweep(const Scenario& s, std::size_t points = 30, int depth = 5) {
  auto curve = substitution_sweep(s, auto_grid(s, points));
  for (int level = 0; level < depth; ++level) {
    std::vector<double> mids;
    for (std::size_t k = 0; k + 1 < curve.points.size(); ++k) {
      const auto& a = curve.points[k];
      const auto& b = curve.points[k + 1];
      if (std::fabs(a.purchased - b.purchased) > 1e-6 && b.cost - a.cost > 1e-6 * std::max(1.0, b.cost))
        mids.push_back(0.5 * (a.cost + b.cost));
    }
    if (mids.empty()) break;
    auto extra = substitution_sweep(s, mids).points;
    curve.points.insert(curve.points.end(), extra.begin(), extra.end());
    std::sort(curve.points.begin(), curve.points.end(), [](const auto& x, const auto& y) { return x.cost < y.cost; });
  }
  return curve;
}

struct ViSweepPoint {
  double bid = 0.0;
  double total_payments = 0.0;
  double uc_objective = 0.0;
  bool negative_dual = false;
};

struct ViSweep {
  pricing::Method method = pricing::Method::Uplift;
  double no_vi_payments = 0.0;
  std::vector<ViSweepPoint> points;
};

inline ViSweep vi_cost_sweep(const Scenario& s, const std::vector<double>& bids, pricing::Method method,
                             const pricing::Options& opt = {}) {
  if (s.vi_units.empty()) throw std::invalid_argument("vi_cost_sweep: scenario has no VI units");
  UcVariant sg_only;
  sg_only.frequency_constrained = true;
  const auto reference = two_step_pipeline(s, sg_only);
  ViSweep out;
  out.method = method;
  out.no_vi_payments = pricing::run_method(s, reference, method, opt, &reference).total_payments;
  for (double bid : bids) {
    Scenario sc = s;
    for (auto& v : sc.vi_units) v.bid_cost = bid;
    UcVariant with_vi = sg_only;
    with_vi.vi_enabled = true;
    const auto ts = two_step_pipeline(sc, with_vi);
    const auto res = pricing::run_method(sc, ts, method, opt, &reference);
    out.points.push_back({bid, res.total_payments, ts.step2.objective, !res.negative_dual_hours.empty()});
  }
  return out;
}

struct MethodSummary {
  pricing::Method method = pricing::Method::ExPost;
  double uc_objective = 0.0;
  double total_payments = 0.0;
  int negative_profit_units = 0;
  int positive_profit_units = 0;
  int counted_units = 0;
};

struct MethodComparison {
  TwoStepResult two_step;
  std::array<pricing::MethodResult, 3> results;
  std::array<MethodSummary, 3> summary;
};

inline constexpr std::array<pricing::Method, 3> kMethods{pricing::Method::ExPost, pricing::Method::Utility,
                                                         pricing::Method::Uplift};

/// One two-step run, three payment schemes on the same commitment and dispatch.
inline MethodComparison compare_methods(const Scenario& s, bool vi_enabled = false, const pricing::Options& opt = {}) {
  UcVariant v;
  v.frequency_constrained = true;
  v.vi_enabled = vi_enabled;
  MethodComparison c;
  c.two_step = two_step_pipeline(s, v);
  std::optional<TwoStepResult> reference;
  if (vi_enabled && !opt.utility) {
    UcVariant sg = v;
    sg.vi_enabled = false;
    reference = two_step_pipeline(s, sg);
  }
  const TwoStepResult* ref = reference ? &*reference : &c.two_step;
  for (std::size_t k = 0; k < kMethods.size(); ++k) {
    c.results[k] = pricing::run_method(s, c.two_step, kMethods[k], opt, ref);
    const auto& r = c.results[k];
    c.summary[k] = {kMethods[k], c.two_step.step2.objective, r.total_payments, r.report.negative_profit_units,
                    r.report.positive_profit_units, r.report.counted_units};
  }
  return c;
}

}  // namespace fcuc::analysis
