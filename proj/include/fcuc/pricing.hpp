#pragma once

// Inertia prices, payments and profits for the three payment schemes:
// ex-post price, utility function and uplift.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcuc/uc.hpp"

namespace fcuc::pricing {

enum class Method { ExPost, Utility, Uplift };
enum class NegativeDualPolicy { Passthrough, Clamp, FixUtility };
enum class HdemRule { Sum, Max };
enum class UpliftScope { ExtraCells, AllUnits };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::ExPost: return "expost";
    case Method::Utility: return "utility";
    case Method::Uplift: return "uplift";
  }
  return "?";
}

inline std::optional<Method> parse_method(const std::string& s) {
  if (s == "expost") return Method::ExPost;
  if (s == "utility") return Method::Utility;
  if (s == "uplift") return Method::Uplift;
  return std::nullopt;
}

inline std::optional<NegativeDualPolicy> parse_policy(const std::string& s) {
  if (s == "passthrough") return NegativeDualPolicy::Passthrough;
  if (s == "clamp") return NegativeDualPolicy::Clamp;
  if (s == "fix-utility") return NegativeDualPolicy::FixUtility;
  return std::nullopt;
}

struct Options {
  NegativeDualPolicy negative_dual = NegativeDualPolicy::Passthrough;
  HdemRule hdem = HdemRule::Sum;
  std::optional<double> utility;  // U^H override, EUR/(MW s^2)
  UpliftScope uplift_scope = UpliftScope::ExtraCells;
  bool uplift_upper_term = false;
};

/// Payment per unit-hour, SG [unit][hour] and VI [unit][hour], EUR.
struct Payments {
  std::vector<std::vector<double>> sg, vi;

  double total() const {
    double s = 0.0;
    for (const auto& row : sg)
      for (double x : row) s += x;
    for (const auto& row : vi)
      for (double x : row) s += x;
    return s;
  }
};

inline Payments zero_payments(const Scenario& s, const UcSolution& sol) {
  Payments p;
  p.sg.assign(s.generators.size(), std::vector<double>(s.horizon, 0.0));
  p.vi.assign(sol.pv.size(), std::vector<double>(s.horizon, 0.0));
  return p;
}

/// Highest per-MW s^2 cost among the units committed only for inertia at `hour`.
inline double sg_marginal_inertia_cost(const DualSet& duals, const UcSolution& sol,
                                       const std::set<ExtraCell>& extra, const Scenario& s, std::size_t hour) {
  if (hour >= s.horizon) throw std::out_of_range("sg_marginal_inertia_cost: hour out of range");
  double best = 0.0;
  for (const auto& c : extra) {
    if (c.hour != hour || sol.u[c.unit][hour] != 1) continue;
    const auto& g = s.generators[c.unit];
    const double h = 2.0 * g.inertia_const * g.p_max;
    if (!(h > 0.0)) throw std::domain_error("unit " + g.id + " is committed with zero inertia");
    const double loss = std::max(g.fuel_cost - duals.mu[hour], 0.0) * sol.p[c.unit][hour];
    best = std::max(best, (loss + g.startup_cost * sol.y[c.unit][hour]) / h);
  }
  return best;
}

inline std::vector<double> ex_post_price(const DualSet& duals, const UcSolution& sol,
                                         const std::set<ExtraCell>& extra, const Scenario& s) {
  std::vector<double> out(s.horizon, 0.0);
  for (std::size_t t = 0; t < s.horizon; ++t)
    out[t] = std::max(duals.lambda_h[t], sg_marginal_inertia_cost(duals, sol, extra, s, t));
  return out;
}

/// Capacity-scaled payments to every inertia provider at the given hourly price.
inline Payments inertia_payments(const std::vector<double>& price, const UcSolution& sol, const Scenario& s) {
  auto p = zero_payments(s, sol);
  const double sg = s.sg_capacity();
  const double vi = sol.pv.empty() ? 0.0 : s.vi_capacity();
  const double sg_scale = sg / (sg + vi), vi_scale = vi / (sg + vi);
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    const auto& g = s.generators[i];
    for (std::size_t t = 0; t < s.horizon; ++t)
      p.sg[i][t] = price[t] * 2.0 * g.inertia_const * g.p_max * sol.u[i][t] * sg_scale;
  }
  for (std::size_t v = 0; v < sol.pv.size(); ++v)
    for (std::size_t t = 0; t < s.horizon; ++t) p.vi[v][t] = price[t] * sol.hv[v][t] * vi_scale;
  return p;
}

inline double utility_of_inertia(double cost_with_fc, double cost_without_fc, double h_dem) {
  if (!(h_dem > 0.0)) throw std::domain_error("utility_of_inertia: inertia demand must be > 0");
  if (cost_with_fc < cost_without_fc - 1e-9)
    throw std::domain_error("utility_of_inertia: constrained cost is below the unconstrained cost");
  return (cost_with_fc - cost_without_fc) / h_dem;
}

struct UtilityEstimate {
  double cost_with_fc = 0.0;
  double cost_without_fc = 0.0;
  InertiaShortfall shortfall;
  double h_dem = 0.0;
  double value = 0.0;  // U^H
};

/// U^H from a synchronous-only two-step run.
inline UtilityEstimate estimate_utility(const Scenario& s, const TwoStepResult& sg_only, HdemRule rule) {
  if (sg_only.variant.vi_enabled) throw std::invalid_argument("estimate_utility needs a run without virtual inertia");
  UtilityEstimate u;
  u.cost_with_fc = sg_only.step2.objective;
  u.cost_without_fc = sg_only.step1.objective;
  u.shortfall = inertia_shortfall(s, sg_only.step1);
  u.h_dem = rule == HdemRule::Sum ? u.shortfall.sum : u.shortfall.max;
  u.value = u.h_dem > 0.0 ? utility_of_inertia(u.cost_with_fc, u.cost_without_fc, u.h_dem) : 0.0;
  return u;
}

struct UtilityPricing {
  double utility = 0.0;
  std::vector<double> prices;         // after the negative-dual policy
  std::vector<double> raw_prices;     // before it
  std::vector<std::size_t> negative_hours;
  std::vector<std::vector<double>> allocated;  // inertia of extra cells, MW s^2 [unit][hour]
  RestrictedSolve lp;
};

/// Restricted LP with the utility reward: extra cells supply inertia continuously,
/// every other online unit is pinned at full inertia, and the requirement is met
/// exactly wherever the pinned units fall short. Price = value of one more MW s^2.
inline UtilityPricing utility_method_prices(const Scenario& s, const TwoStepResult& ts, double utility,
                                            NegativeDualPolicy policy = NegativeDualPolicy::Passthrough) {
  if (utility < 0.0) throw std::invalid_argument("utility must be >= 0");
  UcVariant v = ts.variant;
  v.continuous_k = true;
  v.utility_term = utility;
  auto prob = build(s, v);
  const auto& ix = prob.index;
  for (std::size_t t = 0; t < s.horizon; ++t) {
    double baseline = 0.0;
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
      if (ts.step2.u[i][t] != 1 || ts.is_extra(i, t)) continue;
      prob.lp.set_relation(ix.k_def[i][t], opt::Relation::Equal, 0.0);
      baseline += 2.0 * s.generators[i].inertia_const * s.generators[i].p_max;
    }
    for (std::size_t b = 0; b < ix.pv.size(); ++b)
      baseline += 2.0 * s.vi_units[b].inertia_const * s.vi_units[b].p_min;
    if (s.disturbance[t] == 0.0 || baseline >= prob.required[t]) continue;
    const auto row = s.disturbance[t] > 0.0 ? ix.rocof_pos[t] : ix.rocof_neg[t];
    prob.lp.set_relation(row, opt::Relation::Equal, prob.lp.constraint(row).rhs);
  }

  UtilityPricing r;
  r.utility = utility;
  r.lp = solve_restricted(s, std::move(prob), ts.step2);
  r.raw_prices.assign(s.horizon, 0.0);
  r.prices = r.raw_prices;
  for (std::size_t t = 0; t < s.horizon; ++t) {
    const double lam = -r.lp.duals.lambda_h[t];
    r.raw_prices[t] = lam;
    r.prices[t] = lam;
    if (lam < -1e-9) {
      r.negative_hours.push_back(t);
      if (policy == NegativeDualPolicy::Clamp) r.prices[t] = 0.0;
      if (policy == NegativeDualPolicy::FixUtility) r.prices[t] = utility;
    }
  }
  r.allocated.assign(s.generators.size(), std::vector<double>(s.horizon, 0.0));
  for (const auto& c : ts.extra_cells) r.allocated[c.unit][c.hour] = r.lp.solution.h[c.unit][c.hour];
  return r;
}

inline Payments utility_payments(const Scenario& s, const UcSolution& sol, const UtilityPricing& up) {
  auto p = zero_payments(s, sol);
  for (std::size_t i = 0; i < s.generators.size(); ++i)
    for (std::size_t t = 0; t < s.horizon; ++t) p.sg[i][t] = up.prices[t] * up.allocated[i][t];
  for (std::size_t v = 0; v < sol.hv.size(); ++v)
    for (std::size_t t = 0; t < s.horizon; ++t) p.vi[v][t] = up.prices[t] * sol.hv[v][t];
  return p;
}

struct UpliftOptions {
  UpliftScope scope = UpliftScope::ExtraCells;
  bool upper_term = false;  // adds -nu_upper * p_max
};

/// Make-whole payments from the restricted-model duals; VI units are paid the RoCoF dual.
inline Payments uplift_payments(const Scenario& s, const TwoStepResult& ts, const UpliftOptions& opt = {}) {
  const auto& sol = ts.restricted.solution;
  const auto& d = ts.restricted.duals;
  auto p = zero_payments(s, sol);
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    const auto& g = s.generators[i];
    for (std::size_t t = 0; t < s.horizon; ++t) {
      if (sol.u[i][t] != 1) continue;
      if (opt.scope == UpliftScope::ExtraCells && !ts.is_extra(i, t)) continue;
      double pi = g.startup_cost * sol.y[i][t] + d.nu_lower[i][t] * g.p_min;
      if (opt.upper_term) pi -= d.nu_upper[i][t] * g.p_max;
      p.sg[i][t] = pi;
    }
  }
  for (std::size_t v = 0; v < sol.pv.size(); ++v)
    for (std::size_t t = 0; t < s.horizon; ++t)
      p.vi[v][t] = ts.relaxed.duals.lambda_h[t] * sol.hv[v][t];
  return p;
}

struct ReportCell {
  std::string unit;
  bool virtual_inertia = false;
  std::size_t hour = 0;
  double eom_profit = 0.0;  // SG: (mu - C) p; VI: -C^VI h
  double startup_cost = 0.0;
  double inertia_payment = 0.0;
  double total_profit = 0.0;
};

struct UnitTotals {
  double eom_profit = 0.0, startup_cost = 0.0, inertia_payment = 0.0, total_profit = 0.0;
  bool committed = false;
};

struct PaymentReport {
  std::vector<ReportCell> cells;  // hour-major, SGs then VI units
  std::vector<double> price;      // lambda-hat per hour
  std::vector<double> mu;
  std::vector<std::string> unit_order;
  std::map<std::string, UnitTotals> units;
  UnitTotals system;
  int negative_profit_units = 0;
  int positive_profit_units = 0;
  int counted_units = 0;
};

inline constexpr double kProfitEps = 0.005;

inline PaymentReport profit_report(const Scenario& s, const UcSolution& sol, const DualSet& duals,
                                   const Payments& pay, const std::vector<double>& price) {
  PaymentReport r;
  r.price = price;
  r.mu = duals.mu;
  for (const auto& g : s.generators) r.unit_order.push_back(g.id);
  for (std::size_t v = 0; v < sol.pv.size(); ++v) r.unit_order.push_back(s.vi_units[v].id);
  for (std::size_t t = 0; t < s.horizon; ++t) {
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
      const auto& g = s.generators[i];
      ReportCell c;
      c.unit = g.id;
      c.hour = t;
      c.eom_profit = (duals.mu[t] - g.fuel_cost) * sol.p[i][t];
      c.startup_cost = g.startup_cost * sol.y[i][t];
      c.inertia_payment = pay.sg[i][t];
      c.total_profit = c.eom_profit - c.startup_cost + c.inertia_payment;
      if (sol.u[i][t] == 1) r.units[g.id].committed = true;
      r.cells.push_back(c);
    }
    for (std::size_t v = 0; v < sol.pv.size(); ++v) {
      const auto& b = s.vi_units[v];
      ReportCell c;
      c.unit = b.id;
      c.virtual_inertia = true;
      c.hour = t;
      c.eom_profit = -b.bid_cost * sol.hv[v][t];
      c.inertia_payment = pay.vi[v][t];
      c.total_profit = c.eom_profit + c.inertia_payment;
      if (sol.hv[v][t] > 1e-9) r.units[b.id].committed = true;
      r.cells.push_back(c);
    }
  }
  for (const auto& c : r.cells) {
    auto& u = r.units[c.unit];
    for (auto* tot : {&u, &r.system}) {
      tot->eom_profit += c.eom_profit;
      tot->startup_cost += c.startup_cost;
      tot->inertia_payment += c.inertia_payment;
      tot->total_profit += c.total_profit;
    }
  }
  for (const auto& id : r.unit_order) {
    const auto& u = r.units[id];
    if (!u.committed) continue;
    ++r.counted_units;
    if (u.total_profit < -kProfitEps) ++r.negative_profit_units;
    if (u.total_profit > kProfitEps) ++r.positive_profit_units;
  }
  return r;
}

struct MethodResult {
  Method method = Method::ExPost;
  std::vector<double> price;
  Payments payments;
  PaymentReport report;
  double total_payments = 0.0;
  std::optional<UtilityEstimate> utility;
  std::vector<std::size_t> negative_dual_hours;
  std::vector<std::string> warnings;
};

/// Runs one payment scheme on a finished two-step result. `sg_only` supplies
/// U^H for the utility method; when null the scenario is re-run without VI
/// (or `ts` is reused when it already has none).
inline MethodResult run_method(const Scenario& s, const TwoStepResult& ts, Method method, const Options& opt = {},
                               const TwoStepResult* sg_only = nullptr) {
  MethodResult r;
  r.method = method;
  const auto& sol = ts.step2;
  switch (method) {
    case Method::ExPost: {
      r.price = ex_post_price(ts.relaxed.duals, sol, ts.extra_cells, s);
      r.payments = inertia_payments(r.price, sol, s);
      break;
    }
    case Method::Utility: {
      double uh = 0.0;
      if (opt.utility) {
        uh = *opt.utility;
      } else {
        std::optional<TwoStepResult> own;
        if (!sg_only) {
          if (ts.variant.vi_enabled) {
            UcVariant v = ts.variant;
            v.vi_enabled = false;
            own = two_step_pipeline(s, v);
            sg_only = &*own;
          } else {
            sg_only = &ts;
          }
        }
        r.utility = estimate_utility(s, *sg_only, opt.hdem);
        uh = r.utility->value;
      }
      const auto up = utility_method_prices(s, ts, uh, opt.negative_dual);
      r.price = up.prices;
      r.payments = utility_payments(s, sol, up);
      r.negative_dual_hours = up.negative_hours;
      if (!up.negative_hours.empty()) {
        std::string hours;
        for (auto t : up.negative_hours) hours += " " + std::to_string(t + 1);
        r.warnings.push_back("negative inertia dual at hour(s)" + hours);
      }
      break;
    }
    case Method::Uplift: {
      r.price = ts.relaxed.duals.lambda_h;
      r.payments = uplift_payments(s, ts, {opt.uplift_scope, opt.uplift_upper_term});
      break;
    }
  }
  r.report = profit_report(s, sol, ts.restricted.duals, r.payments, r.price);
  r.total_payments = r.payments.total();
  r.warnings = scenario_warnings(s);
  return r;
}

}  // namespace fcuc::pricing
