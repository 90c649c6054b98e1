#pragma once

// Unit commitment formulations (with and without virtual inertia, optional
// slack inertia and utility reward) and the two-step commitment pipeline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fcuc/freq.hpp"
#include "fcuc/model.hpp"
#include "fcuc/optimizer/solver.hpp"

namespace fcuc {

struct UcVariant {
  bool frequency_constrained = false;
  bool vi_enabled = false;
  std::optional<double> slack_inertia;  // C+ in EUR/(MW s^2)
  bool continuous_k = false;
  std::optional<double> utility_term;   // U^H in EUR/(MW s^2)
};

inline void check_variant(const UcVariant& v) {
  if (v.slack_inertia && v.vi_enabled)
    throw std::invalid_argument("slack inertia and virtual inertia cannot be combined in one variant");
  if (v.slack_inertia && !v.frequency_constrained)
    throw std::invalid_argument("slack inertia requires the frequency-constrained variant");
  if (v.slack_inertia && *v.slack_inertia < 0.0) throw std::invalid_argument("slack inertia cost must be >= 0");
  if (v.utility_term && *v.utility_term < 0.0) throw std::invalid_argument("utility term must be >= 0");
}

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Variable and row ids of a built model, indexed [unit][hour] or [hour].
struct UcIndex {
  using Grid = std::vector<std::vector<std::size_t>>;
  Grid u, y, p, k, pv;
  std::vector<std::size_t> m, m_plus;
  Grid gen_max, gen_min, k_def;
  std::vector<std::size_t> balance, inertia_def, rocof_pos, rocof_neg;
};

struct UcProblem {
  opt::LinearModel lp;
  UcIndex index;
  UcVariant variant;
  double inertia_base = 0.0;  // capacity that normalizes M: SG, or SG + VI with VI enabled
  double sg_capacity = 0.0;
  double vi_capacity = 0.0;   // zero unless VI is enabled
  std::vector<double> required;  // minimum aggregate inertia per hour, MW s^2
};

/// Aggregate inertia needed at each hour, in MW s^2 on the given base.
inline std::vector<double> required_inertia(const Scenario& s, double disturbance_base) {
  std::vector<double> out(s.horizon, 0.0);
  for (std::size_t t = 0; t < s.horizon; ++t)
    out[t] = freq::min_inertia_for_rocof(s.disturbance[t], s.grid) * disturbance_base;
  return out;
}

inline UcProblem build(const Scenario& s, const UcVariant& variant) {
  check_variant(variant);
  const auto problems = validate(s);
  if (!problems.empty())
    throw std::invalid_argument("scenario is invalid: " + problems.front().where + ": " + problems.front().message);

  UcProblem out;
  out.variant = variant;
  out.sg_capacity = s.sg_capacity();
  out.vi_capacity = variant.vi_enabled ? s.vi_capacity() : 0.0;
  out.inertia_base = out.sg_capacity + out.vi_capacity;
  out.required = required_inertia(s, s.pu_base());

  auto& m = out.lp;
  auto& ix = out.index;
  const std::size_t T = s.horizon;
  const std::size_t G = s.generators.size();
  const std::size_t V = variant.vi_enabled ? s.vi_units.size() : 0;
  const double sg_cap = out.sg_capacity;
  const double base = out.inertia_base;
  auto name = [](const std::string& what, const std::string& id, std::size_t t) {
    return what + "_" + id + "_t" + std::to_string(t + 1);
  };

  ix.u.assign(G, std::vector<std::size_t>(T));
  ix.y = ix.p = ix.k = ix.gen_max = ix.gen_min = ix.k_def = ix.u;
  ix.pv.assign(V, std::vector<std::size_t>(T));
  ix.m.assign(T, kNone);
  ix.m_plus.assign(T, kNone);
  ix.balance.assign(T, kNone);
  ix.inertia_def.assign(T, kNone);
  ix.rocof_pos.assign(T, kNone);
  ix.rocof_neg.assign(T, kNone);

  for (std::size_t i = 0; i < G; ++i) {
    const auto& g = s.generators[i];
    for (std::size_t t = 0; t < T; ++t) {
      ix.u[i][t] = m.add_variable(name("u", g.id, t), 0, 1, true, 0.0);
      ix.y[i][t] = m.add_variable(name("y", g.id, t), 0, 1, true, g.startup_cost);
      ix.p[i][t] = m.add_variable(name("p", g.id, t), 0, opt::kInf, false, g.fuel_cost);
      ix.k[i][t] = m.add_variable(name("k", g.id, t), 0, opt::kInf, false, 0.0);
    }
  }
  for (std::size_t v = 0; v < V; ++v) {
    const auto& b = s.vi_units[v];
    for (std::size_t t = 0; t < T; ++t)
      ix.pv[v][t] = m.add_variable(name("pv", b.id, t), b.p_min, b.p_max, false,
                                   b.bid_cost * 2.0 * b.inertia_const);
  }
  for (std::size_t t = 0; t < T; ++t) {
    const double reward = variant.utility_term ? -*variant.utility_term * base : 0.0;
    ix.m[t] = m.add_variable("M_t" + std::to_string(t + 1), 0, opt::kInf, false, reward);
    if (variant.slack_inertia && variant.frequency_constrained)
      ix.m_plus[t] = m.add_variable("Mplus_t" + std::to_string(t + 1), 0, out.required[t] / base, false,
                                    *variant.slack_inertia * base);
  }

  for (std::size_t t = 0; t < T; ++t) {
    std::vector<opt::Term> terms;
    for (std::size_t i = 0; i < G; ++i) terms.push_back({ix.p[i][t], 1.0});
    ix.balance[t] = m.add_constraint(std::move(terms), opt::Relation::Equal, s.net_load(t),
                                     "balance_t" + std::to_string(t + 1));
  }

  for (std::size_t i = 0; i < G; ++i) {
    const auto& g = s.generators[i];
    for (std::size_t t = 0; t < T; ++t) {
      const auto u = ix.u[i][t], y = ix.y[i][t];
      // start-up indicator, exact: y = u_t (1 - u_{t-1}) with all units off before hour 1
      if (t == 0) {
        m.add_constraint({{y, 1}, {u, -1}}, opt::Relation::GreaterEqual, 0, name("startup", g.id, t));
      } else {
        const auto prev = ix.u[i][t - 1];
        m.add_constraint({{y, 1}, {u, -1}, {prev, 1}}, opt::Relation::GreaterEqual, 0, name("startup", g.id, t));
        m.add_constraint({{y, 1}, {prev, 1}}, opt::Relation::LessEqual, 1, name("startup_prev", g.id, t));
      }
      m.add_constraint({{y, 1}, {u, -1}}, opt::Relation::LessEqual, 0, name("startup_on", g.id, t));

      const std::size_t up_end = std::min(t + static_cast<std::size_t>(g.min_up), T);
      for (std::size_t tau = t + 1; tau < up_end; ++tau) {
        std::vector<opt::Term> terms{{ix.u[i][tau], 1}, {u, -1}};
        if (t > 0) terms.push_back({ix.u[i][t - 1], 1});
        m.add_constraint(std::move(terms), opt::Relation::GreaterEqual, 0,
                         name("min_up", g.id, t) + "_" + std::to_string(tau + 1));
      }
      if (t > 0) {
        const std::size_t down_end = std::min(t + static_cast<std::size_t>(g.min_down), T);
        for (std::size_t tau = t + 1; tau < down_end; ++tau)
          m.add_constraint({{ix.u[i][tau], 1}, {ix.u[i][t - 1], 1}, {u, -1}}, opt::Relation::LessEqual, 1,
                           name("min_down", g.id, t) + "_" + std::to_string(tau + 1));
      }

      ix.gen_max[i][t] = m.add_constraint({{ix.p[i][t], 1}, {u, -g.p_max}}, opt::Relation::LessEqual, 0,
                                          name("gen_max", g.id, t));
      ix.gen_min[i][t] = m.add_constraint({{ix.p[i][t], 1}, {u, -g.p_min}}, opt::Relation::GreaterEqual, 0,
                                          name("gen_min", g.id, t));
      ix.k_def[i][t] = m.add_constraint({{ix.k[i][t], 1}, {u, -g.p_max / sg_cap}},
                                        variant.continuous_k ? opt::Relation::LessEqual : opt::Relation::Equal, 0,
                                        name("k_def", g.id, t));
    }
  }

  for (std::size_t t = 0; t < T; ++t) {
    // capacity-weighted average: base * M_t = sum of unit inertia in MW s^2
    std::vector<opt::Term> terms{{ix.m[t], base}};
    for (std::size_t i = 0; i < G; ++i)
      terms.push_back({ix.k[i][t], -2.0 * s.generators[i].inertia_const * sg_cap});
    for (std::size_t v = 0; v < V; ++v) terms.push_back({ix.pv[v][t], -2.0 * s.vi_units[v].inertia_const});
    ix.inertia_def[t] = m.add_constraint(std::move(terms), opt::Relation::Equal, 0,
                                         "inertia_def_t" + std::to_string(t + 1));
  }

  if (variant.frequency_constrained) {
    // rows in MW s^2 so that their duals are prices per MW s^2
    const double scale = s.grid.f0 / s.grid.rocof_limit * s.pu_base();
    for (std::size_t t = 0; t < T; ++t) {
      std::vector<opt::Term> terms{{ix.m[t], base}};
      if (ix.m_plus[t] != kNone) terms.push_back({ix.m_plus[t], base});
      ix.rocof_pos[t] = m.add_constraint(terms, opt::Relation::GreaterEqual, s.disturbance[t] * scale,
                                         "rocof_pos_t" + std::to_string(t + 1));
      ix.rocof_neg[t] = m.add_constraint(terms, opt::Relation::GreaterEqual, -s.disturbance[t] * scale,
                                         "rocof_neg_t" + std::to_string(t + 1));
    }
  }
  return out;
}

struct UcSolution {
  std::vector<std::vector<int>> u, y;
  std::vector<std::vector<double>> p, k, h;  // SG [unit][hour]; h in MW s^2
  std::vector<std::vector<double>> pv, kv, hv;  // VI [unit][hour]
  std::vector<double> m, m_sg, m_vi, m_plus;    // s
  std::vector<double> required;                 // MW s^2
  double inertia_base = 0.0;                    // MW
  double objective = 0.0;
  double startup_cost_total = 0.0;
  double energy_cost_total = 0.0;
  double vi_cost_total = 0.0;

  bool committed(std::size_t i, std::size_t t) const { return u[i][t] == 1; }
  /// Aggregate inertia in MW s^2.
  double inertia(std::size_t t) const { return m[t] * inertia_base; }
};

inline UcSolution decode(const Scenario& s, const UcProblem& prob, const opt::Solution& sol) {
  const auto& ix = prob.index;
  const std::size_t T = s.horizon, G = ix.u.size(), V = ix.pv.size();
  const auto& x = sol.primal;
  UcSolution r;
  r.inertia_base = prob.inertia_base;
  r.required = prob.required;
  r.objective = sol.objective;
  r.u.assign(G, std::vector<int>(T));
  r.y = r.u;
  r.p.assign(G, std::vector<double>(T));
  r.k = r.h = r.p;
  r.pv.assign(V, std::vector<double>(T));
  r.kv = r.hv = r.pv;
  r.m.assign(T, 0.0);
  r.m_sg = r.m_vi = r.m_plus = r.m;
  for (std::size_t i = 0; i < G; ++i) {
    const auto& g = s.generators[i];
    for (std::size_t t = 0; t < T; ++t) {
      r.u[i][t] = static_cast<int>(std::lround(x[ix.u[i][t]]));
      r.y[i][t] = static_cast<int>(std::lround(x[ix.y[i][t]]));
      r.p[i][t] = x[ix.p[i][t]];
      r.k[i][t] = x[ix.k[i][t]];
      r.h[i][t] = 2.0 * g.inertia_const * r.k[i][t] * prob.sg_capacity;
      r.m_sg[t] += 2.0 * g.inertia_const * r.k[i][t];
      r.startup_cost_total += g.startup_cost * r.y[i][t];
      r.energy_cost_total += g.fuel_cost * r.p[i][t];
    }
  }
  for (std::size_t v = 0; v < V; ++v) {
    const auto& b = s.vi_units[v];
    for (std::size_t t = 0; t < T; ++t) {
      r.pv[v][t] = x[ix.pv[v][t]];
      r.kv[v][t] = r.pv[v][t] / prob.vi_capacity;
      r.hv[v][t] = 2.0 * b.inertia_const * r.pv[v][t];
      r.m_vi[t] += 2.0 * b.inertia_const * r.kv[v][t];
      r.vi_cost_total += b.bid_cost * r.hv[v][t];
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    r.m[t] = x[ix.m[t]];
    if (ix.m_plus[t] != kNone) r.m_plus[t] = x[ix.m_plus[t]];
  }
  return r;
}

struct DualSet {
  std::vector<double> mu;       // EUR/MWh
  std::vector<double> lambda_h; // EUR/(MW s^2), d(objective)/d(required inertia)
  std::vector<std::vector<double>> nu_upper, nu_lower;  // EUR/MWh, both >= 0 at optimality
};

inline DualSet extract_duals(const UcProblem& prob, const opt::Solution& sol) {
  if (sol.duals.size() != prob.lp.num_constraints())
    throw std::invalid_argument("extract_duals: solution carries no LP duals");
  const auto& ix = prob.index;
  const std::size_t T = ix.balance.size(), G = ix.u.size();
  DualSet d;
  d.mu.assign(T, 0.0);
  d.lambda_h.assign(T, 0.0);
  d.nu_upper.assign(G, std::vector<double>(T, 0.0));
  d.nu_lower = d.nu_upper;
  for (std::size_t t = 0; t < T; ++t) {
    d.mu[t] = sol.duals[ix.balance[t]];
    if (ix.rocof_pos[t] != kNone) d.lambda_h[t] = sol.duals[ix.rocof_pos[t]] + sol.duals[ix.rocof_neg[t]];
  }
  for (std::size_t i = 0; i < G; ++i)
    for (std::size_t t = 0; t < T; ++t) {
      d.nu_upper[i][t] = -sol.duals[ix.gen_max[i][t]];
      d.nu_lower[i][t] = sol.duals[ix.gen_min[i][t]];
    }
  return d;
}

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::size_t> hours)
      : std::runtime_error(what), hours_(std::move(hours)) {}
  /// Hours (0-based) at which the inertia requirement exceeds what the full fleet can provide.
  const std::vector<std::size_t>& hours() const { return hours_; }

 private:
  std::vector<std::size_t> hours_;
};

inline std::vector<std::size_t> unreachable_inertia_hours(const Scenario& s, const UcProblem& prob) {
  double fleet = 0.0;
  for (const auto& g : s.generators) fleet += 2.0 * g.inertia_const * g.p_max;
  if (prob.variant.vi_enabled)
    for (const auto& v : s.vi_units) fleet += 2.0 * v.inertia_const * v.p_max;
  std::vector<std::size_t> hours;
  for (std::size_t t = 0; t < s.horizon; ++t) {
    const double slack = prob.index.m_plus[t] != kNone ? prob.required[t] : 0.0;
    if (prob.required[t] > fleet + slack + 1e-9) hours.push_back(t);
  }
  return hours;
}

[[noreturn]] inline void report_infeasible(const Scenario& s, const UcProblem& prob, const std::string& stage) {
  auto hours = unreachable_inertia_hours(s, prob);
  std::ostringstream os;
  os << stage << " is infeasible";
  if (!hours.empty()) {
    os << "; inertia requirement unreachable at hour(s)";
    for (auto t : hours) os << ' ' << t + 1;
  }
  throw InfeasibleError(os.str(), std::move(hours));
}

/// Builds and solves the MILP of a variant.
inline UcSolution solve_uc(const Scenario& s, const UcVariant& variant, opt::Solution* raw = nullptr) {
  const auto prob = build(s, variant);
  const auto sol = opt::solve_milp(prob.lp);
  if (!sol.optimal()) report_infeasible(s, prob, "unit commitment");
  if (raw) *raw = sol;
  return decode(s, prob, sol);
}

/// A restricted-model LP: binaries fixed at a commitment, re-solved for duals.
struct RestrictedSolve {
  UcProblem problem;
  opt::Solution lp;
  UcSolution solution;
  DualSet duals;
};

inline opt::Assignment commitment_assignment(const UcIndex& ix, const UcSolution& sol) {
  opt::Assignment a;
  for (std::size_t i = 0; i < ix.u.size(); ++i)
    for (std::size_t t = 0; t < ix.u[i].size(); ++t) {
      a[ix.u[i][t]] = sol.u[i][t];
      a[ix.y[i][t]] = sol.y[i][t];
    }
  return a;
}

/// Fixes `prob`'s binaries at `commitment` and solves the LP.
inline RestrictedSolve solve_restricted(const Scenario& s, UcProblem prob, const UcSolution& commitment) {
  prob.lp = opt::fix_binaries(prob.lp, commitment_assignment(prob.index, commitment));
  RestrictedSolve r;
  r.lp = opt::solve_lp(prob.lp);
  if (!r.lp.optimal()) report_infeasible(s, prob, "restricted pricing model");
  r.solution = decode(s, prob, r.lp);
  r.duals = extract_duals(prob, r.lp);
  r.problem = std::move(prob);
  return r;
}

/// A (unit, hour) pair committed in the frequency-constrained run only.
struct ExtraCell {
  std::size_t unit = 0;
  std::size_t hour = 0;
  auto operator<=>(const ExtraCell&) const = default;
};

struct TwoStepResult {
  UcVariant variant;
  UcSolution step1, step2;
  std::set<ExtraCell> extra_cells;
  std::map<std::string, std::vector<std::size_t>> extra_units;  // id -> hours added
  RestrictedSolve restricted;  // binaries fixed, k tied to commitment
  RestrictedSolve relaxed;     // binaries fixed, continuous k

  bool is_extra(std::size_t unit, std::size_t hour) const { return extra_cells.count({unit, hour}) > 0; }
  bool is_extra_unit(std::size_t unit) const {
    for (const auto& c : extra_cells)
      if (c.unit == unit) return true;
    return false;
  }
};

inline TwoStepResult two_step_pipeline(const Scenario& s, const UcVariant& variant) {
  if (!variant.frequency_constrained)
    throw std::invalid_argument("two_step_pipeline needs a frequency-constrained variant");
  TwoStepResult r;
  r.variant = variant;
  UcVariant first = variant;
  first.frequency_constrained = false;
  first.slack_inertia.reset();
  first.utility_term.reset();
  first.continuous_k = false;
  r.step1 = solve_uc(s, first);

  UcVariant second = variant;
  second.continuous_k = false;
  auto prob2 = build(s, second);
  const auto sol2 = opt::solve_milp(prob2.lp);
  if (!sol2.optimal()) report_infeasible(s, prob2, "frequency-constrained unit commitment");
  r.step2 = decode(s, prob2, sol2);

  for (std::size_t i = 0; i < s.generators.size(); ++i)
    for (std::size_t t = 0; t < s.horizon; ++t)
      if (r.step2.u[i][t] == 1 && r.step1.u[i][t] == 0) {
        r.extra_cells.insert({i, t});
        r.extra_units[s.generators[i].id].push_back(t);
      }

  r.restricted = solve_restricted(s, prob2, r.step2);
  UcVariant relaxed = second;
  relaxed.continuous_k = true;
  r.relaxed = solve_restricted(s, build(s, relaxed), r.step2);
  return r;
}

struct InertiaShortfall {
  std::vector<double> per_hour;  // MW s^2
  double max = 0.0;
  double sum = 0.0;
};

/// Inertia missing after the energy-only commitment, per hour and aggregated.
inline InertiaShortfall inertia_shortfall(const Scenario& s, const UcSolution& step1) {
  InertiaShortfall r;
  r.per_hour.assign(s.horizon, 0.0);
  for (std::size_t t = 0; t < s.horizon; ++t) {
    const double gap = step1.required[t] - step1.inertia(t);
    r.per_hour[t] = gap > 1e-9 ? gap : 0.0;
    r.max = std::max(r.max, r.per_hour[t]);
    r.sum += r.per_hour[t];
  }
  return r;
}

}  // namespace fcuc
