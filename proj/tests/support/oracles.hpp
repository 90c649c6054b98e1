#pragma once

// Independent reference computations used only by tests. Nothing here calls
// the simplex or branch-and-bound code it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "fcuc/model.hpp"
#include "fcuc/optimizer/linear_model.hpp"

namespace oracle {

/// Two-variable LP  min c.x  s.t. rows (a, rel, b), x >= 0, solved by
/// enumerating every vertex (intersection of two active constraints).
struct Row2 {
  std::array<double, 2> a;
  fcuc::opt::Relation rel;
  double b;
};

struct Vertex2 {
  std::array<double, 2> x{};
  double objective = 0.0;
  std::vector<double> row_duals;  // d(obj)/d(b_r)
};

inline bool feasible2(const std::vector<Row2>& rows, const std::array<double, 2>& x) {
  constexpr double tol = 1e-9;
  if (x[0] < -tol || x[1] < -tol) return false;
  for (const auto& r : rows) {
    const double act = r.a[0] * x[0] + r.a[1] * x[1];
    if (r.rel == fcuc::opt::Relation::LessEqual && act > r.b + tol) return false;
    if (r.rel == fcuc::opt::Relation::GreaterEqual && act < r.b - tol) return false;
    if (r.rel == fcuc::opt::Relation::Equal && std::fabs(act - r.b) > tol) return false;
  }
  return true;
}

inline std::optional<Vertex2> enumerate_vertices(const std::array<double, 2>& c, const std::vector<Row2>& rows) {
  // Candidate active constraints: model rows, then x0 >= 0, x1 >= 0.
  std::vector<Row2> all = rows;
  all.push_back({{1.0, 0.0}, fcuc::opt::Relation::GreaterEqual, 0.0});
  all.push_back({{0.0, 1.0}, fcuc::opt::Relation::GreaterEqual, 0.0});
  std::optional<Vertex2> best;
  for (std::size_t p = 0; p < all.size(); ++p) {
    for (std::size_t q = p + 1; q < all.size(); ++q) {
      const double det = all[p].a[0] * all[q].a[1] - all[p].a[1] * all[q].a[0];
      if (std::fabs(det) < 1e-12) continue;
      const std::array<double, 2> x{(all[p].b * all[q].a[1] - all[p].a[1] * all[q].b) / det,
                                    (all[p].a[0] * all[q].b - all[p].b * all[q].a[0]) / det};
      if (!feasible2(rows, x)) continue;
      const double z = c[0] * x[0] + c[1] * x[1];
      if (best && z >= best->objective - 1e-12) continue;
      // duals: y_p a_p + y_q a_q = c
      const double yp = (c[0] * all[q].a[1] - all[q].a[0] * c[1]) / det;
      const double yq = (all[p].a[0] * c[1] - c[0] * all[p].a[1]) / det;
      Vertex2 v;
      v.x = x;
      v.objective = z;
      v.row_duals.assign(rows.size(), 0.0);
      if (p < rows.size()) v.row_duals[p] = yp;
      if (q < rows.size()) v.row_duals[q] = yq;
      best = v;
    }
  }
  return best;
}

/// Exhaustive search over 0/1 vectors for a pure-binary model.
inline std::optional<double> brute_force_binary(const fcuc::opt::LinearModel& m) {
  const std::size_t n = m.num_variables();
  std::optional<double> best;
  std::vector<double> x(n, 0.0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1U ? 1.0 : 0.0;
    if (m.max_violation(x) > 1e-9) continue;
    const double z = m.objective_at(x);
    if (!best || z < *best) best = z;
  }
  return best;
}


/// Primal minus dual objective of an LP solution, from its row duals and reduced costs.
inline double duality_gap(const fcuc::opt::LinearModel& m, const fcuc::opt::Solution& s) {
  double z = m.objective_constant();
  for (std::size_t r = 0; r < m.num_constraints(); ++r) z += s.duals[r] * m.constraint(r).rhs;
  for (std::size_t j = 0; j < m.num_variables(); ++j) {
    const double d = s.reduced_costs[j];
    if (std::fabs(d) < 1e-12) continue;
    z += d * (d > 0 ? m.variable(j).lower : m.variable(j).upper);
  }
  return s.objective - z;
}

/// Largest complementary-slackness or dual-sign violation, scaled per item.
inline double complementarity_violation(const fcuc::opt::LinearModel& m, const fcuc::opt::Solution& s) {
  using fcuc::opt::Relation;
  double worst = 0.0;
  for (std::size_t r = 0; r < m.num_constraints(); ++r) {
    const auto& c = m.constraint(r);
    const double y = s.duals[r];
    if (c.relation == Relation::LessEqual) worst = std::max(worst, y);
    if (c.relation == Relation::GreaterEqual) worst = std::max(worst, -y);
    if (c.relation != Relation::Equal)
      worst = std::max(worst, std::fabs(y * (c.rhs - m.activity(r, s.primal))) / (1 + std::fabs(y)));
  }
  for (std::size_t j = 0; j < m.num_variables(); ++j) {
    const auto& v = m.variable(j);
    const double d = s.reduced_costs[j];
    if (std::fabs(d) < 1e-9) continue;
    const double bound = d > 0 ? v.lower : v.upper;
    if (!std::isfinite(bound)) {
      worst = std::max(worst, std::fabs(d));
      continue;
    }
    worst = std::max(worst, std::fabs(d * (s.primal[j] - bound)) / (1 + std::fabs(d)));
  }
  return worst;
}

// Cheapest commitment of a small fleet by enumerating every on/off pattern and
// dispatching each hour in merit order. Independent of the MILP formulation.
inline std::optional<double> enumerate_commitments(const fcuc::Scenario& s, bool with_rocof) {
  const std::size_t G = s.generators.size(), T = s.horizon, bits = G * T;
  const double pu = s.pu_base();
  std::optional<double> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
    auto on = [&](std::size_t i, long t) { return t >= 0 && ((mask >> (i * T + t)) & 1U); };
    double cost = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < G && ok; ++i) {
      const auto& g = s.generators[i];
      for (long t = 0; t < static_cast<long>(T) && ok; ++t) {
        if (on(i, t) && !on(i, t - 1)) {
          cost += g.startup_cost;
          for (long tau = t; tau < std::min<long>(t + g.min_up, T); ++tau) ok = ok && on(i, tau);
        }
        if (!on(i, t) && on(i, t - 1))
          for (long tau = t; tau < std::min<long>(t + g.min_down, T); ++tau) ok = ok && !on(i, tau);
      }
    }
    for (std::size_t t = 0; t < T && ok; ++t) {
      double lo = 0, hi = 0, inertia = 0;
      std::vector<std::size_t> units;
      for (std::size_t i = 0; i < G; ++i)
        if (on(i, t)) {
          lo += s.generators[i].p_min;
          hi += s.generators[i].p_max;
          inertia += 2 * s.generators[i].inertia_const * s.generators[i].p_max;
          units.push_back(i);
        }
      const double need = s.net_load(t);
      if (need < lo - 1e-9 || need > hi + 1e-9) ok = false;
      if (with_rocof && inertia < std::fabs(s.disturbance[t]) * s.grid.f0 / s.grid.rocof_limit * pu - 1e-9) ok = false;
      if (!ok) break;
      std::sort(units.begin(), units.end(),
                [&](auto a, auto b) { return s.generators[a].fuel_cost < s.generators[b].fuel_cost; });
      double rest = need - lo;
      for (auto i : units) {
        const auto& g = s.generators[i];
        const double extra = std::min(rest, g.p_max - g.p_min);
        cost += g.fuel_cost * (g.p_min + extra);
        rest -= extra;
      }
    }
    if (ok && (!best || cost < *best)) best = cost;
  }
  return best;
}

}  // namespace oracle
