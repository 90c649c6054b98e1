#pragma once

// LP and MILP entry points over LinearModel, plus the restricted-model helper
// that clamps integral variables to a given assignment.

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fcuc/optimizer/linear_model.hpp"
#include "fcuc/optimizer/simplex.hpp"

namespace fcuc::opt {

namespace detail {

inline Solution from_engine(const LinearModel& model, SimplexEngine& eng, SimplexEngine::Outcome out) {
  Solution sol;
  switch (out) {
    case SimplexEngine::Outcome::Optimal: sol.status = Status::Optimal; break;
    case SimplexEngine::Outcome::Infeasible: sol.status = Status::Infeasible; break;
    case SimplexEngine::Outcome::Unbounded: sol.status = Status::Unbounded; break;
  }
  if (sol.status == Status::Optimal) eng.extract(model, sol);
  sol.iterations = eng.iterations();
  return sol;
}

}  // namespace detail

/// Solves the continuous relaxation; integrality flags are ignored.
inline Solution solve_lp(const LinearModel& model) {
  SimplexEngine eng(model);
  const auto out = eng.solve();
  return detail::from_engine(model, eng, out);
}

/// Depth-first branch-and-bound. Branches on the most fractional integral
/// variable (lowest id on ties); children are re-optimized with the dual
/// simplex from the parent's basis.
inline Solution solve_milp(const LinearModel& model, const Tolerances& tol = {}) {
  const std::size_t n = model.num_variables();
  std::vector<std::size_t> integral;
  for (std::size_t j = 0; j < n; ++j)
    if (model.variable(j).integral) integral.push_back(j);

  SimplexEngine root(model);
  const auto root_out = root.solve();
  if (root_out != SimplexEngine::Outcome::Optimal || integral.empty()) {
    auto sol = detail::from_engine(model, root, root_out);
    sol.nodes = 1;
    if (sol.optimal() && !integral.empty()) sol.duals.clear();
    return sol;
  }

  struct Node {
    SimplexEngine engine;
    std::size_t var = 0;
    double lower = 0.0;
    double upper = 0.0;
    bool fresh = true;  // root node needs no bound change
  };

  Solution best;
  best.status = Status::Infeasible;
  double incumbent = kInf;
  std::size_t nodes = 0;
  std::size_t iterations = 0;

  std::vector<Node> stack;
  stack.push_back(Node{std::move(root), 0, 0.0, 0.0, true});

  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    ++nodes;
    auto& eng = node.engine;
    SimplexEngine::Outcome out = SimplexEngine::Outcome::Optimal;
    if (!node.fresh) {
      eng.set_bounds(node.var, node.lower, node.upper);
      out = eng.resolve();
    }
    iterations = std::max(iterations, eng.iterations());
    if (out == SimplexEngine::Outcome::Unbounded) {
      Solution sol;
      sol.status = Status::Unbounded;
      sol.nodes = nodes;
      return sol;
    }
    if (out != SimplexEngine::Outcome::Optimal) continue;

    const double bound = eng.objective() + model.objective_constant();
    const double gap = tol.objective * std::max(1.0, std::fabs(incumbent));
    if (std::isfinite(incumbent) && bound >= incumbent - gap) continue;

    long branch = -1;
    double best_frac = tol.integrality;
    for (std::size_t j : integral) {
      const double v = eng.value(j);
      const double frac = std::fabs(v - std::round(v));
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        branch = static_cast<long>(j);
      }
    }

    if (branch < 0) {
      Solution sol;
      sol.status = Status::Optimal;
      eng.extract(model, sol);
      for (std::size_t j : integral) sol.primal[j] = std::round(sol.primal[j]);
      sol.objective = model.objective_at(sol.primal);
      sol.duals.clear();
      sol.reduced_costs.clear();
      if (sol.objective < incumbent) {
        incumbent = sol.objective;
        best = std::move(sol);
      }
      continue;
    }

    const std::size_t j = static_cast<std::size_t>(branch);
    const double v = eng.value(j);
    const double fl = std::floor(v);
    const double lo_now = eng.lower(j);
    const double hi_now = eng.upper(j);
    Node down{eng, j, lo_now, fl, false};
    Node up{std::move(eng), j, fl + 1.0, hi_now, false};
    // LIFO: push the branch to explore second first
    if (v - fl >= 0.5) {
      stack.push_back(std::move(down));
      stack.push_back(std::move(up));
    } else {
      stack.push_back(std::move(up));
      stack.push_back(std::move(down));
    }
  }
  best.nodes = nodes;
  best.iterations = iterations;
  return best;
}

/// Variable id -> fixed integer value.
using Assignment = std::map<std::size_t, int>;

/// Integral variables of `model` rounded from a solution's primal values.
inline Assignment integral_assignment(const LinearModel& model, const Solution& sol) {
  Assignment a;
  for (std::size_t j = 0; j < model.num_variables(); ++j)
    if (model.variable(j).integral) a[j] = static_cast<int>(std::lround(sol.primal.at(j)));
  return a;
}

/// Copy of `model` with every integral variable clamped to its assigned value
/// and its integrality dropped.
inline LinearModel fix_binaries(const LinearModel& model, const Assignment& assignment) {
  LinearModel out = model;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    if (!model.variable(j).integral) continue;
    auto it = assignment.find(j);
    if (it == assignment.end())
      throw std::invalid_argument("fix_binaries: no value for integral variable '" + model.variable(j).name + "'");
    const double v = static_cast<double>(it->second);
    out.set_bounds(j, v, v);
    out.set_integral(j, false);
  }
  return out;
}

/// Neutral solver interface so large instances can be delegated elsewhere.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual Solution lp(const LinearModel& model) = 0;
  virtual Solution milp(const LinearModel& model) = 0;
};

class BuiltinSolver final : public SolverBackend {
 public:
  explicit BuiltinSolver(Tolerances tol = {}) : tol_(tol) {}
  Solution lp(const LinearModel& model) override { return solve_lp(model); }
  Solution milp(const LinearModel& model) override { return solve_milp(model, tol_); }

 private:
  Tolerances tol_;
};

}  // namespace fcuc::opt
