#pragma once

// Dense bounded-variable simplex on a full tableau.
//
// Every row r of the model becomes  a_r x + s_r = b_r  with a slack whose
// bounds encode the relation (<=: s >= 0, >=: s <= 0, =: s = 0). The
// tableau starts on the slack basis; phase 1 minimizes the sum of bound
// infeasibilities of the basic variables, phase 2 the model cost. After
// bound changes the engine can resume from its last basis with the dual
// simplex, which is what branch-and-bound uses for child nodes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fcuc/optimizer/linear_model.hpp"

namespace fcuc::opt {

class SimplexEngine {
 public:
  enum class Outcome { Optimal, Infeasible, Unbounded };

  explicit SimplexEngine(const LinearModel& model) : m_(model.num_constraints()), n_(model.num_variables()) {
    cols_ = n_ + m_;
    tab_.assign(m_ * cols_, 0.0);
    lo_.resize(cols_);
    hi_.resize(cols_);
    cost_.assign(cols_, 0.0);
    x_.assign(cols_, 0.0);
    rhs_.resize(m_);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& v = model.variable(j);
      lo_[j] = v.lower;
      hi_[j] = v.upper;
      cost_[j] = v.cost;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& c = model.constraint(r);
      for (const auto& t : c.terms) at(r, t.var) += t.coef;
      at(r, n_ + r) = 1.0;
      rhs_[r] = c.rhs;
      const std::size_t s = n_ + r;
      switch (c.relation) {
        case Relation::LessEqual: lo_[s] = 0.0; hi_[s] = kInf; break;
        case Relation::GreaterEqual: lo_[s] = -kInf; hi_[s] = 0.0; break;
        case Relation::Equal: lo_[s] = 0.0; hi_[s] = 0.0; break;
      }
    }
    // keep a pristine copy of the constraint matrix for exact recomputation
    a_orig_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& t : model.constraint(r).terms) a_orig_[r].push_back(t);
    }
    basis_.resize(m_);
    pos_.assign(cols_, -1);
    for (std::size_t r = 0; r < m_; ++r) {
      basis_[r] = n_ + r;
      pos_[n_ + r] = static_cast<long>(r);
    }
    for (std::size_t j = 0; j < n_; ++j) x_[j] = initial_value(j);
    recompute_basic_values();
  }

  Outcome solve() {
    if (!phase_one()) return Outcome::Infeasible;
    return phase_two();
  }

  /// Changes the bounds of structural variable j, keeping the current basis.
  void set_bounds(std::size_t j, double lower, double upper) {
    lo_[j] = lower;
    hi_[j] = upper;
    if (pos_[j] < 0) {
      double target = x_[j];
      if (target < lower) target = lower;
      if (target > upper) target = upper;
      if (!std::isfinite(target)) target = initial_value(j);
      shift_nonbasic(j, target - x_[j]);
    }
  }

  /// Re-optimizes after bound changes. Falls back to the primal method when
  /// the current basis is not dual feasible.
  Outcome resolve() {
    compute_reduced_costs(cost_);
    if (!dual_feasible()) return solve();
    const auto out = dual_simplex();
    if (out == Outcome::Infeasible) return out;
    return phase_two();
  }

  double objective() const {
    double z = 0.0;
    for (std::size_t j = 0; j < n_; ++j) z += cost_[j] * x_[j];
    return z;
  }

  /// Primal values, row duals and reduced costs recomputed from the basis inverse.
  void extract(const LinearModel& model, Solution& out) {
    recompute_basic_values();
    std::vector<double> y(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &tab_[r * cols_ + n_];
      for (std::size_t k = 0; k < m_; ++k) y[k] += cb * row[k];
    }
    out.primal.assign(x_.begin(), x_.begin() + static_cast<long>(n_));
    out.duals = y;
    out.reduced_costs.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) out.reduced_costs[j] = model.variable(j).cost;
    for (std::size_t r = 0; r < m_; ++r)
      for (const auto& t : a_orig_[r]) out.reduced_costs[t.var] -= y[r] * t.coef;
    out.objective = model.objective_at(out.primal);
    out.iterations = iterations_;
  }

  std::size_t iterations() const { return iterations_; }
  double value(std::size_t j) const { return x_[j]; }
  double lower(std::size_t j) const { return lo_[j]; }
  double upper(std::size_t j) const { return hi_[j]; }
  std::size_t num_structural() const { return n_; }

 private:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kPrimalTol = 1e-9;
  static constexpr double kDualTol = 1e-9;
  static constexpr std::size_t kMaxIterations = 200000;

  double& at(std::size_t r, std::size_t c) { return tab_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return tab_[r * cols_ + c]; }

  double initial_value(std::size_t j) const {
    if (std::isfinite(lo_[j])) return lo_[j];
    if (std::isfinite(hi_[j])) return hi_[j];
    return 0.0;
  }

  double primal_tol(double bound) const { return kPrimalTol * (1.0 + std::fabs(bound)); }

  bool below(std::size_t col) const { return x_[col] < lo_[col] - primal_tol(lo_[col]); }
  bool above(std::size_t col) const { return x_[col] > hi_[col] + primal_tol(hi_[col]); }

  void shift_nonbasic(std::size_t j, double delta) {
    if (delta == 0.0) return;
    x_[j] += delta;
    for (std::size_t r = 0; r < m_; ++r) {
      const double a = at(r, j);
      if (a != 0.0) x_[basis_[r]] -= a * delta;
    }
  }

  // x_B = B^{-1} (b - N x_N), with B^{-1} read from the slack columns.
  void recompute_basic_values() {
    std::vector<double> resid = rhs_;
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& t : a_orig_[r])
        if (pos_[t.var] < 0) resid[r] -= t.coef * x_[t.var];
      const std::size_t s = n_ + r;
      if (pos_[s] < 0) resid[r] -= x_[s];
    }
    for (std::size_t r = 0; r < m_; ++r) {
      double v = 0.0;
      const double* binv = &tab_[r * cols_ + n_];
      for (std::size_t k = 0; k < m_; ++k) v += binv[k] * resid[k];
      x_[basis_[r]] = v;
    }
  }

  void compute_reduced_costs(const std::vector<double>& c) {
    d_.assign(c.begin(), c.end());
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &tab_[r * cols_];
      for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cb * row[j];
    }
    for (std::size_t r = 0; r < m_; ++r) d_[basis_[r]] = 0.0;
  }

  bool dual_feasible() const {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (pos_[j] >= 0 || lo_[j] == hi_[j]) continue;
      const bool at_lower = std::isfinite(lo_[j]) && x_[j] <= lo_[j] + primal_tol(lo_[j]);
      const bool at_upper = std::isfinite(hi_[j]) && x_[j] >= hi_[j] - primal_tol(hi_[j]);
      if (at_lower && d_[j] < -kDualTol) return false;
      if (at_upper && d_[j] > kDualTol) return false;
      if (!at_lower && !at_upper && std::fabs(d_[j]) > kDualTol) return false;
    }
    return true;
  }

  void pivot(std::size_t r, std::size_t q) {
    double* prow = &tab_[r * cols_];
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[i * cols_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    if (!d_.empty()) {
      const double f = d_[q];
      if (f != 0.0) {
        for (std::size_t j = 0; j < cols_; ++j) d_[j] -= f * prow[j];
      }
      d_[q] = 0.0;
    }
    const std::size_t leaving = basis_[r];
    pos_[leaving] = -1;
    basis_[r] = q;
    pos_[q] = static_cast<long>(r);
    ++iterations_;
    if (iterations_ > kMaxIterations) throw std::runtime_error("simplex: iteration limit exceeded");
  }

  // Entering candidate by Dantzig pricing (or Bland after a degenerate streak).
  long choose_entering(bool bland) const {
    long best = -1;
    double best_score = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (pos_[j] >= 0 || lo_[j] == hi_[j]) continue;
      const bool can_up = !std::isfinite(hi_[j]) || x_[j] < hi_[j] - primal_tol(hi_[j]);
      const bool can_down = !std::isfinite(lo_[j]) || x_[j] > lo_[j] + primal_tol(lo_[j]);
      double score = 0.0;
      if (can_up && d_[j] < -kDualTol) score = -d_[j];
      else if (can_down && d_[j] > kDualTol) score = d_[j];
      if (score <= 0.0) continue;
      if (bland) return static_cast<long>(j);
      if (score > best_score) {
        best_score = score;
        best = static_cast<long>(j);
      }
    }
    return best;
  }

  struct Step {
    double theta = kInf;
    long row = -1;        // -1: bound flip of the entering variable
    bool to_upper = false; // bound the leaving variable lands on
  };

  // Ratio test for entering q moving in direction dir. In phase 1 infeasible
  // basics only block once they reach their violated bound.
  Step ratio_test(std::size_t q, double dir, bool phase1) const {
    Step st;
    double best_alpha = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double alpha = dir * at(r, q);  // basic value decreases by alpha * theta
      if (std::fabs(alpha) <= kPivotTol) continue;
      const std::size_t b = basis_[r];
      double limit = kInf;
      bool to_upper = false;
      if (phase1 && below(b)) {
        if (alpha < 0.0) limit = (lo_[b] - x_[b]) / -alpha;
      } else if (phase1 && above(b)) {
        if (alpha > 0.0) { limit = (x_[b] - hi_[b]) / alpha; to_upper = true; }
      } else if (alpha > 0.0) {
        if (std::isfinite(lo_[b])) limit = std::max(0.0, (x_[b] - lo_[b]) / alpha);
      } else if (std::isfinite(hi_[b])) {
        limit = std::max(0.0, (hi_[b] - x_[b]) / -alpha);
        to_upper = true;
      }
      if (!std::isfinite(limit)) continue;
      const double a = std::fabs(alpha);
      if (limit < st.theta - 1e-12 || (limit <= st.theta + 1e-12 && a > best_alpha)) {
        st.theta = limit;
        st.row = static_cast<long>(r);
        st.to_upper = to_upper;
        best_alpha = a;
      }
    }
    if (std::isfinite(lo_[q]) && std::isfinite(hi_[q])) {
      const double flip = hi_[q] - lo_[q];
      if (flip < st.theta - 1e-12) {
        st.theta = flip;
        st.row = -1;
      }
    }
    return st;
  }

  void apply_step(std::size_t q, double dir, const Step& st) {
    const double theta = st.theta;
    if (theta != 0.0) {
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = at(r, q);
        if (a != 0.0) x_[basis_[r]] -= dir * theta * a;
      }
      x_[q] += dir * theta;
    }
    if (st.row < 0) {
      x_[q] = dir > 0 ? hi_[q] : lo_[q];
      return;
    }
    const std::size_t r = static_cast<std::size_t>(st.row);
    const std::size_t leaving = basis_[r];
    pivot(r, q);
    x_[leaving] = st.to_upper ? hi_[leaving] : lo_[leaving];
  }

  double total_infeasibility() const {
    double s = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t b = basis_[r];
      if (x_[b] < lo_[b]) s += lo_[b] - x_[b];
      else if (x_[b] > hi_[b]) s += x_[b] - hi_[b];
    }
    return s;
  }

  bool phase_one() {
    std::size_t degenerate = 0;
    for (;;) {
      std::vector<double> c1(cols_, 0.0);
      bool any = false;
      for (std::size_t r = 0; r < m_; ++r) {
        const std::size_t b = basis_[r];
        if (below(b)) { c1[b] = -1.0; any = true; }
        else if (above(b)) { c1[b] = 1.0; any = true; }
      }
      if (!any) return true;
      compute_reduced_costs(c1);
      const long e = choose_entering(degenerate > 50);
      if (e < 0) return total_infeasibility() <= 1e-7 * (1.0 + max_abs_rhs());
      const std::size_t q = static_cast<std::size_t>(e);
      const double dir = d_[q] < 0.0 ? 1.0 : -1.0;
      const Step st = ratio_test(q, dir, true);
      if (!std::isfinite(st.theta)) {
        // phase-1 objective is bounded below, so an unblocked ray cannot lower it
        return false;
      }
      degenerate = st.theta <= 1e-12 ? degenerate + 1 : 0;
      apply_step(q, dir, st);
    }
  }

  Outcome phase_two() {
    compute_reduced_costs(cost_);
    std::size_t degenerate = 0;
    for (;;) {
      const long e = choose_entering(degenerate > 50);
      if (e < 0) return Outcome::Optimal;
      const std::size_t q = static_cast<std::size_t>(e);
      const double dir = d_[q] < 0.0 ? 1.0 : -1.0;
      const Step st = ratio_test(q, dir, false);
      if (!std::isfinite(st.theta)) return Outcome::Unbounded;
      degenerate = st.theta <= 1e-12 ? degenerate + 1 : 0;
      apply_step(q, dir, st);
    }
  }

  Outcome dual_simplex() {
    for (;;) {
      long r_best = -1;
      double worst = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        const std::size_t b = basis_[r];
        double v = 0.0;
        if (below(b)) v = lo_[b] - x_[b];
        else if (above(b)) v = x_[b] - hi_[b];
        if (v > worst) { worst = v; r_best = static_cast<long>(r); }
      }
      if (r_best < 0) return Outcome::Optimal;
      const std::size_t r = static_cast<std::size_t>(r_best);
      const std::size_t b = basis_[r];
      const bool raise = below(b);  // leaving variable must increase to its lower bound
      const double target = raise ? lo_[b] : hi_[b];
      long q_best = -1;
      double best_ratio = kInf;
      double best_alpha = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (pos_[j] >= 0 || lo_[j] == hi_[j]) continue;
        const double a = at(r, j);
        if (std::fabs(a) <= kPivotTol) continue;
        const bool at_lower = std::isfinite(lo_[j]) && x_[j] <= lo_[j] + primal_tol(lo_[j]);
        const bool at_upper = std::isfinite(hi_[j]) && x_[j] >= hi_[j] - primal_tol(hi_[j]);
        const bool free_nb = !at_lower && !at_upper;
        // x_B(r) = ... - a * x_j: raising x_B needs a * dx_j < 0.
        bool ok = false;
        if (raise) ok = (at_lower && a < 0.0) || (at_upper && a > 0.0) || free_nb;
        else ok = (at_lower && a > 0.0) || (at_upper && a < 0.0) || free_nb;
        if (!ok) continue;
        const double ratio = std::fabs(d_[j]) / std::fabs(a);
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && std::fabs(a) > best_alpha)) {
          best_ratio = ratio;
          best_alpha = std::fabs(a);
          q_best = static_cast<long>(j);
        }
      }
      if (q_best < 0) return Outcome::Infeasible;
      const std::size_t q = static_cast<std::size_t>(q_best);
      const double dx = (x_[b] - target) / at(r, q);
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, q);
        if (a != 0.0) x_[basis_[i]] -= a * dx;
      }
      x_[q] += dx;
      pivot(r, q);
      x_[b] = target;
    }
  }

  double max_abs_rhs() const {
    double m = 0.0;
    for (double v : rhs_) m = std::max(m, std::fabs(v));
    return m;
  }

  std::size_t m_, n_, cols_ = 0;
  std::vector<double> tab_;
  std::vector<double> lo_, hi_, cost_, x_, d_, rhs_;
  std::vector<std::vector<Term>> a_orig_;
  std::vector<std::size_t> basis_;
  std::vector<long> pos_;
  std::size_t iterations_ = 0;
};

}  // namespace fcuc::opt
