#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fcuc::opt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tolerances {
  double feasibility = 1e-6;
  double integrality = 1e-6;
  double objective = 1e-6;  // relative
};

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Term {
  std::size_t var;
  double coef;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool integral = false;
  double cost = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string label;
};

/// Minimization model: sum(cost * x) + constant, linear rows, box bounds.
class LinearModel {
 public:
  std::size_t add_variable(std::string name, double lower, double upper, bool integral = false,
                           double cost = 0.0) {
    if (lower > upper) throw std::invalid_argument("variable '" + name + "' has lower > upper");
    if (var_index_.count(name)) throw std::invalid_argument("duplicate variable '" + name + "'");
    var_index_.emplace(name, vars_.size());
    vars_.push_back({std::move(name), lower, upper, integral, cost});
    return vars_.size() - 1;
  }

  std::size_t add_constraint(std::vector<Term> terms, Relation rel, double rhs, std::string label) {
    if (row_index_.count(label)) throw std::invalid_argument("duplicate constraint '" + label + "'");
    for (const auto& t : terms)
      if (t.var >= vars_.size())
        throw std::out_of_range("constraint '" + label + "' references an undeclared variable");
    row_index_.emplace(label, rows_.size());
    rows_.push_back({std::move(terms), rel, rhs, std::move(label)});
    return rows_.size() - 1;
  }

  void set_cost(std::size_t var, double cost) { vars_.at(var).cost = cost; }
  void add_cost(std::size_t var, double cost) { vars_.at(var).cost += cost; }
  void set_bounds(std::size_t var, double lower, double upper) {
    if (lower > upper) throw std::invalid_argument("set_bounds: lower > upper for " + vars_.at(var).name);
    vars_.at(var).lower = lower;
    vars_.at(var).upper = upper;
  }
  void set_integral(std::size_t var, bool integral) { vars_.at(var).integral = integral; }
  void set_relation(std::size_t row, Relation rel, double rhs) {
    rows_.at(row).relation = rel;
    rows_.at(row).rhs = rhs;
  }
  void set_objective_constant(double c) { constant_ = c; }

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const Variable& variable(std::size_t j) const { return vars_.at(j); }
  const Constraint& constraint(std::size_t r) const { return rows_.at(r); }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }
  double objective_constant() const { return constant_; }

  std::size_t variable_id(const std::string& name) const {
    auto it = var_index_.find(name);
    if (it == var_index_.end()) throw std::out_of_range("unknown variable '" + name + "'");
    return it->second;
  }
  std::size_t constraint_id(const std::string& label) const {
    auto it = row_index_.find(label);
    if (it == row_index_.end()) throw std::out_of_range("unknown constraint '" + label + "'");
    return it->second;
  }

  bool has_integral() const {
    for (const auto& v : vars_)
      if (v.integral) return true;
    return false;
  }

  double objective_at(const std::vector<double>& x) const {
    double z = constant_;
    for (std::size_t j = 0; j < vars_.size(); ++j) z += vars_[j].cost * x[j];
    return z;
  }

  double activity(std::size_t row, const std::vector<double>& x) const {
    double a = 0.0;
    for (const auto& t : rows_[row].terms) a += t.coef * x[t.var];
    return a;
  }

  /// Largest bound or row violation of x.
  double max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      worst = std::max(worst, vars_[j].lower - x[j]);
      worst = std::max(worst, x[j] - vars_[j].upper);
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const double a = activity(r, x);
      const double b = rows_[r].rhs;
      switch (rows_[r].relation) {
        case Relation::LessEqual: worst = std::max(worst, a - b); break;
        case Relation::GreaterEqual: worst = std::max(worst, b - a); break;
        case Relation::Equal: worst = std::max(worst, std::fabs(a - b)); break;
      }
    }
    return worst;
  }

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::unordered_map<std::string, std::size_t> var_index_;
  std::unordered_map<std::string, std::size_t> row_index_;
  double constant_ = 0.0;
};

enum class Status { Optimal, Infeasible, Unbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;
  // LP only. duals[r] = d(objective)/d(rhs_r); reduced_costs[j] = cost_j - y^T A_j.
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  std::size_t iterations = 0;
  std::size_t nodes = 0;

  bool optimal() const { return status == Status::Optimal; }
};

/// Human-readable dump, one item per line.
inline void write_lp_text(const LinearModel& m, std::ostream& os) {
  auto rel = [](Relation r) {
    switch (r) {
      case Relation::LessEqual: return "<=";
      case Relation::Equal: return "=";
      case Relation::GreaterEqual: return ">=";
    }
    return "?";
  };
  os << "minimize\n  obj:";
  for (const auto& v : m.variables())
    if (v.cost != 0.0) os << ' ' << (v.cost < 0 ? "- " : "+ ") << std::fabs(v.cost) << ' ' << v.name;
  if (m.objective_constant() != 0.0) os << " + " << m.objective_constant();
  os << "\nsubject to\n";
  for (const auto& c : m.constraints()) {
    os << "  " << c.label << ':';
    for (const auto& t : c.terms)
      os << ' ' << (t.coef < 0 ? "- " : "+ ") << std::fabs(t.coef) << ' ' << m.variable(t.var).name;
    os << ' ' << rel(c.relation) << ' ' << c.rhs << '\n';
  }
  os << "bounds\n";
  for (const auto& v : m.variables()) os << "  " << v.lower << " <= " << v.name << " <= " << v.upper << '\n';
  bool any = false;
  for (const auto& v : m.variables())
    if (v.integral) {
      if (!any) os << "binaries\n";
      any = true;
      os << "  " << v.name << '\n';
    }
  os << "end\n";
}

}  // namespace fcuc::opt
