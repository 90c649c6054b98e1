#pragma once

// CSV and JSON output. Euro and MW figures carry two decimals, prices and
// duals six. Hours are written 1-based.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fcuc/analysis.hpp"
#include "fcuc/io.hpp"
#include "fcuc/pricing.hpp"

namespace fcuc::report {

using nlohmann::json;
namespace fs = std::filesystem;

inline std::string fixed(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  if (std::fabs(v) * scale < 0.5) v = 0.0;  // no "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string eur(double v) { return fixed(v, 2); }
inline std::string dual(double v) { return fixed(v, 6); }

/// Rounded for JSON so summaries match the CSVs.
inline double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::round(v * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

inline void write_text(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw io::IoError(path.string(), "cannot create directory");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io::IoError(path.string(), "cannot write");
  out << content;
  out.close();
  if (!out) throw io::IoError(path.string(), "write failed");
}

inline std::string profit_csv(const pricing::PaymentReport& r) {
  std::string out = "hour,unit,eom_profit,startup_cost,inertia_payment,total_profit\n";
  for (const auto& c : r.cells)
    out += std::to_string(c.hour + 1) + "," + c.unit + "," + eur(c.eom_profit) + "," + eur(c.startup_cost) + "," +
           eur(c.inertia_payment) + "," + eur(c.total_profit) + "\n";
  return out;
}

inline std::string prices_csv(const std::vector<double>& mu, const std::vector<double>& lambda_hat) {
  std::string out = "hour,mu,lambda_hat\n";
  for (std::size_t t = 0; t < mu.size(); ++t)
    out += std::to_string(t + 1) + "," + dual(mu[t]) + "," + dual(t < lambda_hat.size() ? lambda_hat[t] : 0.0) + "\n";
  return out;
}

inline std::string dispatch_csv(const Scenario& s, const UcSolution& sol) {
  std::string out = "hour,unit,committed,startup,power,inertia\n";
  for (std::size_t t = 0; t < s.horizon; ++t) {
    for (std::size_t i = 0; i < s.generators.size(); ++i)
      out += std::to_string(t + 1) + "," + s.generators[i].id + "," + std::to_string(sol.u[i][t]) + "," +
             std::to_string(sol.y[i][t]) + "," + eur(sol.p[i][t]) + "," + eur(sol.h[i][t]) + "\n";
    for (std::size_t v = 0; v < sol.pv.size(); ++v)
      out += std::to_string(t + 1) + "," + s.vi_units[v].id + ",1,0," + eur(sol.pv[v][t]) + "," + eur(sol.hv[v][t]) +
             "\n";
  }
  return out;
}

inline std::string two_column_csv(const std::string& x, const std::string& y,
                                  const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out = x + "," + y + "\n";
  for (const auto& [a, b] : rows) out += a + "," + b + "\n";
  return out;
}

inline json commitment_json(const Scenario& s, const UcSolution& sol) {
  json j = json::object();
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    json hours = json::array();
    for (std::size_t t = 0; t < s.horizon; ++t)
      if (sol.u[i][t]) hours.push_back(t + 1);
    j[s.generators[i].id] = hours;
  }
  return j;
}

inline json solve_summary(const Scenario& s, const TwoStepResult& ts) {
  json j;
  j["scenario"] = s.name;
  j["horizon"] = s.horizon;
  j["objective_without_frequency_constraints"] = round_to(ts.step1.objective, 2);
  j["objective"] = round_to(ts.step2.objective, 2);
  j["startup_cost"] = round_to(ts.step2.startup_cost_total, 2);
  j["energy_cost"] = round_to(ts.step2.energy_cost_total, 2);
  j["virtual_inertia_cost"] = round_to(ts.step2.vi_cost_total, 2);
  j["commitment"] = commitment_json(s, ts.step2);
  json extra = json::object();
  for (const auto& [id, hours] : ts.extra_units) {
    json h = json::array();
    for (auto t : hours) h.push_back(t + 1);
    extra[id] = h;
  }
  j["extra_units"] = extra;
  j["warnings"] = scenario_warnings(s);
  return j;
}

inline json method_summary(const Scenario& s, const TwoStepResult& ts, const pricing::MethodResult& r) {
  json j;
  j["scenario"] = s.name;
  j["method"] = pricing::to_string(r.method);
  j["uc_objective"] = round_to(ts.step2.objective, 2);
  j["total_inertia_payments"] = round_to(r.total_payments, 2);
  j["negative_profit_units"] = r.report.negative_profit_units;
  j["positive_profit_units"] = r.report.positive_profit_units;
  j["counted_units"] = r.report.counted_units;
  json units = json::object();
  for (const auto& id : r.report.unit_order) {
    const auto& u = r.report.units.at(id);
    units[id] = {{"eom_profit", round_to(u.eom_profit, 2)},
                 {"startup_cost", round_to(u.startup_cost, 2)},
                 {"inertia_payment", round_to(u.inertia_payment, 2)},
                 {"total_profit", round_to(u.total_profit, 2)}};
  }
  j["units"] = units;
  if (r.utility) {
    j["utility"] = {{"value", round_to(r.utility->value, 6)},
                    {"cost_with_fc", round_to(r.utility->cost_with_fc, 2)},
                    {"cost_without_fc", round_to(r.utility->cost_without_fc, 2)},
                    {"h_dem", round_to(r.utility->h_dem, 2)}};
  }
  json neg = json::array();
  for (auto t : r.negative_dual_hours) neg.push_back(t + 1);
  j["negative_dual_hours"] = neg;
  j["warnings"] = r.warnings;
  return j;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// File name and content, written later by flush.
using Outputs = std::vector<std::pair<std::string, std::string>>;

struct Formats {
  bool csv = true;
  bool json = true;
};

inline std::vector<fs::path> flush(const fs::path& dir, const Outputs& files, Formats f = {}) {
  std::vector<fs::path> written;
  for (const auto& [name, content] : files) {
    const auto ext = fs::path(name).extension();
    if ((ext == ".csv" && !f.csv) || (ext == ".json" && !f.json)) continue;
    write_text(dir / name, content);
    written.push_back(dir / name);
  }
  return written;
}

/// <method>_report.csv, <method>_prices.csv, <method>_dispatch.csv, <method>_summary.json.
inline Outputs method_outputs(const Scenario& s, const TwoStepResult& ts, const pricing::MethodResult& r) {
  const std::string stem = pricing::to_string(r.method);
  return {{stem + "_report.csv", profit_csv(r.report)},
          {stem + "_prices.csv", prices_csv(r.report.mu, r.price)},
          {stem + "_dispatch.csv", dispatch_csv(s, ts.step2)},
          {stem + "_summary.json", dump(method_summary(s, ts, r))}};
}

inline Outputs solve_outputs(const Scenario& s, const TwoStepResult& ts) {
  return {{"solve_dispatch.csv", dispatch_csv(s, ts.step2)},
          {"solve_prices.csv", prices_csv(ts.restricted.duals.mu, ts.relaxed.duals.lambda_h)},
          {"solve_summary.json", dump(solve_summary(s, ts))}};
}

inline Outputs substitution_outputs(const analysis::SubstitutionCurve& c) {
  std::vector<std::pair<std::string, std::string>> bought, cost;
  for (const auto& p : c.points) {
    bought.emplace_back(dual(p.cost), eur(p.purchased));
    cost.emplace_back(dual(p.cost), eur(p.total_cost));
  }
  return {{"sweep_slack.csv", two_column_csv("c_plus", "purchased_inertia", bought)},
          {"sweep_slack_cost.csv", two_column_csv("c_plus", "total_cost", cost)}};
}

inline Outputs vi_sweep_outputs(const analysis::ViSweep& sw) {
  const std::string stem = "sweep_vi_" + pricing::to_string(sw.method);
  std::vector<std::pair<std::string, std::string>> rows;
  json flagged = json::array();
  for (const auto& p : sw.points) {
    rows.emplace_back(dual(p.bid), eur(p.total_payments));
    if (p.negative_dual) flagged.push_back(round_to(p.bid, 6));
  }
  json j;
  j["method"] = pricing::to_string(sw.method);
  j["no_vi_payments"] = round_to(sw.no_vi_payments, 2);
  j["negative_dual_bids"] = flagged;
  return {{stem + ".csv", two_column_csv("bid", "total_payments", rows)}, {stem + "_summary.json", dump(j)}};
}

inline Outputs comparison_outputs(const Scenario& s, const analysis::MethodComparison& c) {
  Outputs files;
  json j;
  j["scenario"] = s.name;
  json methods = json::array();
  for (std::size_t k = 0; k < c.results.size(); ++k) {
    auto f = method_outputs(s, c.two_step, c.results[k]);
    files.insert(files.end(), f.begin(), f.end());
    const auto& m = c.summary[k];
    methods.push_back({{"method", pricing::to_string(m.method)},
                       {"uc_objective", round_to(m.uc_objective, 2)},
                       {"total_inertia_payments", round_to(m.total_payments, 2)},
                       {"negative_profit_units", m.negative_profit_units},
                       {"positive_profit_units", m.positive_profit_units},
                       {"counted_units", m.counted_units}});
  }
  j["methods"] = methods;
  files.emplace_back("compare_summary.json", dump(j));
  return files;
}

inline std::vector<fs::path> write_method(const fs::path& dir, const Scenario& s, const TwoStepResult& ts,
                                          const pricing::MethodResult& r) {
  return flush(dir, method_outputs(s, ts, r));
}
inline std::vector<fs::path> write_solve(const fs::path& dir, const Scenario& s, const TwoStepResult& ts) {
  return flush(dir, solve_outputs(s, ts));
}
inline std::vector<fs::path> write_substitution(const fs::path& dir, const analysis::SubstitutionCurve& c) {
  return flush(dir, substitution_outputs(c));
}
inline std::vector<fs::path> write_vi_sweep(const fs::path& dir, const analysis::ViSweep& sw) {
  return flush(dir, vi_sweep_outputs(sw));
}
inline std::vector<fs::path> write_comparison(const fs::path& dir, const Scenario& s,
                                              const analysis::MethodComparison& c) {
  return flush(dir, comparison_outputs(s, c));
}

}  // namespace fcuc::report
