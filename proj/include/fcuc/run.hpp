#pragma once

// Command dispatch behind the fcuc executable. Kept free of argument parsing so
// tests can drive it directly.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fcuc/analysis.hpp"
#include "fcuc/freq.hpp"
#include "fcuc/io.hpp"
#include "fcuc/pricing.hpp"
#include "fcuc/report.hpp"
#include "fcuc/uc.hpp"

namespace fcuc::run {

enum ExitCode : int { kOk = 0, kInfeasible = 1, kInputError = 2, kInternalError = 3 };

inline constexpr const char* kOutputDirEnv = "FCUC_OUTPUT_DIR";
inline constexpr const char* kDefaultOutputDir = "fcuc_out";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"solve", "price", "sweep-slack", "sweep-vi", "compare", "freq-metrics"};
  return c;
}

/// Bad command-line input that the parser itself cannot catch.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FreqInputs {
  double delta_p = 0.0;  // p.u.
  freq::FrequencyResponseParams params;
  double f0 = 50.0;
};

struct RunConfig {
  std::string command;
  std::string scenario_path;
  std::optional<pricing::Method> method;
  std::optional<double> rocof_limit;
  pricing::Options pricing;
  bool virtual_inertia = false;
  std::string grid = "auto";
  std::optional<std::string> output_dir;
  report::Formats formats;
  FreqInputs freq;
};

/// Explicit flag, then the environment, then the default.
inline std::string resolve_output_dir(const RunConfig& c) {
  if (c.output_dir) return *c.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return kDefaultOutputDir;
}

inline void check(const RunConfig& c) {
  bool known = false;
  for (const auto& k : commands()) known = known || k == c.command;
  if (!known) throw ConfigError("unknown command '" + c.command + "'");
  if (c.command != "freq-metrics" && c.scenario_path.empty()) throw ConfigError(c.command + ": scenario path required");
  if ((c.command == "price" || c.command == "sweep-vi") && !c.method)
    throw ConfigError(c.command + ": --method is required");
  if (c.rocof_limit && !(*c.rocof_limit > 0.0)) throw ConfigError("--rocof-limit must be positive");
}

inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("--grid: '" + item + "' is not a number");
    }
    if (used != item.size()) throw ConfigError("--grid: '" + item + "' is not a number");
    if (v < 0.0) throw ConfigError("--grid: values must be non-negative");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--grid: empty");
  if (!std::is_sorted(out.begin(), out.end())) throw ConfigError("--grid: values must be ascending");
  return out;
}

inline Scenario load(const RunConfig& c) {
  auto s = io::load_scenario(c.scenario_path);
  if (c.rocof_limit) s.grid.rocof_limit = *c.rocof_limit;
  return s;
}

inline UcVariant fc_variant(bool vi) {
  UcVariant v;
  v.frequency_constrained = true;
  v.vi_enabled = vi;
  return v;
}

inline void list(std::ostream& out, const std::vector<report::fs::path>& files) {
  for (const auto& f : files) out << "wrote " << f.string() << "\n";
}

inline int freq_metrics(const RunConfig& c, std::ostream& out) {
  const auto m = freq::evaluate(c.freq.delta_p, c.freq.params, c.freq.f0);
  const GridParams grid{c.freq.f0, c.rocof_limit.value_or(0.25), {}};
  const double m_min = freq::min_inertia_for_rocof(c.freq.delta_p, grid);
  nlohmann::json j{{"rocof_pu_per_s", m.rocof_pu},       {"rocof_hz_per_s", m.rocof_hz_per_s},
                   {"nadir_pu", m.nadir_pu},             {"nadir_hz", m.nadir_hz},
                   {"steady_state_pu", m.steady_state_pu}, {"steady_state_hz", m.steady_state_hz},
                   {"min_inertia_for_rocof_s", m_min}};
  out << j.dump(2) << "\n";
  return kOk;
}

inline int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check(c);
  if (c.command == "freq-metrics") return freq_metrics(c, out);

  const auto s = load(c);
  for (const auto& w : scenario_warnings(s)) err << "warning: " << w << "\n";
  const report::fs::path dir = resolve_output_dir(c);

  if (c.command == "solve") {
    const auto ts = two_step_pipeline(s, fc_variant(c.virtual_inertia));
    out << "objective " << report::eur(ts.step2.objective) << " EUR (without frequency constraints "
        << report::eur(ts.step1.objective) << ")\n";
    list(out, report::flush(dir, report::solve_outputs(s, ts), c.formats));
  } else if (c.command == "price") {
    const auto ts = two_step_pipeline(s, fc_variant(c.virtual_inertia));
    const auto r = pricing::run_method(s, ts, *c.method, c.pricing);
    for (auto t : r.negative_dual_hours) err << "warning: negative inertia dual at hour " << t + 1 << "\n";
    out << pricing::to_string(r.method) << ": total inertia payments " << report::eur(r.total_payments) << " EUR\n";
    list(out, report::flush(dir, report::method_outputs(s, ts, r), c.formats));
  } else if (c.command == "sweep-slack") {
    const auto curve = c.grid == "auto" ? analysis::adaptive_substitution_sweep(s)
                                        : analysis::substitution_sweep(s, parse_grid(c.grid));
    out << curve.points.size() << " substitution points\n";
    list(out, report::flush(dir, report::substitution_outputs(curve), c.formats));
  } else if (c.command == "sweep-vi") {
    const auto bids = c.grid == "auto" ? analysis::auto_grid(s) : parse_grid(c.grid);
    const auto sw = analysis::vi_cost_sweep(s, bids, *c.method, c.pricing);
    for (const auto& p : sw.points)
      if (p.negative_dual) err << "warning: negative inertia dual at bid " << report::dual(p.bid) << "\n";
    out << bids.size() << " bid levels, no-VI payments " << report::eur(sw.no_vi_payments) << " EUR\n";
    list(out, report::flush(dir, report::vi_sweep_outputs(sw), c.formats));
  } else {
    const auto cmp = analysis::compare_methods(s, c.virtual_inertia, c.pricing);
    for (const auto& m : cmp.summary)
      out << pricing::to_string(m.method) << ": payments " << report::eur(m.total_payments) << " EUR, negative "
          << m.negative_profit_units << ", positive " << m.positive_profit_units << " of " << m.counted_units << "\n";
    list(out, report::flush(dir, report::comparison_outputs(s, cmp), c.formats));
  }
  return kOk;
}

/// Runs one command and maps failures onto exit codes.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    return dispatch(c, out, err);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const io::SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const io::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace fcuc::run
