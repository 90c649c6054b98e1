#pragma once

// Domain data shared by every stage of the market-clearing pipeline.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fcuc {

/// Synchronous generator. Powers in MW, costs in EUR, H in seconds on machine base.
struct SyncGenerator {
  std::string id;
  double p_max = 0.0;
  double p_min = 0.0;
  double fuel_cost = 0.0;     // EUR/MWh
  double startup_cost = 0.0;  // EUR
  double inertia_const = 0.0; // s
  int min_up = 1;             // h
  int min_down = 1;           // h

  bool operator==(const SyncGenerator&) const = default;
};

/// Converter-interfaced unit offering virtual inertia. Always online.
struct ViUnit {
  std::string id;
  double p_max = 0.0;
  double p_min = 0.0;
  double inertia_const = 0.0;
  double bid_cost = 50.0;  // EUR/(MW s^2)

  bool operator==(const ViUnit&) const = default;
};

struct GridParams {
  double f0 = 50.0;           // Hz
  double rocof_limit = 0.25;  // Hz/s
  // Base for the disturbance series, MW. Unset means the installed synchronous capacity.
  std::optional<double> pu_base;

  bool operator==(const GridParams&) const = default;
};

struct Scenario {
  std::string name;
  std::size_t horizon = 0;
  std::vector<SyncGenerator> generators;
  std::vector<ViUnit> vi_units;
  std::vector<std::vector<double>> load;  // [node][hour], MWh
  std::vector<std::vector<double>> wind;  // [farm][hour], MWh
  std::vector<double> disturbance;        // [hour], p.u.
  GridParams grid;
  // Set by skeleton data files whose profiles are not the real ones.
  bool placeholder_profiles = false;

  bool operator==(const Scenario&) const = default;

  double sg_capacity() const {
    return std::accumulate(generators.begin(), generators.end(), 0.0,
                           [](double acc, const SyncGenerator& g) { return acc + g.p_max; });
  }
  double vi_capacity() const {
    return std::accumulate(vi_units.begin(), vi_units.end(), 0.0,
                           [](double acc, const ViUnit& v) { return acc + v.p_max; });
  }

  /// Base power of the disturbance series.
  double pu_base() const { return grid.pu_base ? *grid.pu_base : sg_capacity(); }

  double total_load(std::size_t t) const {
    double s = 0.0;
    for (const auto& node : load) s += node[t];
    return s;
  }
  double total_wind(std::size_t t) const {
    double s = 0.0;
    for (const auto& farm : wind) s += farm[t];
    return s;
  }
  double net_load(std::size_t t) const { return total_load(t) - total_wind(t); }

  std::optional<std::size_t> generator_index(const std::string& id) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].id == id) return i;
    return std::nullopt;
  }
};

inline constexpr const char* kPlaceholderWarning = "scenario profiles are placeholders; figures are not meaningful";

inline std::vector<std::string> scenario_warnings(const Scenario& s) {
  if (s.placeholder_profiles) return {kPlaceholderWarning};
  return {};
}

struct Violation {
  std::string where;
  std::string message;

  bool operator==(const Violation&) const = default;
};

namespace detail {
inline std::string describe(const std::string& kind, std::size_t index, const std::string& id) {
  std::ostringstream os;
  os << kind << "[" << index << "]";
  if (!id.empty()) os << " '" << id << "'";
  return os.str();
}
}  // namespace detail

/// Checks every scenario invariant; an empty result means the scenario is usable.
inline std::vector<Violation> validate(const Scenario& s) {
  std::vector<Violation> out;
  auto add = [&](std::string where, std::string msg) {
    out.push_back({std::move(where), std::move(msg)});
  };

  if (s.horizon == 0) add("horizon", "horizon must be at least one hour");
  if (s.generators.empty()) add("generators", "at least one synchronous generator is required");

  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    const auto& g = s.generators[i];
    const auto where = detail::describe("generators", i, g.id);
    if (g.id.empty()) add(where, "id must not be empty");
    if (!(g.p_min >= 0.0)) add(where, "p_min must be >= 0");
    if (!(g.p_max >= g.p_min)) add(where, "p_max must be >= p_min");
    if (!(g.fuel_cost >= 0.0)) add(where, "fuel_cost must be >= 0");
    if (!(g.startup_cost >= 0.0)) add(where, "startup_cost must be >= 0");
    if (!(g.inertia_const > 0.0)) add(where, "inertia_const must be > 0");
    if (g.min_up < 1) add(where, "min_up must be >= 1");
    if (g.min_down < 1) add(where, "min_down must be >= 1");
    for (std::size_t j = 0; j < i; ++j)
      if (!g.id.empty() && s.generators[j].id == g.id) add(where, "duplicate id");
  }

  for (std::size_t v = 0; v < s.vi_units.size(); ++v) {
    const auto& u = s.vi_units[v];
    const auto where = detail::describe("vi_units", v, u.id);
    if (u.id.empty()) add(where, "id must not be empty");
    if (!(u.p_max > 0.0)) add(where, "p_max must be > 0");
    if (!(u.p_min >= 0.0)) add(where, "p_min must be >= 0");
    if (!(u.p_max >= u.p_min)) add(where, "p_max must be >= p_min");
    if (!(u.inertia_const > 0.0)) add(where, "inertia_const must be > 0");
    if (!(u.bid_cost >= 0.0)) add(where, "bid_cost must be >= 0");
  }

  auto check_series = [&](const std::string& name, const std::vector<double>& series,
                          bool non_negative) {
    if (series.size() != s.horizon) {
      std::ostringstream os;
      os << "length " << series.size() << " does not match horizon " << s.horizon;
      add(name, os.str());
    }
    for (std::size_t t = 0; t < series.size(); ++t) {
      if (!std::isfinite(series[t])) {
        add(name, "entry " + std::to_string(t) + " is not finite");
      } else if (non_negative && series[t] < 0.0) {
        add(name, "entry " + std::to_string(t) + " is negative");
      }
    }
  };
  for (std::size_t n = 0; n < s.load.size(); ++n)
    check_series("load[" + std::to_string(n) + "]", s.load[n], true);
  for (std::size_t j = 0; j < s.wind.size(); ++j)
    check_series("wind[" + std::to_string(j) + "]", s.wind[j], true);
  check_series("disturbance", s.disturbance, false);
  for (std::size_t t = 0; t < s.disturbance.size(); ++t)
    if (std::isfinite(s.disturbance[t]) && !(std::fabs(s.disturbance[t]) < 1.0))
      add("disturbance", "entry " + std::to_string(t) + " must satisfy |dP| < 1");

  if (!(s.grid.f0 > 0.0)) add("grid.f0", "f0 must be > 0");
  if (!(s.grid.rocof_limit > 0.0)) add("grid.rocof_limit", "rocof_limit must be > 0");
  if (s.grid.pu_base && !(*s.grid.pu_base > 0.0)) add("grid.pu_base", "pu_base must be > 0");
  if (!s.generators.empty() && !(s.sg_capacity() > 0.0))
    add("generators", "total synchronous capacity must be > 0");
  return out;
}

}  // namespace fcuc
