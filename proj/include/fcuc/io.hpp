#pragma once

// Scenario files: JSON in, JSON out. Unknown keys are rejected with their path.

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fcuc/model.hpp"

namespace fcuc::io {

using nlohmann::json;

/// Malformed JSON. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(msg), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Well-formed JSON that does not describe a scenario (wrong type, unknown or missing key).
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& path, const std::string& msg)
      : std::runtime_error(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A scenario that parsed but failed validation; carries every violation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> v) : std::runtime_error(render(v)), violations_(std::move(v)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string render(const std::vector<Violation>& v) {
    std::ostringstream os;
    os << v.size() << " validation error(s)";
    for (const auto& x : v) os << "\n  " << x.where << ": " << x.message;
    return os.str();
  }
  std::vector<Violation> violations_;
};

/// File that could not be read or written.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(what + ": " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace detail {

inline void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key())) throw SchemaError(path + "." + it.key(), "unknown field");
}

inline const json& need(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing required field");
  return *it;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

inline int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

inline std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

inline double number_or(const json& obj, const std::string& path, const char* key, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "." + key);
}

inline std::vector<double> series(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t t = 0; t < j.size(); ++t) out.push_back(number(j[t], path + "[" + std::to_string(t) + "]"));
  return out;
}

inline std::vector<std::vector<double>> series_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t n = 0; n < j.size(); ++n) out.push_back(series(j[n], path + "[" + std::to_string(n) + "]"));
  return out;
}

inline void line_column(const std::string& text, std::size_t byte, std::size_t& line, std::size_t& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

}  // namespace detail

/// Structural decoding only; does not validate invariants.
inline Scenario scenario_from_json(const json& j) {
  using namespace detail;
  check_keys(j, "$", {"name", "horizon", "generators", "vi_units", "load", "wind", "disturbance", "grid",
                      "placeholder_profiles"});
  Scenario s;
  if (j.contains("name")) s.name = text(j["name"], "$.name");
  const int horizon = integer(need(j, "$", "horizon"), "$.horizon");
  if (horizon < 0) throw SchemaError("$.horizon", "must be non-negative");
  s.horizon = static_cast<std::size_t>(horizon);

  const auto& gens = need(j, "$", "generators");
  if (!gens.is_array()) throw SchemaError("$.generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string p = "$.generators[" + std::to_string(i) + "]";
    const auto& g = gens[i];
    check_keys(g, p, {"id", "p_max", "p_min", "fuel_cost", "startup_cost", "inertia_const", "min_up", "min_down"});
    SyncGenerator x;
    x.id = text(need(g, p, "id"), p + ".id");
    x.p_max = number(need(g, p, "p_max"), p + ".p_max");
    x.p_min = number(need(g, p, "p_min"), p + ".p_min");
    x.fuel_cost = number(need(g, p, "fuel_cost"), p + ".fuel_cost");
    x.startup_cost = number(need(g, p, "startup_cost"), p + ".startup_cost");
    x.inertia_const = number(need(g, p, "inertia_const"), p + ".inertia_const");
    if (g.contains("min_up")) x.min_up = integer(g["min_up"], p + ".min_up");
    if (g.contains("min_down")) x.min_down = integer(g["min_down"], p + ".min_down");
    s.generators.push_back(std::move(x));
  }

  if (j.contains("vi_units")) {
    const auto& vis = j["vi_units"];
    if (!vis.is_array()) throw SchemaError("$.vi_units", "expected an array");
    for (std::size_t v = 0; v < vis.size(); ++v) {
      const std::string p = "$.vi_units[" + std::to_string(v) + "]";
      const auto& b = vis[v];
      check_keys(b, p, {"id", "p_max", "p_min", "inertia_const", "bid_cost"});
      ViUnit x;
      x.id = text(need(b, p, "id"), p + ".id");
      x.p_max = number(need(b, p, "p_max"), p + ".p_max");
      x.p_min = number_or(b, p, "p_min", 0.0);
      x.inertia_const = number(need(b, p, "inertia_const"), p + ".inertia_const");
      x.bid_cost = number_or(b, p, "bid_cost", 50.0);
      s.vi_units.push_back(std::move(x));
    }
  }

  s.load = series_list(need(j, "$", "load"), "$.load");
  if (j.contains("wind")) s.wind = series_list(j["wind"], "$.wind");
  s.disturbance = series(need(j, "$", "disturbance"), "$.disturbance");

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    check_keys(g, "$.grid", {"f0", "rocof_limit", "pu_base"});
    s.grid.f0 = number_or(g, "$.grid", "f0", 50.0);
    s.grid.rocof_limit = number_or(g, "$.grid", "rocof_limit", 0.25);
    if (g.contains("pu_base")) s.grid.pu_base = number(g["pu_base"], "$.grid.pu_base");
  }
  if (j.contains("placeholder_profiles")) {
    if (!j["placeholder_profiles"].is_boolean()) throw SchemaError("$.placeholder_profiles", "expected a boolean");
    s.placeholder_profiles = j["placeholder_profiles"].get<bool>();
  }
  return s;
}

inline json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["horizon"] = s.horizon;
  j["generators"] = json::array();
  for (const auto& g : s.generators)
    j["generators"].push_back({{"id", g.id},
                               {"p_max", g.p_max},
                               {"p_min", g.p_min},
                               {"fuel_cost", g.fuel_cost},
                               {"startup_cost", g.startup_cost},
                               {"inertia_const", g.inertia_const},
                               {"min_up", g.min_up},
                               {"min_down", g.min_down}});
  j["vi_units"] = json::array();
  for (const auto& v : s.vi_units)
    j["vi_units"].push_back({{"id", v.id},
                             {"p_max", v.p_max},
                             {"p_min", v.p_min},
                             {"inertia_const", v.inertia_const},
                             {"bid_cost", v.bid_cost}});
  j["load"] = s.load;
  j["wind"] = s.wind;
  j["disturbance"] = s.disturbance;
  j["grid"] = {{"f0", s.grid.f0}, {"rocof_limit", s.grid.rocof_limit}};
  if (s.grid.pu_base) j["grid"]["pu_base"] = *s.grid.pu_base;
  if (s.placeholder_profiles) j["placeholder_profiles"] = true;
  return j;
}

inline std::string serialize_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

/// Parses and validates. Throws ParseError, SchemaError or ValidationError.
inline Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 0, col = 0;
    detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1, line, col);
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         e.what(),
                     line, col);
  }
  auto s = scenario_from_json(j);
  auto problems = validate(s);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

}  // namespace fcuc::io
