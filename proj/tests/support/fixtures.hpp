#pragma once

#include <string>

#include "fcuc/io.hpp"

namespace fixtures {

inline std::string data_path(const std::string& file) { return std::string(FCUC_DATA_DIR) + "/" + file; }

inline const fcuc::Scenario& small_system() {
  static const fcuc::Scenario s = fcuc::io::load_scenario(data_path("small_system.json"));
  return s;
}

}  // namespace fixtures
