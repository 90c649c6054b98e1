// Small system end to end: schedule, the three payment schemes, and a short
// substitution curve. Pass a scenario path to use another file.

#include <cmath>
#include <iomanip>
#include <iostream>

#include "fcuc/fcuc.hpp"

namespace {
double clean(double x) { return std::fabs(x) < 0.005 ? 0.0 : x; }
}  // namespace

using namespace fcuc;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : std::string(FCUC_DATA_DIR) + "/small_system.json";
  const auto s = io::load_scenario(path);
  std::cout << std::fixed << std::setprecision(2);

  const auto cmp = analysis::compare_methods(s);
  const auto& ts = cmp.two_step;
  std::cout << "UC cost " << ts.step1.objective << " EUR without frequency constraints, " << ts.step2.objective
            << " EUR with them\n";
  for (const auto& [id, hours] : ts.extra_units) {
    std::cout << "  " << id << " committed for inertia at hours";
    for (auto t : hours) std::cout << ' ' << t + 1;
    std::cout << '\n';
  }

  for (const auto& r : cmp.results) {
    std::cout << '\n' << pricing::to_string(r.method) << ": total payments " << r.total_payments << " EUR\n";
    for (const auto& id : r.report.unit_order) {
      const auto& u = r.report.units.at(id);
      if (!u.committed) continue;
      std::cout << "  " << std::setw(3) << id << "  EOM " << std::setw(8) << clean(u.eom_profit) << "  SU "
                << std::setw(7) << clean(u.startup_cost) << "  IP " << std::setw(8) << clean(u.inertia_payment) << "  profit "
                << std::setw(8) << clean(u.total_profit) << '\n';
    }
  }

  std::cout << "\nslack inertia bought at C+ (EUR/(MW s^2)):\n";
  for (const auto& p : analysis::substitution_sweep(s, {0.0, 0.2, 0.5, 1.0}).points)
    std::cout << "  " << std::setw(5) << p.cost << "  " << std::setw(7) << p.purchased << " MW s^2  cost "
              << p.total_cost << " EUR\n";
}
