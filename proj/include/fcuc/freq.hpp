#pragma once

// Closed-form post-contingency frequency metrics of a low-inertia system.
// All quantities are per unit unless the name says otherwise; multiply by f0
// for Hz.

#include <cmath>
#include <stdexcept>

#include "fcuc/model.hpp"

namespace fcuc::freq {

struct FrequencyResponseParams {
  double M = 0.0;        // aggregate inertia, s
  double D = 0.0;        // damping, p.u.
  double R_g = 0.0;      // aggregate droop gain, p.u.
  double F_g = 0.0;      // high-pressure turbine fraction, p.u.
  double T = 0.0;        // turbine time constant, s
  double zeta = 0.0;     // damping ratio
  double omega_n = 0.0;  // natural frequency, rad/s
  double t_m = 0.0;      // time of nadir, s
};

/// Initial RoCoF right after a step disturbance: -dP/M.
inline double rocof_max(double delta_p, double M) {
  if (!(M > 0.0)) throw std::domain_error("rocof_max: aggregate inertia must be positive");
  return -delta_p / M;
}

/// Quasi steady-state deviation: -dP/(D + R_g).
inline double steady_state_dev(double delta_p, double D, double R_g) {
  if (!(D + R_g > 0.0)) throw std::domain_error("steady_state_dev: D + R_g must be positive");
  return -delta_p / (D + R_g);
}

inline double nadir(double delta_p, const FrequencyResponseParams& p) {
  if (!(p.M > 0.0)) throw std::domain_error("nadir: aggregate inertia must be positive");
  if (p.R_g < p.F_g) throw std::domain_error("nadir: R_g < F_g gives a negative radicand");
  if (p.T < 0.0) throw std::domain_error("nadir: turbine time constant must be >= 0");
  const double base = steady_state_dev(delta_p, p.D, p.R_g);
  const double overshoot = std::sqrt(p.T * (p.R_g - p.F_g) / p.M) * std::exp(-p.zeta * p.omega_n * p.t_m);
  return base * (1.0 + overshoot);
}

/// Smallest aggregate inertia (s) that keeps |RoCoF| within the grid limit.
inline double min_inertia_for_rocof(double delta_p, const GridParams& grid) {
  if (!(grid.rocof_limit > 0.0))
    throw std::domain_error("min_inertia_for_rocof: rocof_limit must be positive");
  return std::fabs(delta_p) * grid.f0 / grid.rocof_limit;
}

struct Metrics {
  double rocof_pu = 0.0;
  double nadir_pu = 0.0;
  double steady_state_pu = 0.0;
  double rocof_hz_per_s = 0.0;
  double nadir_hz = 0.0;
  double steady_state_hz = 0.0;
};

inline Metrics evaluate(double delta_p, const FrequencyResponseParams& p, double f0) {
  Metrics m;
  m.rocof_pu = rocof_max(delta_p, p.M);
  m.nadir_pu = nadir(delta_p, p);
  m.steady_state_pu = steady_state_dev(delta_p, p.D, p.R_g);
  m.rocof_hz_per_s = m.rocof_pu * f0;
  m.nadir_hz = m.nadir_pu * f0;
  m.steady_state_hz = m.steady_state_pu * f0;
  return m;
}

}  // namespace fcuc::freq
