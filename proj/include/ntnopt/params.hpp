#pragma once

#include <string>

namespace ntnopt {

// Physical and protocol constants of the space-air-sea network. Defaults
// describe the 30 GHz maritime scenario; frame length, energy budget, chip
// coefficient and geometry defaults are modelling choices.
struct SystemParams {
  double bandwidth_hz = 20e6;
  double carrier_freq_hz = 30e9;
  double noise_power_dbm = -104.0;
  double tx_power_hue_dbm = 33.0;
  double tx_power_uav_dbm = 30.0;
  double overhead = 1.1;
  double cycles_per_bit = 100.0;
  double gain_hue_dbi = 25.0;
  double gain_uav_dbi = 25.0;
  double gain_sat_dbi = 30.0;
  double shadow_std_db = 0.1;
  double intercept_db = 46.4;
  double pathloss_exp = 2.0;
  double rician_coeff = 1.59;
  double ref_distance_m = 1.0;
  double frame_duration_s = 1.0;
  double energy_budget_j = 1e-3;
  double chip_coeff = 1e-28;
  double leo_altitude_m = 550e3;
  double area_side_nm = 500.0;
  double epsilon_tau_s = 1e-6;
  // Slant range from the UAV to the satellite; UAV altitude is negligible at
  // LEO scale so the default equals the orbit altitude.
  double uav_leo_distance_m = 550e3;
  // When set, every link draws its own Rician power gain (K-factor =
  // rician_coeff) instead of using rician_coeff as a fixed multiplier.
  bool rician_random = false;

  bool operator==(const SystemParams&) const = default;
};

// Throws std::invalid_argument naming the first offending field.
void validate(const SystemParams& params);

// Returns a validated copy; convenience for builder-style call sites.
SystemParams validated(SystemParams params);

}  // namespace ntnopt
