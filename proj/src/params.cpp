#include "ntnopt/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ntnopt {
namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string(field) + ": " + what);
  }
}

void require_positive(double v, const char* field) {
  require(std::isfinite(v) && v > 0.0, field, "must be finite and > 0");
}

void require_finite(double v, const char* field) {
  require(std::isfinite(v), field, "must be finite");
}

}  // namespace

void validate(const SystemParams& p) {
  require_positive(p.bandwidth_hz, "bandwidth_hz");
  require_positive(p.carrier_freq_hz, "carrier_freq_hz");
  require_finite(p.noise_power_dbm, "noise_power_dbm");
  require_finite(p.tx_power_hue_dbm, "tx_power_hue_dbm");
  require_finite(p.tx_power_uav_dbm, "tx_power_uav_dbm");
  require(std::isfinite(p.overhead) && p.overhead >= 1.0, "overhead",
          "must be finite and >= 1");
  require_positive(p.cycles_per_bit, "cycles_per_bit");
  require_finite(p.gain_hue_dbi, "gain_hue_dbi");
  require_finite(p.gain_uav_dbi, "gain_uav_dbi");
  require_finite(p.gain_sat_dbi, "gain_sat_dbi");
  require(std::isfinite(p.shadow_std_db) && p.shadow_std_db >= 0.0,
          "shadow_std_db", "must be finite and >= 0");
  require_finite(p.intercept_db, "intercept_db");
  require_finite(p.pathloss_exp, "pathloss_exp");
  require_positive(p.rician_coeff, "rician_coeff");
  require_positive(p.ref_distance_m, "ref_distance_m");
  require_positive(p.frame_duration_s, "frame_duration_s");
  require_positive(p.energy_budget_j, "energy_budget_j");
  require_positive(p.chip_coeff, "chip_coeff");
  require_positive(p.leo_altitude_m, "leo_altitude_m");
  require_positive(p.area_side_nm, "area_side_nm");
  require_positive(p.epsilon_tau_s, "epsilon_tau_s");
  require(p.epsilon_tau_s < p.frame_duration_s, "epsilon_tau_s",
          "must be smaller than frame_duration_s");
  require_positive(p.uav_leo_distance_m, "uav_leo_distance_m");
}

SystemParams validated(SystemParams params) {
  validate(params);
  return params;
}

}  // namespace ntnopt
