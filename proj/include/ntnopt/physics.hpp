#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ntnopt/decision.hpp"
#include "ntnopt/params.hpp"

namespace ntnopt {

// Ground positions of the HUEs and their slant ranges to the satellite.
struct Topology {
  std::vector<std::array<double, 2>> hue_positions;  // meters
  int num_hues = 0;
  int num_lues = 0;  // carried for reporting only
  std::vector<double> hue_leo_distances_m;
  double uav_leo_distance_m = 0.0;

  bool operator==(const Topology&) const = default;
};

// Throws std::invalid_argument when lengths disagree or a slant range is
// shorter than the orbit altitude.
void validate(const Topology& topology, const SystemParams& params);

struct ChannelRealization {
  std::vector<double> gain_hue;  // linear
  double gain_uav = 0.0;
  std::vector<double> fading_db_hue;
  double fading_db_uav = 0.0;
  // One draw per HUE link followed by the UAV link.
  std::vector<double> shadow_draws_db;
  // Per-link Rician multipliers; all equal rician_coeff unless
  // SystemParams::rician_random is set. UAV link last.
  std::vector<double> rician_draws;

  bool operator==(const ChannelRealization&) const = default;
};

// One solvable problem. All derived coefficients are filled by
// build_instance; treat as immutable afterwards.
struct Instance {
  SystemParams params;
  Topology topology;
  ChannelRealization channel;
  std::vector<double> local_rate_bps;
  std::vector<double> leo_rate_coeff_bps;
  double uav_rate_coeff_bps = 0.0;
  std::vector<double> weights;

  std::size_t num_hues() const { return weights.size(); }
  double frame() const { return params.frame_duration_s; }
  double tau_floor() const { return params.epsilon_tau_s; }
  // z_i * c_i: weighted rate earned per second granted to offloading HUE i.
  double weighted_leo_coeff(std::size_t i) const {
    return weights[i] * leo_rate_coeff_bps[i];
  }

  bool operator==(const Instance&) const = default;
};

// Path loss in dB: intercept + 10*gamma*log10(d/d0) + shadow.
double large_scale_fading_db(double d_m, const SystemParams& params,
                             double shadow_db);

// Linear gain alpha * 10^(-beta/10) * G_s * G_terminal with alpha =
// params.rician_coeff.
double channel_gain(double d_m, double terminal_gain_dbi,
                    const SystemParams& params, double shadow_db);

// As above with an explicit Rician multiplier in place of rician_coeff.
double channel_gain(double d_m, double terminal_gain_dbi,
                    const SystemParams& params, double shadow_db,
                    double rician);

// Local computing rate under the per-frame energy budget, bits/s. The
// energy-optimal CPU frequency is (E_th / (nu T))^(1/3) over the full frame.
double local_rate(const SystemParams& params);

// Bits/s earned per unit of allocated time: (B/mu) log2(1 + g P / sigma^2).
double rate_coefficient(double gain, double tx_power_dbm,
                        const SystemParams& params);

// HUEs uniform over the deployment square; the satellite sits above its
// center.
Topology sample_topology(const SystemParams& params, int m_h, int m_l,
                         std::uint64_t rng_seed);

// Slant ranges for caller-provided positions (meters, square-centered at
// (side/2, side/2)).
Topology make_topology(const SystemParams& params,
                       std::vector<std::array<double, 2>> positions,
                       int m_l = 0);

Instance build_instance(const SystemParams& params, const Topology& topology,
                        std::uint64_t rng_seed, std::vector<double> weights);

// Same instance with all weights equal to one.
Instance build_instance(const SystemParams& params, const Topology& topology,
                        std::uint64_t rng_seed);

// Weighted sum of local, offload and backhaul rates. Throws on dimension
// mismatch.
double objective_value(const Instance& instance, const TaskDecision& y,
                       const TimeAllocation& alloc);

struct RateBreakdown {
  double local_bps = 0.0;
  double offload_bps = 0.0;
  double backhaul_bps = 0.0;
  double total() const { return local_bps + offload_bps + backhaul_bps; }
};

RateBreakdown rate_breakdown(const Instance& instance, const TaskDecision& y,
                             const TimeAllocation& alloc);

}  // namespace ntnopt
