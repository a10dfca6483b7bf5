#include "ntnopt/physics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ntnopt/rng.hpp"
#include "ntnopt/units.hpp"

namespace ntnopt {
namespace {

double slant_range(const SystemParams& p, const std::array<double, 2>& pos) {
  const double half = 0.5 * p.area_side_nm * kMetersPerNauticalMile;
  const double dx = pos[0] - half;
  const double dy = pos[1] - half;
  const double ground2 = dx * dx + dy * dy;
  return std::sqrt(p.leo_altitude_m * p.leo_altitude_m + ground2);
}

// |h|^2 for a unit-mean-power Rician channel with K-factor k.
double rician_power(Rng& rng, double k) {
  const double los = std::sqrt(k / (k + 1.0));
  const double sigma = std::sqrt(0.5 / (k + 1.0));
  const double re = los + sigma * rng.normal();
  const double im = sigma * rng.normal();
  return re * re + im * im;
}

}  // namespace

void validate(const Topology& t, const SystemParams& p) {
  if (t.num_hues < 1) throw std::invalid_argument("num_hues: must be >= 1");
  if (t.num_lues < 0) throw std::invalid_argument("num_lues: must be >= 0");
  const auto m = static_cast<std::size_t>(t.num_hues);
  if (t.hue_positions.size() != m || t.hue_leo_distances_m.size() != m) {
    throw std::invalid_argument(
        "topology: hue_positions and hue_leo_distances_m must have num_hues "
        "entries");
  }
  // Slant ranges are computed in floating point; allow a relative ulp-scale
  // slack against the altitude.
  const double floor = p.leo_altitude_m * (1.0 - 1e-12);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = t.hue_leo_distances_m[i];
    if (!std::isfinite(d) || d < floor) {
      throw std::invalid_argument("hue_leo_distances_m[" + std::to_string(i) +
                                  "]: shorter than leo_altitude_m");
    }
  }
  if (!std::isfinite(t.uav_leo_distance_m) || t.uav_leo_distance_m <= 0.0) {
    throw std::invalid_argument("uav_leo_distance_m: must be > 0");
  }
}

double large_scale_fading_db(const double d_m, const SystemParams& p,
                             const double shadow_db) {
  if (!(d_m > 0.0) || !std::isfinite(d_m)) {
    throw std::invalid_argument("large_scale_fading_db: distance must be > 0");
  }
  return p.intercept_db + 10.0 * p.pathloss_exp * std::log10(d_m / p.ref_distance_m) +
         shadow_db;
}

double channel_gain(const double d_m, const double terminal_gain_dbi,
                    const SystemParams& p, const double shadow_db) {
  return channel_gain(d_m, terminal_gain_dbi, p, shadow_db, p.rician_coeff);
}

double channel_gain(const double d_m, const double terminal_gain_dbi,
                    const SystemParams& p, const double shadow_db,
                    const double rician) {
  const double beta = large_scale_fading_db(d_m, p, shadow_db);
  return rician * db_to_linear(-beta) * db_to_linear(p.gain_sat_dbi) *
         db_to_linear(terminal_gain_dbi);
}

double local_rate(const SystemParams& p) {
  const double cpu_hz =
      std::cbrt(p.energy_budget_j / (p.chip_coeff * p.frame_duration_s));
  // f* tau* / (chi T) with tau* = T.
  return cpu_hz / p.cycles_per_bit;
}

double rate_coefficient(const double gain, const double tx_power_dbm,
                        const SystemParams& p) {
  if (!(gain >= 0.0)) {
    throw std::invalid_argument("rate_coefficient: gain must be >= 0");
  }
  const double snr =
      gain * db_to_linear(tx_power_dbm) / db_to_linear(p.noise_power_dbm);
  return p.bandwidth_hz / p.overhead * std::log2(1.0 + snr);
}

Topology make_topology(const SystemParams& p,
                       std::vector<std::array<double, 2>> positions,
                       const int m_l) {
  Topology t;
  t.num_hues = static_cast<int>(positions.size());
  t.num_lues = m_l;
  t.hue_leo_distances_m.reserve(positions.size());
  for (const auto& pos : positions) {
    t.hue_leo_distances_m.push_back(slant_range(p, pos));
  }
  t.hue_positions = std::move(positions);
  t.uav_leo_distance_m = p.uav_leo_distance_m;
  validate(t, p);
  return t;
}

Topology sample_topology(const SystemParams& p, const int m_h, const int m_l,
                         const std::uint64_t rng_seed) {
  validate(p);
  if (m_h < 1) throw std::invalid_argument("m_h: must be >= 1");
  if (m_l < 0) throw std::invalid_argument("m_l: must be >= 0");
  const double side = p.area_side_nm * kMetersPerNauticalMile;
  Rng rng(rng_seed);
  std::vector<std::array<double, 2>> positions(static_cast<std::size_t>(m_h));
  for (auto& pos : positions) {
    pos[0] = rng.uniform(0.0, side);
    pos[1] = rng.uniform(0.0, side);
  }
  return make_topology(p, std::move(positions), m_l);
}

Instance build_instance(const SystemParams& p, const Topology& topology,
                        const std::uint64_t rng_seed) {
  return build_instance(
      p, topology, rng_seed,
      std::vector<double>(static_cast<std::size_t>(topology.num_hues), 1.0));
}

Instance build_instance(const SystemParams& p, const Topology& topology,
                        const std::uint64_t rng_seed,
                        std::vector<double> weights) {
  validate(p);
  validate(topology, p);
  const auto m = static_cast<std::size_t>(topology.num_hues);
  if (weights.size() != m) {
    throw std::invalid_argument("weights: length " +
                                std::to_string(weights.size()) +
                                " != num_hues " + std::to_string(m));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
      throw std::invalid_argument("weights[" + std::to_string(i) +
                                  "]: must be finite and > 0");
    }
  }

  Instance inst;
  inst.params = p;
  inst.topology = topology;
  inst.weights = std::move(weights);

  Rng rng(rng_seed);
  ChannelRealization& ch = inst.channel;
  ch.shadow_draws_db.resize(m + 1);
  for (double& s : ch.shadow_draws_db) {
    s = p.shadow_std_db == 0.0 ? 0.0 : p.shadow_std_db * rng.normal();
  }
  ch.rician_draws.assign(m + 1, p.rician_coeff);
  if (p.rician_random) {
    for (double& r : ch.rician_draws) r = rician_power(rng, p.rician_coeff);
  }

  ch.fading_db_hue.resize(m);
  ch.gain_hue.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = topology.hue_leo_distances_m[i];
    ch.fading_db_hue[i] = large_scale_fading_db(d, p, ch.shadow_draws_db[i]);
    ch.gain_hue[i] = channel_gain(d, p.gain_hue_dbi, p, ch.shadow_draws_db[i],
                                  ch.rician_draws[i]);
  }
  ch.fading_db_uav =
      large_scale_fading_db(topology.uav_leo_distance_m, p, ch.shadow_draws_db[m]);
  ch.gain_uav = channel_gain(topology.uav_leo_distance_m, p.gain_uav_dbi, p,
                             ch.shadow_draws_db[m], ch.rician_draws[m]);

  inst.local_rate_bps.assign(m, local_rate(p));
  inst.leo_rate_coeff_bps.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    inst.leo_rate_coeff_bps[i] =
        rate_coefficient(ch.gain_hue[i], p.tx_power_hue_dbm, p);
  }
  inst.uav_rate_coeff_bps = rate_coefficient(ch.gain_uav, p.tx_power_uav_dbm, p);
  return inst;
}

RateBreakdown rate_breakdown(const Instance& inst, const TaskDecision& y,
                             const TimeAllocation& alloc) {
  const std::size_t m = inst.num_hues();
  if (y.size() != m || alloc.tau.size() != m) {
    throw std::invalid_argument("objective: decision/allocation length != m_h");
  }
  RateBreakdown r;
  for (std::size_t i = 0; i < m; ++i) {
    if (y[i]) {
      r.offload_bps += inst.weights[i] * inst.leo_rate_coeff_bps[i] * alloc.tau[i];
    } else {
      r.local_bps += inst.weights[i] * inst.local_rate_bps[i];
    }
  }
  r.backhaul_bps = inst.uav_rate_coeff_bps * alloc.tau_u;
  return r;
}

double objective_value(const Instance& inst, const TaskDecision& y,
                       const TimeAllocation& alloc) {
  return rate_breakdown(inst, y, alloc).total();
}

}  // namespace ntnopt
