#include "ntnopt/serialize.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <utility>

namespace ntnopt {
namespace {

struct DoubleField {
  const char* name;
  double SystemParams::*member;
};

constexpr std::array kParamFields{
    DoubleField{"bandwidth_hz", &SystemParams::bandwidth_hz},
    DoubleField{"carrier_freq_hz", &SystemParams::carrier_freq_hz},
    DoubleField{"noise_power_dbm", &SystemParams::noise_power_dbm},
    DoubleField{"tx_power_hue_dbm", &SystemParams::tx_power_hue_dbm},
    DoubleField{"tx_power_uav_dbm", &SystemParams::tx_power_uav_dbm},
    DoubleField{"overhead", &SystemParams::overhead},
    DoubleField{"cycles_per_bit", &SystemParams::cycles_per_bit},
    DoubleField{"gain_hue_dbi", &SystemParams::gain_hue_dbi},
    DoubleField{"gain_uav_dbi", &SystemParams::gain_uav_dbi},
    DoubleField{"gain_sat_dbi", &SystemParams::gain_sat_dbi},
    DoubleField{"shadow_std_db", &SystemParams::shadow_std_db},
    DoubleField{"intercept_db", &SystemParams::intercept_db},
    DoubleField{"pathloss_exp", &SystemParams::pathloss_exp},
    DoubleField{"rician_coeff", &SystemParams::rician_coeff},
    DoubleField{"ref_distance_m", &SystemParams::ref_distance_m},
    DoubleField{"frame_duration_s", &SystemParams::frame_duration_s},
    DoubleField{"energy_budget_j", &SystemParams::energy_budget_j},
    DoubleField{"chip_coeff", &SystemParams::chip_coeff},
    DoubleField{"leo_altitude_m", &SystemParams::leo_altitude_m},
    DoubleField{"area_side_nm", &SystemParams::area_side_nm},
    DoubleField{"epsilon_tau_s", &SystemParams::epsilon_tau_s},
    DoubleField{"uav_leo_distance_m", &SystemParams::uav_leo_distance_m},
};

constexpr const char* kRicianRandom = "rician_random";

std::string join(std::string_view path, std::string_view key) {
  return path.empty() ? std::string(key)
                      : std::string(path) + "." + std::string(key);
}

const Json& member(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(std::string(key) + ": missing");
  }
  return *it;
}

std::vector<double> doubles(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) throw SchemaError(std::string(key) + ": expected array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& e : v) {
    if (!e.is_number()) {
      throw SchemaError(std::string(key) + ": expected numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

double number(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number()) throw SchemaError(std::string(key) + ": expected number");
  return v.get<double>();
}

}  // namespace

Json to_json(const SystemParams& p) {
  Json j = Json::object();
  for (const auto& f : kParamFields) j[f.name] = p.*(f.member);
  j[kRicianRandom] = p.rician_random;
  return j;
}

SystemParams params_from_json(const Json& j, const std::string_view path) {
  if (!j.is_object()) throw SchemaError(std::string(path) + ": expected object");
  SystemParams p;
  for (const auto& [key, value] : j.items()) {
    const std::string where = join(path, key);
    if (key == kRicianRandom) {
      if (!value.is_boolean()) throw SchemaError(where + ": expected boolean");
      p.rician_random = value.get<bool>();
      continue;
    }
    bool known = false;
    for (const auto& f : kParamFields) {
      if (key != f.name) continue;
      if (!value.is_number()) throw SchemaError(where + ": expected number");
      p.*(f.member) = value.get<double>();
      known = true;
      break;
    }
    if (!known) throw SchemaError(where + ": unknown key");
  }
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(join(path, e.what()));
  }
  return p;
}

Json to_json(const Topology& t) {
  Json positions = Json::array();
  for (const auto& pos : t.hue_positions) positions.push_back({pos[0], pos[1]});
  return Json{{"hue_positions", positions},
              {"num_hues", t.num_hues},
              {"num_lues", t.num_lues},
              {"hue_leo_distances_m", t.hue_leo_distances_m},
              {"uav_leo_distance_m", t.uav_leo_distance_m}};
}

Topology topology_from_json(const Json& j, const SystemParams& params) {
  Topology t;
  const Json& positions = member(j, "hue_positions");
  if (!positions.is_array()) throw SchemaError("hue_positions: expected array");
  for (const Json& pos : positions) {
    if (!pos.is_array() || pos.size() != 2 || !pos[0].is_number() ||
        !pos[1].is_number()) {
      throw SchemaError("hue_positions: expected [x, y] pairs");
    }
    t.hue_positions.push_back({pos[0].get<double>(), pos[1].get<double>()});
  }
  t.num_hues = static_cast<int>(number(j, "num_hues"));
  t.num_lues = static_cast<int>(number(j, "num_lues"));
  t.hue_leo_distances_m = doubles(j, "hue_leo_distances_m");
  t.uav_leo_distance_m = number(j, "uav_leo_distance_m");
  validate(t, params);
  return t;
}

Json to_json(const Instance& inst) {
  const ChannelRealization& ch = inst.channel;
  return Json{{"params", to_json(inst.params)},
              {"topology", to_json(inst.topology)},
              {"channel",
               {{"gain_hue", ch.gain_hue},
                {"gain_uav", ch.gain_uav},
                {"fading_db_hue", ch.fading_db_hue},
                {"fading_db_uav", ch.fading_db_uav},
                {"shadow_draws_db", ch.shadow_draws_db},
                {"rician_draws", ch.rician_draws}}},
              {"local_rate_bps", inst.local_rate_bps},
              {"leo_rate_coeff_bps", inst.leo_rate_coeff_bps},
              {"uav_rate_coeff_bps", inst.uav_rate_coeff_bps},
              {"weights", inst.weights}};
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.params = params_from_json(member(j, "params"));
  inst.topology = topology_from_json(member(j, "topology"), inst.params);
  const Json& ch = member(j, "channel");
  inst.channel.gain_hue = doubles(ch, "gain_hue");
  inst.channel.gain_uav = number(ch, "gain_uav");
  inst.channel.fading_db_hue = doubles(ch, "fading_db_hue");
  inst.channel.fading_db_uav = number(ch, "fading_db_uav");
  inst.channel.shadow_draws_db = doubles(ch, "shadow_draws_db");
  inst.channel.rician_draws = doubles(ch, "rician_draws");
  inst.local_rate_bps = doubles(j, "local_rate_bps");
  inst.leo_rate_coeff_bps = doubles(j, "leo_rate_coeff_bps");
  inst.uav_rate_coeff_bps = number(j, "uav_rate_coeff_bps");
  inst.weights = doubles(j, "weights");

  const auto m = static_cast<std::size_t>(inst.topology.num_hues);
  const bool lengths_ok =
      inst.channel.gain_hue.size() == m && inst.channel.fading_db_hue.size() == m &&
      inst.channel.shadow_draws_db.size() == m + 1 &&
      inst.channel.rician_draws.size() == m + 1 && inst.local_rate_bps.size() == m &&
      inst.leo_rate_coeff_bps.size() == m && inst.weights.size() == m;
  if (!lengths_ok) {
    throw SchemaError("instance: per-HUE arrays must have num_hues entries");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(inst.weights[i] > 0.0)) {
      throw SchemaError("weights[" + std::to_string(i) + "]: must be > 0");
    }
    if (!(inst.leo_rate_coeff_bps[i] >= 0.0) || !(inst.local_rate_bps[i] >= 0.0)) {
      throw SchemaError("rates must be >= 0");
    }
  }
  if (!(inst.uav_rate_coeff_bps >= 0.0)) {
    throw SchemaError("uav_rate_coeff_bps: must be >= 0");
  }
  return inst;
}

Json to_json(const Solution& s) {
  return Json{{"scheme", std::string(to_string(s.scheme))},
              {"y", s.y.y},
              {"y_bitmask", s.y.bitmask_hex()},
              {"tau_u", s.alloc.tau_u},
              {"tau", s.alloc.tau},
              {"objective_bps", s.objective_bps},
              {"local_bps", s.breakdown.local_bps},
              {"offload_bps", s.breakdown.offload_bps},
              {"backhaul_bps", s.breakdown.backhaul_bps}};
}

std::string fnv1a_hex(const std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string instance_fingerprint(const Instance& inst) {
  return fnv1a_hex(to_json(inst).dump());
}

}  // namespace ntnopt
