#pragma once

// JSON interchange for parameters, topologies, instances and solutions.
// Field names match the C++ members; all quantities are SI (meters, seconds,
// hertz, bits/s) except the dB/dBm/dBi-suffixed fields.

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ntnopt/params.hpp"
#include "ntnopt/physics.hpp"
#include "ntnopt/solution.hpp"

namespace ntnopt {

using Json = nlohmann::json;

// Thrown for schema violations; what() names the offending field path.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const SystemParams& params);
// Starts from the defaults and overrides every key present. Unknown keys and
// wrongly typed values raise SchemaError naming `path.key`; the result is
// validated.
SystemParams params_from_json(const Json& j, std::string_view path = "params");

Json to_json(const Topology& topology);
Topology topology_from_json(const Json& j, const SystemParams& params);

Json to_json(const Instance& instance);
// Reads back an instance written by to_json and checks its invariants.
Instance instance_from_json(const Json& j);

Json to_json(const Solution& solution);

// Hex FNV-1a 64 digest of the compact JSON dump; stable for identical
// instances.
std::string instance_fingerprint(const Instance& instance);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace ntnopt
