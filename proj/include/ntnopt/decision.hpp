#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ntnopt {

// kPaper caps offloading at one HUE per frame; kRelaxed allows any subset.
enum class Mode { kPaper, kRelaxed };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

// Binary offloading decision; y[i] == 1 sends HUE i's task to the satellite.
struct TaskDecision {
  std::vector<std::uint8_t> y;

  static TaskDecision zeros(std::size_t m_h) {
    return TaskDecision{std::vector<std::uint8_t>(m_h, 0)};
  }
  static TaskDecision unit(std::size_t m_h, std::size_t k) {
    TaskDecision d = zeros(m_h);
    d.y.at(k) = 1;
    return d;
  }
  // Bit i of the mask is y[i]. Requires m_h <= 64.
  static TaskDecision from_mask(std::size_t m_h, std::uint64_t mask);

  std::size_t size() const { return y.size(); }
  std::size_t count() const;
  bool operator[](std::size_t i) const { return y[i] != 0; }
  bool operator==(const TaskDecision&) const = default;

  // Lowercase hex of the decision read as a little-endian bit vector, e.g.
  // "0x0" for all-local and "0x4" for y = (0, 0, 1, ...). Any length.
  std::string bitmask_hex() const;
  // Lexicographic order on the bitmask value (highest HUE index most
  // significant); used for deterministic tie-breaking.
  bool mask_less(const TaskDecision& other) const;
};

// Throws std::invalid_argument when the decision violates the mode.
void check_decision(const TaskDecision& y, std::size_t m_h, Mode mode);

// Time shares of one frame: UAV backhaul plus one slot per HUE.
struct TimeAllocation {
  double tau_u = 0.0;
  std::vector<double> tau;

  double total() const;
  bool operator==(const TimeAllocation&) const = default;
};

}  // namespace ntnopt
