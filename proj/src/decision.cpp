#include "ntnopt/decision.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ntnopt {

std::string_view to_string(const Mode mode) {
  return mode == Mode::kPaper ? "paper" : "relaxed";
}

std::optional<Mode> parse_mode(const std::string_view text) {
  if (text == "paper") return Mode::kPaper;
  if (text == "relaxed") return Mode::kRelaxed;
  return std::nullopt;
}

TaskDecision TaskDecision::from_mask(const std::size_t m_h,
                                     const std::uint64_t mask) {
  if (m_h > 64) throw std::invalid_argument("from_mask: m_h > 64");
  TaskDecision d = zeros(m_h);
  for (std::size_t i = 0; i < m_h; ++i) d.y[i] = (mask >> i) & 1U;
  return d;
}

std::size_t TaskDecision::count() const {
  return std::accumulate(y.begin(), y.end(), std::size_t{0});
}

std::string TaskDecision::bitmask_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const std::size_t nibbles = (y.size() + 3) / 4;
  for (std::size_t n = nibbles; n-- > 0;) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = 4 * n + b;
      if (i < y.size() && y[i]) v |= 1U << b;
    }
    if (out.empty() && v == 0) continue;
    out.push_back(kDigits[v]);
  }
  if (out.empty()) out = "0";
  return "0x" + out;
}

bool TaskDecision::mask_less(const TaskDecision& other) const {
  const std::size_t n = std::max(y.size(), other.y.size());
  for (std::size_t i = n; i-- > 0;) {
    const bool a = i < y.size() && y[i];
    const bool b = i < other.y.size() && other.y[i];
    if (a != b) return b;
  }
  return false;
}

void check_decision(const TaskDecision& y, const std::size_t m_h,
                    const Mode mode) {
  if (y.size() != m_h) {
    throw std::invalid_argument("task decision length " +
                                std::to_string(y.size()) + " != m_h " +
                                std::to_string(m_h));
  }
  for (const auto v : y.y) {
    if (v > 1) throw std::invalid_argument("task decision entries must be 0/1");
  }
  if (mode == Mode::kPaper && y.count() > 1) {
    throw std::invalid_argument(
        "paper mode allows at most one offloading HUE");
  }
}

double TimeAllocation::total() const {
  return std::accumulate(tau.begin(), tau.end(), tau_u);
}

}  // namespace ntnopt
