#pragma once

#include <string_view>

#include "ntnopt/decision.hpp"
#include "ntnopt/physics.hpp"

namespace ntnopt {

enum class Scheme { kBenders, kOracle, kRandom };

std::string_view to_string(Scheme scheme);

struct Solution {
  TaskDecision y;
  TimeAllocation alloc;
  double objective_bps = 0.0;
  RateBreakdown breakdown;
  Scheme scheme = Scheme::kBenders;
};

// Fills objective and breakdown from the instance.
Solution make_solution(const Instance& instance, TaskDecision y,
                       TimeAllocation alloc, Scheme scheme);

// Throws std::invalid_argument if the allocation violates the frame budget
// (tolerance `tol`), the backhaul floor or nonnegativity.
void check_allocation(const Instance& instance, const TimeAllocation& alloc,
                      double tol = 1e-9);

}  // namespace ntnopt
