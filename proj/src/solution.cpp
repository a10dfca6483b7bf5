#include "ntnopt/solution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ntnopt {

std::string_view to_string(const Scheme scheme) {
  switch (scheme) {
    case Scheme::kBenders:
      return "benders";
    case Scheme::kOracle:
      return "oracle";
    case Scheme::kRandom:
      return "random";
  }
  return "unknown";
}

Solution make_solution(const Instance& inst, TaskDecision y,
                       TimeAllocation alloc, const Scheme scheme) {
  Solution s;
  s.breakdown = rate_breakdown(inst, y, alloc);
  s.objective_bps = s.breakdown.total();
  s.y = std::move(y);
  s.alloc = std::move(alloc);
  s.scheme = scheme;
  return s;
}

void check_allocation(const Instance& inst, const TimeAllocation& alloc,
                      const double tol) {
  if (alloc.tau.size() != inst.num_hues()) {
    throw std::invalid_argument("allocation length != m_h");
  }
  if (!(alloc.tau_u >= inst.tau_floor() - tol)) {
    throw std::invalid_argument("tau_u below epsilon_tau_s: " +
                                std::to_string(alloc.tau_u));
  }
  for (std::size_t i = 0; i < alloc.tau.size(); ++i) {
    if (!(alloc.tau[i] >= -tol)) {
      throw std::invalid_argument("tau[" + std::to_string(i) + "] negative");
    }
  }
  if (!(alloc.total() <= inst.frame() + tol)) {
    throw std::invalid_argument("time budget exceeded: " +
                                std::to_string(alloc.total()));
  }
}

}  // namespace ntnopt
