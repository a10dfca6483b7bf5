#pragma once

#include <cstdint>
#include <utility>

#include "ntnopt/decision.hpp"
#include "ntnopt/physics.hpp"
#include "ntnopt/solution.hpp"

namespace ntnopt {

// Optimal frame split for a fixed decision: an LP over tau_u and the
// offloading HUEs' shares only (non-offloaders receive no time).
std::pair<TimeAllocation, double> optimal_allocation(const Instance& instance,
                                                     const TaskDecision& y);

// Exhaustive optimum over every decision the mode allows, one LP per
// decision. Ties go to the lowest bitmask. Relaxed mode rejects M > 20.
Solution brute_force_optimal(const Instance& instance, Mode mode);

// Serial reference of the above; same result, no OpenMP.
Solution brute_force_optimal_serial(const Instance& instance, Mode mode);

// Decision uniform over the mode's feasible set; time uniform over the
// simplex {tau_u >= eps_tau, tau_i >= 0, tau_u + sum tau_i = T}.
Solution random_scheme(const Instance& instance, Mode mode,
                       std::uint64_t rng_seed);

}  // namespace ntnopt
