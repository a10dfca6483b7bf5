#include "ntnopt/baselines.hpp"

#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntnopt/kernels.hpp"
#include "ntnopt/lp.hpp"
#include "ntnopt/rng.hpp"

namespace ntnopt {
namespace {

constexpr std::size_t kMaxRelaxedHues = 20;

std::size_t candidate_count(std::size_t m, Mode mode) {
  if (mode == Mode::kPaper) return m + 1;
  if (m > kMaxRelaxedHues) {
    throw std::invalid_argument("relaxed enumeration supports at most 20 HUEs");
  }
  return std::size_t{1} << m;
}

// Candidates in ascending bitmask order.
TaskDecision candidate(std::size_t m, Mode mode, std::size_t k) {
  if (mode == Mode::kPaper) {
    return k == 0 ? TaskDecision::zeros(m) : TaskDecision::unit(m, k - 1);
  }
  return TaskDecision::from_mask(m, k);
}

}  // namespace

std::pair<TimeAllocation, double> optimal_allocation(const Instance& inst,
                                                     const TaskDecision& y) {
  const std::size_t m = inst.num_hues();
  check_decision(y, m, Mode::kRelaxed);
  std::vector<std::size_t> offloaders;
  for (std::size_t i = 0; i < m; ++i) {
    if (y[i]) offloaders.push_back(i);
  }
  LinearProgram lp;
  lp.objective.push_back(inst.uav_rate_coeff_bps);
  for (const std::size_t i : offloaders) {
    lp.objective.push_back(inst.weighted_leo_coeff(i));
  }
  lp.lower.assign(lp.objective.size(), 0.0);
  lp.lower[0] = inst.tau_floor();
  lp.rows.emplace_back(lp.objective.size(), 1.0);
  lp.rhs.push_back(inst.frame());
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("optimal_allocation: LP not optimal");
  }
  TimeAllocation alloc;
  alloc.tau_u = sol.primal[0];
  alloc.tau.assign(m, 0.0);
  for (std::size_t k = 0; k < offloaders.size(); ++k) {
    alloc.tau[offloaders[k]] = sol.primal[k + 1];
  }
  const double value = objective_value(inst, y, alloc);
  return {std::move(alloc), value};
}

Solution brute_force_optimal(const Instance& inst, const Mode mode) {
  const std::size_t m = inst.num_hues();
  const std::size_t count = candidate_count(m, mode);
  std::vector<double> values(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t k = 0; k < count; ++k) {
    try {
      values[k] = optimal_allocation(inst, candidate(m, mode, k)).second;
    } catch (...) {
#pragma omp critical(ntnopt_oracle_failure)
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  const std::size_t best = kernels::argmax_parallel(values);
  TaskDecision y = candidate(m, mode, best);
  auto [alloc, value] = optimal_allocation(inst, y);
  return make_solution(inst, std::move(y), std::move(alloc), Scheme::kOracle);
}

Solution brute_force_optimal_serial(const Instance& inst, const Mode mode) {
  const std::size_t m = inst.num_hues();
  const std::size_t count = candidate_count(m, mode);
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = optimal_allocation(inst, candidate(m, mode, k)).second;
  }
  const std::size_t best = kernels::argmax_serial(values);
  TaskDecision y = candidate(m, mode, best);
  auto [alloc, value] = optimal_allocation(inst, y);
  return make_solution(inst, std::move(y), std::move(alloc), Scheme::kOracle);
}

Solution random_scheme(const Instance& inst, const Mode mode,
                       const std::uint64_t rng_seed) {
  const std::size_t m = inst.num_hues();
  Rng rng(rng_seed);
  TaskDecision y = TaskDecision::zeros(m);
  if (mode == Mode::kPaper) {
    const std::uint64_t k = rng.below(m + 1);
    if (k > 0) y.y[k - 1] = 1;
  } else {
    for (auto& v : y.y) v = static_cast<std::uint8_t>(rng.below(2));
  }

  // Symmetric Dirichlet(1, ..., 1) over (tau_u - eps, tau_1, ..., tau_M).
  std::vector<double> draws(m + 1);
  double sum = 0.0;
  for (double& d : draws) {
    d = rng.exponential();
    sum += d;
  }
  const double span = inst.frame() - inst.tau_floor();
  TimeAllocation alloc;
  alloc.tau_u = inst.tau_floor() + span * draws[0] / sum;
  alloc.tau.resize(m);
  for (std::size_t i = 0; i < m; ++i) alloc.tau[i] = span * draws[i + 1] / sum;
  return make_solution(inst, std::move(y), std::move(alloc), Scheme::kRandom);
}

}  // namespace ntnopt
