#include "ntnopt/primal_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "ntnopt/lp.hpp"

namespace ntnopt {
namespace {

void check_theta(const Instance& inst, double theta) {
  if (!(theta >= inst.tau_floor() && theta <= inst.frame())) {
    throw std::invalid_argument("theta must lie in [epsilon_tau_s, frame]");
  }
}

}  // namespace

Sub1Result solve_sub1(const Instance& inst, const TaskDecision& y,
                      const double theta) {
  check_theta(inst, theta);
  const std::size_t m = inst.num_hues();
  check_decision(y, m, Mode::kRelaxed);

  Sub1Result out;
  out.tau.assign(m, 0.0);
  std::vector<std::size_t> offloaders;
  for (std::size_t i = 0; i < m; ++i) {
    if (y[i]) {
      offloaders.push_back(i);
    } else {
      out.value += inst.weights[i] * inst.local_rate_bps[i];
    }
  }
  if (offloaders.empty()) return out;

  LinearProgram lp;
  for (const std::size_t i : offloaders) {
    lp.objective.push_back(inst.weighted_leo_coeff(i));
  }
  lp.rows.emplace_back(offloaders.size(), 1.0);
  lp.rhs.push_back(inst.frame() - theta);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("solve_sub1: HUE-side LP not optimal");
  }
  for (std::size_t k = 0; k < offloaders.size(); ++k) {
    out.tau[offloaders[k]] = sol.primal[k];
  }
  out.lambda1 = sol.duals[0];
  out.value += sol.objective;
  return out;
}

Sub2Result solve_sub2(const Instance& inst, const double theta) {
  check_theta(inst, theta);
  Sub2Result out;
  if (inst.uav_rate_coeff_bps == 0.0) {
    out.tau_u = theta;
    return out;
  }
  LinearProgram lp;
  lp.objective = {inst.uav_rate_coeff_bps};
  lp.rows = {{1.0}};
  lp.rhs = {theta};
  lp.lower = {inst.tau_floor()};
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("solve_sub2: backhaul LP not optimal");
  }
  out.tau_u = sol.primal[0];
  out.lambda2 = sol.duals[0];
  out.value = sol.objective;
  return out;
}

double update_theta(const PrimalDecompState& s) {
  const double next = s.theta + s.step * (s.lambda2 - s.lambda1);
  return std::clamp(next, s.theta_min, s.theta_max);
}

double StepSchedule::at(const int iteration, const double default_zeta0) const {
  const double z0 = zeta0 > 0.0 ? zeta0 : default_zeta0;
  if (kind == Kind::kConstant) return z0;
  return z0 / std::sqrt(static_cast<double>(std::max(iteration, 1)));
}

PrimalDecompMaxIterations::PrimalDecompMaxIterations(PrimalDecompResult best)
    : std::runtime_error("primal decomposition: iteration limit reached"),
      best_(std::move(best)) {}

PrimalDecompResult primal_decomposition(const Instance& inst,
                                        const TaskDecision& y,
                                        const PrimalDecompOptions& options) {
  check_decision(y, inst.num_hues(), Mode::kRelaxed);
  if (options.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  PrimalDecompState state;
  state.theta_min = inst.tau_floor();
  state.theta_max = inst.frame();
  state.theta = options.theta0.value_or(0.5 * inst.frame());
  check_theta(inst, state.theta);

  // Scaled by the first subgradient so the opening step can cross the whole
  // interval whatever the size of the coefficient gap.
  double default_zeta0 = 0.0;

  PrimalDecompResult best;
  best.value = -std::numeric_limits<double>::infinity();
  double previous = std::numeric_limits<double>::quiet_NaN();

  for (int t = 1; t <= options.max_iter; ++t) {
    Sub1Result s1;
    Sub2Result s2;
    std::exception_ptr failure;
#pragma omp parallel sections num_threads(2) if (options.parallel)
    {
#pragma omp section
      {
        try {
          s1 = solve_sub1(inst, y, state.theta);
        } catch (...) {
#pragma omp critical(ntnopt_pd_failure)
          failure = std::current_exception();
        }
      }
#pragma omp section
      {
        try {
          s2 = solve_sub2(inst, state.theta);
        } catch (...) {
#pragma omp critical(ntnopt_pd_failure)
          failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);

    state.iteration = t;
    state.lambda1 = s1.lambda1;
    state.lambda2 = s2.lambda2;
    state.value = s1.value + s2.value;

    if (options.record_trace) {
      best.trace.push_back(
          {t, state.theta, state.lambda1, state.lambda2, state.value});
    }
    if (state.value > best.value) {
      best.alloc = TimeAllocation{s2.tau_u, s1.tau};
      best.lambda1 = s1.lambda1;
      best.lambda2 = s2.lambda2;
      best.theta = state.theta;
      best.value = state.value;
    }
    best.iterations = t;

    const double slope = state.lambda2 - state.lambda1;
    const double tol = options.tol.value_or(1e-6 * std::abs(state.value));
    const bool flat = slope == 0.0;
    const bool pinned = (state.theta >= state.theta_max && slope > 0.0) ||
                        (state.theta <= state.theta_min && slope < 0.0);
    const bool settled = t > 1 && std::abs(state.value - previous) <= tol;
    if (flat || pinned || settled) {
      best.converged = true;
      return best;
    }
    previous = state.value;
    if (default_zeta0 == 0.0) default_zeta0 = inst.frame() / std::abs(slope);
    state.step = options.schedule.at(t, default_zeta0);
    state.theta = update_theta(state);
  }
  throw PrimalDecompMaxIterations(std::move(best));
}

}  // namespace ntnopt
