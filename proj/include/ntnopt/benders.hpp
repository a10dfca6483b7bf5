#pragma once

// Benders decomposition of the joint offloading / time-allocation MILP.
//
// For a fixed decision y the time allocation is an LP. Writing the offload
// revenue through linking rows tau_i <= M * y_i (M = T - eps_tau, the largest
// share any HUE can receive) makes the LP value a concave function of y whose
// supergradient comes from the row duals:
//
//   v(y) <= v(y*) + sum_i kappa_i (y_i - y*_i),
//   kappa_i = -z_i R_i^local + M * pi_i,
//
// with pi_i the dual of HUE i's linking row at y*. Each such optimality cut is
// valid at every binary y and tight at y*, so the master (enumeration over
// the allowed decisions of min-of-cuts) yields an upper bound and each
// subproblem a feasible lower bound.
//
// Bound labels follow the usual maximization convention: lb is the best
// feasible objective seen, ub the latest master optimum.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntnopt/decision.hpp"
#include "ntnopt/kernels.hpp"
#include "ntnopt/physics.hpp"
#include "ntnopt/solution.hpp"

namespace ntnopt {

// How the time allocation of each subproblem is computed.
enum class TimeSolver { kDirectLp, kPrimalDecomposition };

struct SolverOptions {
  double epsilon = 1e-4;
  int max_iter = 50;
  Mode mode = Mode::kPaper;
  double psi_down = -25.0;
  // Empty means all-local.
  std::optional<TaskDecision> initial_y;
  TimeSolver time_solver = TimeSolver::kDirectLp;
  // Use the OpenMP master kernels; the serial reference otherwise.
  bool parallel_master = true;
};

void validate(const SolverOptions& options, std::size_t m_h);

struct BendersCut {
  std::vector<double> kappa;
  TaskDecision y_star;
  double value = 0.0;

  // value + sum_i kappa_i (y_i - y*_i), summing differing coordinates only.
  double evaluate(const TaskDecision& y) const;
};

struct SubproblemResult {
  TimeAllocation alloc;
  // objective_value at alloc.
  double value = 0.0;
  // Cut value at the generator: the dual bound of the subproblem. Equals
  // `value` (to rounding) whenever the allocation is optimal.
  double cut_anchor = 0.0;
  std::vector<double> kappa;
  // Budget-row dual and per-HUE linking-row duals.
  double budget_dual = 0.0;
  std::vector<double> link_duals;
};

struct TraceRow {
  int iteration = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  TaskDecision chosen_y;
  double gap() const { return upper_bound - lower_bound; }
};

struct BendersState {
  std::vector<BendersCut> cuts;
  double lb = 0.0;
  double ub = 0.0;
  double psi_down = 0.0;
  int iteration = 0;
  TaskDecision incumbent_y;
  TimeAllocation incumbent_alloc;
  double incumbent_value = 0.0;
  std::vector<TraceRow> trace;
  bool converged = false;

  double gap() const { return ub - lb; }
};

struct BendersResult {
  Solution solution;
  BendersState state;
};

// Raised when max_iter is reached with ub - lb > epsilon. Carries the best
// incumbent and the full state (including the final gap).
class MaxIterationsExceeded : public std::runtime_error {
 public:
  explicit MaxIterationsExceeded(BendersResult result);
  const BendersResult& result() const { return result_; }
  double gap() const { return result_.state.gap(); }

 private:
  BendersResult result_;
};

// Largest time share a single HUE can hold: T - eps_tau.
double link_capacity(const Instance& instance);

// Time allocation for fixed y via the LP engine, plus the cut slopes kappa.
SubproblemResult solve_subproblem(const Instance& instance,
                                  const TaskDecision& y_star);

// Same, computing the allocation with primal decomposition and the cut
// slopes from its two subproblem duals.
SubproblemResult solve_subproblem_primal_decomposition(
    const Instance& instance, const TaskDecision& y_star);

// Returns the decision maximizing min-of-cuts (floored at psi_down) and that
// Psi. Paper mode enumerates {0, e_1, ..., e_M}; relaxed mode all 2^M subsets
// and rejects M > 20. Throws on an empty cut pool.
std::pair<TaskDecision, double> solve_master(const std::vector<BendersCut>& cuts,
                                             const SolverOptions& options,
                                             std::size_t m_h);

// Runs the decomposition to ub - lb <= epsilon. Throws MaxIterationsExceeded
// otherwise.
BendersResult benders_solve(const Instance& instance,
                            const SolverOptions& options);

}  // namespace ntnopt
