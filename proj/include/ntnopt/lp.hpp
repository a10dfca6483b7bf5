#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace ntnopt {

// maximize    objective . x
// subject to  rows[r] . x <= rhs[r]
//             lower[j] <= x[j] <= upper[j]   (upper optional)
//
// An empty `lower` means all zeros; an empty `upper` means no upper bounds.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<std::optional<double>> upper;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  double objective = 0.0;
  // One multiplier per inequality row, >= 0.
  std::vector<double> duals;
  // Multipliers of the finite upper bounds, >= 0 (zero where unbounded).
  std::vector<double> bound_duals;
  int pivots = 0;
};

// Feasibility tolerance (absolute) used for phase-one and reported results.
inline constexpr double kLpFeasibilityTol = 1e-9;

// Dense two-phase primal simplex on the bounded-variable form, Bland's rule
// for both the entering and the leaving variable (lowest index wins), so
// results are reproducible and cycling cannot occur. Throws
// std::invalid_argument on inconsistent dimensions; infeasibility and
// unboundedness are reported through `status`.
LpSolution solve_lp(const LinearProgram& lp);

// Value of the LP dual at (duals, bound_duals):
//   rhs.y + upper.w + lower.(c - A^T y - w)
// With an optimal pair this equals the primal objective.
double dual_objective(const LinearProgram& lp, const LpSolution& sol);

}  // namespace ntnopt
