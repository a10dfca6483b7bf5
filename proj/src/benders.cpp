#include "ntnopt/benders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ntnopt/lp.hpp"
#include "ntnopt/primal_decomp.hpp"

namespace ntnopt {
namespace {

constexpr std::size_t kMaxRelaxedHues = 20;

double local_part(const Instance& inst, const TaskDecision& y) {
  double v = 0.0;
  for (std::size_t i = 0; i < inst.num_hues(); ++i) {
    if (!y[i]) v += inst.weights[i] * inst.local_rate_bps[i];
  }
  return v;
}

std::vector<double> kappa_from_duals(const Instance& inst,
                                     const std::vector<double>& link_duals) {
  const double cap = link_capacity(inst);
  std::vector<double> kappa(inst.num_hues());
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    kappa[i] = -inst.weights[i] * inst.local_rate_bps[i] + cap * link_duals[i];
  }
  return kappa;
}

std::pair<TaskDecision, double> pick_from_table(const kernels::CutTable& table,
                                                const SolverOptions& options) {
  const std::size_t m = table.num_hues();
  TaskDecision y = TaskDecision::zeros(m);
  double psi = 0.0;
  if (options.mode == Mode::kPaper) {
    const kernels::MasterPick pick = options.parallel_master
                                         ? kernels::best_single_parallel(table)
                                         : kernels::best_single_serial(table);
    if (pick.index >= 0) y.y[static_cast<std::size_t>(pick.index)] = 1;
    psi = pick.psi;
  } else {
    if (m > kMaxRelaxedHues) {
      throw std::invalid_argument("relaxed master supports at most 20 HUEs");
    }
    const kernels::MasterPick pick = options.parallel_master
                                         ? kernels::best_subset_parallel(table)
                                         : kernels::best_subset_serial(table);
    y = TaskDecision::from_mask(m, pick.mask);
    psi = pick.psi;
  }
  return {std::move(y), std::max(options.psi_down, psi)};
}

void add_cut(kernels::CutTable& table, const BendersCut& cut) {
  table.add(cut.value, cut.kappa, cut.y_star.y);
}

}  // namespace

void validate(const SolverOptions& o, const std::size_t m_h) {
  if (!(o.epsilon > 0.0)) throw std::invalid_argument("epsilon: must be > 0");
  if (o.max_iter < 1) throw std::invalid_argument("max_iter: must be >= 1");
  if (!std::isfinite(o.psi_down)) {
    throw std::invalid_argument("psi_down: must be finite");
  }
  if (o.mode == Mode::kRelaxed && m_h > kMaxRelaxedHues) {
    throw std::invalid_argument("relaxed mode supports at most 20 HUEs");
  }
  if (o.initial_y) check_decision(*o.initial_y, m_h, o.mode);
}

double BendersCut::evaluate(const TaskDecision& y) const {
  if (y.size() != kappa.size()) {
    throw std::invalid_argument("BendersCut::evaluate: length mismatch");
  }
  double v = value;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (y[i] != y_star[i]) v += y[i] ? kappa[i] : -kappa[i];
  }
  return v;
}

MaxIterationsExceeded::MaxIterationsExceeded(BendersResult result)
    : std::runtime_error("benders: iteration limit reached with gap " +
                         std::to_string(result.state.gap())),
      result_(std::move(result)) {}

double link_capacity(const Instance& inst) {
  return inst.frame() - inst.tau_floor();
}

SubproblemResult solve_subproblem(const Instance& inst,
                                  const TaskDecision& y_star) {
  const std::size_t m = inst.num_hues();
  check_decision(y_star, m, Mode::kRelaxed);
  const double cap = link_capacity(inst);

  // Columns: tau_u, tau_1..tau_M. Row 0 is the frame budget, row 1+i links
  // tau_i to y_i.
  LinearProgram lp;
  lp.objective.resize(m + 1);
  lp.objective[0] = inst.uav_rate_coeff_bps;
  for (std::size_t i = 0; i < m; ++i) {
    lp.objective[i + 1] = inst.weighted_leo_coeff(i);
  }
  lp.lower.assign(m + 1, 0.0);
  lp.lower[0] = inst.tau_floor();
  lp.rows.assign(m + 1, std::vector<double>(m + 1, 0.0));
  lp.rhs.resize(m + 1);
  std::fill(lp.rows[0].begin(), lp.rows[0].end(), 1.0);
  lp.rhs[0] = inst.frame();
  for (std::size_t i = 0; i < m; ++i) {
    lp.rows[i + 1][i + 1] = 1.0;
    lp.rhs[i + 1] = y_star[i] ? cap : 0.0;
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("solve_subproblem: time LP not optimal (" +
                           std::string(to_string(sol.status)) + ")");
  }

  SubproblemResult out;
  out.alloc.tau_u = sol.primal[0];
  out.alloc.tau.assign(sol.primal.begin() + 1, sol.primal.end());
  out.value = objective_value(inst, y_star, out.alloc);
  out.cut_anchor = out.value;
  out.budget_dual = sol.duals[0];
  out.link_duals.assign(sol.duals.begin() + 1, sol.duals.end());
  out.kappa = kappa_from_duals(inst, out.link_duals);
  return out;
}

SubproblemResult solve_subproblem_primal_decomposition(
    const Instance& inst, const TaskDecision& y_star) {
  const std::size_t m = inst.num_hues();
  check_decision(y_star, m, Mode::kRelaxed);

  PrimalDecompResult pd;
  try {
    pd = primal_decomposition(inst, y_star);
  } catch (const PrimalDecompMaxIterations& e) {
    pd = e.best();
  }

  // The coupled budget row's multiplier is the larger of the two split-row
  // multipliers; the linking-row multipliers follow from dual feasibility.
  SubproblemResult out;
  out.alloc = pd.alloc;
  out.value = objective_value(inst, y_star, out.alloc);
  out.budget_dual = std::max(pd.lambda1, pd.lambda2);
  out.link_duals.resize(m);
  const double cap = link_capacity(inst);
  double linked = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    out.link_duals[i] =
        std::max(0.0, inst.weighted_leo_coeff(i) - out.budget_dual);
    if (y_star[i]) linked += cap * out.link_duals[i];
  }
  out.cut_anchor = local_part(inst, y_star) +
                   inst.uav_rate_coeff_bps * inst.tau_floor() +
                   cap * out.budget_dual + linked;
  out.kappa = kappa_from_duals(inst, out.link_duals);
  return out;
}

std::pair<TaskDecision, double> solve_master(const std::vector<BendersCut>& cuts,
                                             const SolverOptions& options,
                                             const std::size_t m_h) {
  if (cuts.empty()) throw std::invalid_argument("solve_master: no cuts");
  kernels::CutTable table(m_h);
  for (const BendersCut& cut : cuts) add_cut(table, cut);
  return pick_from_table(table, options);
}

BendersResult benders_solve(const Instance& inst, const SolverOptions& options) {
  const std::size_t m = inst.num_hues();
  validate(options, m);

  BendersResult result;
  BendersState& st = result.state;
  st.psi_down = options.psi_down;
  st.lb = -std::numeric_limits<double>::infinity();
  st.ub = std::numeric_limits<double>::infinity();

  kernels::CutTable table(m);
  TaskDecision y = options.initial_y.value_or(TaskDecision::zeros(m));

  for (int j = 1; j <= options.max_iter; ++j) {
    st.iteration = j;
    const SubproblemResult sub =
        options.time_solver == TimeSolver::kDirectLp
            ? solve_subproblem(inst, y)
            : solve_subproblem_primal_decomposition(inst, y);

    BendersCut cut{sub.kappa, y, sub.cut_anchor};
    add_cut(table, cut);
    st.cuts.push_back(std::move(cut));

    if (sub.value > st.lb) {
      st.lb = sub.value;
      st.incumbent_y = y;
      st.incumbent_alloc = sub.alloc;
      st.incumbent_value = sub.value;
    }

    auto [next_y, psi] = pick_from_table(table, options);
    st.ub = psi;
    st.trace.push_back(TraceRow{j, st.lb, st.ub, next_y});

    if (st.ub - st.lb <= options.epsilon) {
      st.converged = true;
      break;
    }
    y = std::move(next_y);
  }

  result.solution = make_solution(inst, st.incumbent_y, st.incumbent_alloc,
                                  Scheme::kBenders);
  if (!st.converged) throw MaxIterationsExceeded(std::move(result));
  return result;
}

}  // namespace ntnopt
