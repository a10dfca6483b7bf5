#include "ntnopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace ntnopt {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kRatioTieTol = 1e-12;

// Row-major dense tableau with the right-hand side stored in the last column.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * (cols_ + 1) + c];
  }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct SimplexState {
  Tableau tab;
  std::vector<std::size_t> basis;  // basic column of each row
  std::vector<double> reduced;     // cost_j - cost_B B^-1 a_j
  double value = 0.0;              // cost_B B^-1 b
  int pivots = 0;
};

void pivot(SimplexState& s, std::size_t pr, std::size_t pc) {
  Tableau& t = s.tab;
  const std::size_t width = t.cols() + 1;
  const double inv = 1.0 / t.at(pr, pc);
  for (std::size_t c = 0; c < width; ++c) t.at(pr, c) *= inv;
  t.at(pr, pc) = 1.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (r == pr) continue;
    const double f = t.at(r, pc);
    if (f == 0.0) continue;
    for (std::size_t c = 0; c < width; ++c) t.at(r, c) -= f * t.at(pr, c);
    t.at(r, pc) = 0.0;
  }
  const double f = s.reduced[pc];
  if (f != 0.0) {
    for (std::size_t c = 0; c < t.cols(); ++c) s.reduced[c] -= f * t.at(pr, c);
    s.value += f * t.rhs(pr);
    s.reduced[pc] = 0.0;
  }
  s.basis[pr] = pc;
  ++s.pivots;
}

void price(SimplexState& s, const std::vector<double>& cost) {
  const Tableau& t = s.tab;
  s.reduced = cost;
  s.value = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const double cb = cost[s.basis[r]];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c < t.cols(); ++c) s.reduced[c] -= cb * t.at(r, c);
    s.value += cb * t.rhs(r);
  }
}

enum class Outcome { kOptimal, kUnbounded };

// Primal simplex with Bland's rule over columns [0, allowed).
Outcome iterate(SimplexState& s, std::size_t allowed, double dual_tol) {
  const Tableau& t = s.tab;
  const std::size_t max_pivots = 50 * (t.rows() + t.cols()) + 1000;
  for (;;) {
    std::size_t enter = allowed;
    for (std::size_t c = 0; c < allowed; ++c) {
      if (s.reduced[c] > dual_tol) {
        enter = c;
        break;
      }
    }
    if (enter == allowed) return Outcome::kOptimal;

    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= kPivotTol) continue;
      const double ratio = std::max(0.0, t.rhs(r)) / a;
      if (leave == t.rows()) {
        leave = r;
        best = ratio;
        continue;
      }
      const double tie = kRatioTieTol * std::max(1.0, best);
      if (ratio < best - tie) {
        leave = r;
        best = ratio;
      } else if (ratio <= best + tie) {
        if (s.basis[r] < s.basis[leave]) leave = r;
        best = std::min(best, ratio);
      }
    }
    if (leave == t.rows()) return Outcome::kUnbounded;
    pivot(s, leave, enter);
    if (static_cast<std::size_t>(s.pivots) > max_pivots) {
      throw std::runtime_error("solve_lp: pivot limit exceeded");
    }
  }
}

void check_dimensions(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (lp.rhs.size() != lp.rows.size()) {
    throw std::invalid_argument("solve_lp: rhs length != number of rows");
  }
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    if (lp.rows[r].size() != n) {
      throw std::invalid_argument("solve_lp: row " + std::to_string(r) +
                                  " length != number of variables");
    }
  }
  if (!lp.lower.empty() && lp.lower.size() != n) {
    throw std::invalid_argument("solve_lp: lower bound length mismatch");
  }
  if (!lp.upper.empty() && lp.upper.size() != n) {
    throw std::invalid_argument("solve_lp: upper bound length mismatch");
  }
}

}  // namespace

std::string_view to_string(const LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LpSolution solve_lp(const LinearProgram& lp) {
  check_dimensions(lp);
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();

  std::vector<double> lower = lp.lower.empty() ? std::vector<double>(n, 0.0)
                                               : lp.lower;
  LpSolution out;
  out.duals.assign(m, 0.0);
  out.bound_duals.assign(n, 0.0);

  // Substitute x = lower + x'; finite upper bounds become extra rows.
  std::vector<std::size_t> bounded;
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.upper.empty() && lp.upper[j].has_value()) {
      if (*lp.upper[j] < lower[j]) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      bounded.push_back(j);
    }
  }
  const std::size_t rows = m + bounded.size();
  std::vector<double> b(rows);
  for (std::size_t r = 0; r < m; ++r) {
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) shift += lp.rows[r][j] * lower[j];
    b[r] = lp.rhs[r] - shift;
  }
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    b[m + k] = *lp.upper[bounded[k]] - lower[bounded[k]];
  }

  std::size_t num_art = 0;
  for (const double v : b) num_art += v < 0.0 ? 1 : 0;
  const std::size_t slack0 = n;
  const std::size_t art0 = n + rows;
  const std::size_t cols = art0 + num_art;

  SimplexState s{Tableau(rows, cols), std::vector<std::size_t>(rows), {}, 0.0, 0};
  std::size_t next_art = art0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    if (r < m) {
      for (std::size_t j = 0; j < n; ++j) s.tab.at(r, j) = sign * lp.rows[r][j];
    } else {
      s.tab.at(r, bounded[r - m]) = sign;
    }
    s.tab.at(r, slack0 + r) = sign;
    s.tab.rhs(r) = sign * b[r];
    if (sign < 0.0) {
      s.tab.at(r, next_art) = 1.0;
      s.basis[r] = next_art++;
    } else {
      s.basis[r] = slack0 + r;
    }
  }

  double bmax = 1.0;
  for (const double v : b) bmax = std::max(bmax, std::abs(v));
  double cmax = 1.0;
  for (const double v : lp.objective) cmax = std::max(cmax, std::abs(v));

  if (num_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = art0; c < cols; ++c) phase1[c] = -1.0;
    price(s, phase1);
    iterate(s, cols, 1e-12);
    if (s.value < -kLpFeasibilityTol * bmax) {
      out.status = LpStatus::kInfeasible;
      out.pivots = s.pivots;
      return out;
    }
    // Drive remaining (zero-valued) artificials out of the basis. Rows where
    // that is impossible are redundant and keep their artificial at zero.
    for (std::size_t r = 0; r < rows; ++r) {
      if (s.basis[r] < art0) continue;
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::abs(s.tab.at(r, c)) > 1e-9) {
          pivot(s, r, c);
          break;
        }
      }
    }
  }

  std::vector<double> cost(cols, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
  price(s, cost);
  const Outcome outcome = iterate(s, art0, 1e-10 * cmax);
  out.pivots = s.pivots;
  if (outcome == Outcome::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  out.status = LpStatus::kOptimal;
  out.primal = lower;
  for (std::size_t r = 0; r < rows; ++r) {
    if (s.basis[r] < n) out.primal[s.basis[r]] += std::max(0.0, s.tab.rhs(r));
  }
  // Row multiplier = minus the reduced cost of the row's slack.
  for (std::size_t r = 0; r < m; ++r) {
    out.duals[r] = std::max(0.0, -s.reduced[slack0 + r]);
  }
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    out.bound_duals[bounded[k]] = std::max(0.0, -s.reduced[slack0 + m + k]);
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.objective += lp.objective[j] * out.primal[j];
  }
  return out;
}

double dual_objective(const LinearProgram& lp, const LpSolution& sol) {
  const std::size_t n = lp.num_vars();
  double value = 0.0;
  for (std::size_t r = 0; r < lp.num_rows(); ++r) value += lp.rhs[r] * sol.duals[r];
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    double reduced = lp.objective[j] - sol.bound_duals[j];
    for (std::size_t r = 0; r < lp.num_rows(); ++r) {
      reduced -= lp.rows[r][j] * sol.duals[r];
    }
    if (!lp.upper.empty() && lp.upper[j].has_value()) {
      value += *lp.upper[j] * sol.bound_duals[j];
    }
    value += lo * reduced;
  }
  return value;
}

}  // namespace ntnopt
