#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the solver code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ntnopt/lp.hpp"
#include "ntnopt/physics.hpp"

namespace oracle {

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_square(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    }
    if (std::fabs(a[p][c]) < 1e-12) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Best objective over all basic feasible points of a bounded LP: every
// choice of n active constraints among rows and finite bounds.
inline std::optional<double> vertex_enumeration(const ntnopt::LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<std::vector<double>> g;
  std::vector<double> h;
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    g.push_back(lp.rows[r]);
    h.push_back(lp.rhs[r]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = -1.0;
    g.push_back(e);
    h.push_back(-lp.lower[j]);
    if (j < lp.upper.size() && lp.upper[j]) {
      e[j] = 1.0;
      g.push_back(e);
      h.push_back(*lp.upper[j]);
    }
  }
  const std::size_t k = g.size();
  std::optional<double> best;
  std::vector<std::size_t> pick(n);
  // Iterate over n-subsets of k constraints in lexicographic order.
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t i : pick) {
      a.push_back(g[i]);
      b.push_back(h[i]);
    }
    if (auto x = solve_square(a, b)) {
      bool feasible = true;
      for (std::size_t r = 0; r < k && feasible; ++r) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) lhs += g[r][j] * (*x)[j];
        feasible = lhs <= h[r] + 1e-9 * std::max(1.0, std::fabs(h[r]));
      }
      if (feasible) {
        double obj = 0.0;
        for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * (*x)[j];
        if (!best || obj > *best) best = obj;
      }
    }
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == k - n + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t t = i; t < n; ++t) pick[t] = pick[t - 1] + 1;
  }
  return best;
}

// Optimum of the time-allocation LP for a fixed decision: tau_u keeps its
// floor, the remaining frame goes to the best-paying link.
inline double closed_form_value(const ntnopt::Instance& inst,
                                const std::vector<std::uint8_t>& y) {
  const double t = inst.params.frame_duration_s;
  const double eps = inst.params.epsilon_tau_s;
  double local = 0.0;
  double best = inst.uav_rate_coeff_bps;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double z = inst.weights[i];
    if (y[i]) {
      best = std::max(best, z * inst.leo_rate_coeff_bps[i]);
    } else {
      local += z * inst.local_rate_bps[i];
    }
  }
  return local + inst.uav_rate_coeff_bps * eps + (t - eps) * best;
}

inline std::vector<std::uint8_t> bits(std::size_t m, std::uint64_t mask) {
  std::vector<std::uint8_t> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = (mask >> i) & 1u;
  return y;
}

// Best decision by exhaustive enumeration with the closed-form inner value.
// paper_mode restricts to at most one offloader.
inline double enumerate_optimum(const ntnopt::Instance& inst, bool paper_mode) {
  const std::size_t m = inst.weights.size();
  double best = -std::numeric_limits<double>::infinity();
  if (paper_mode) {
    best = closed_form_value(inst, std::vector<std::uint8_t>(m, 0));
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<std::uint8_t> y(m, 0);
      y[k] = 1;
      best = std::max(best, closed_form_value(inst, y));
    }
    return best;
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    best = std::max(best, closed_form_value(inst, bits(m, mask)));
  }
  return best;
}

// Objective written out term by term from the instance fields.
inline double spreadsheet_objective(const ntnopt::Instance& inst,
                                    const std::vector<std::uint8_t>& y,
                                    double tau_u,
                                    const std::vector<double>& tau) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const long double z = inst.weights[i];
    sum += y[i] ? z * inst.leo_rate_coeff_bps[i] * tau[i]
                : z * inst.local_rate_bps[i];
  }
  sum += static_cast<long double>(inst.uav_rate_coeff_bps) * tau_u;
  return static_cast<double>(sum);
}

}  // namespace oracle
