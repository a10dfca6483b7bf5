#include <cmath>

#include "doctest.h"
#include "ntnopt/lp.hpp"
#include "ntnopt/rng.hpp"
#include "oracles.hpp"

using namespace ntnopt;
using oracle::rel_diff;

namespace {

// Bounded, feasible LP: x = lower satisfies every row with slack, and a
// positive capacity row keeps the region bounded.
LinearProgram random_lp(Rng& rng, std::size_t n, std::size_t m) {
  LinearProgram lp;
  lp.objective.resize(n);
  for (double& c : lp.objective) c = rng.uniform(-1.0, 3.0);
  lp.lower.resize(n);
  lp.upper.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    lp.lower[j] = rng.below(3) == 0 ? rng.uniform(-1.0, 0.0) : 0.0;
    if (rng.below(2) == 0) lp.upper[j] = lp.lower[j] + rng.uniform(0.5, 4.0);
  }
  for (std::size_t r = 0; r + 1 < m; ++r) {
    std::vector<double> row(n);
    double at_lower = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = rng.below(4) == 0 ? 0.0 : rng.uniform(-1.0, 2.0);
      at_lower += row[j] * lp.lower[j];
    }
    lp.rows.push_back(row);
    lp.rhs.push_back(at_lower + rng.uniform(0.0, 5.0));
  }
  std::vector<double> cap(n);
  double at_lower = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cap[j] = rng.uniform(0.2, 1.5);
    at_lower += cap[j] * lp.lower[j];
  }
  lp.rows.push_back(cap);
  lp.rhs.push_back(at_lower + rng.uniform(1.0, 10.0));
  return lp;
}

void check_invariants(const LinearProgram& lp, const LpSolution& s) {
  REQUIRE(s.status == LpStatus::kOptimal);
  const std::size_t n = lp.num_vars();
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(s.primal[j] >= lp.lower[j] - 1e-9);
    if (lp.upper[j]) CHECK(s.primal[j] <= *lp.upper[j] + 1e-9);
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * s.primal[j];
  CHECK(std::fabs(obj - s.objective) <= 1e-9 * std::max(1.0, std::fabs(obj)));
  REQUIRE(s.duals.size() == lp.num_rows());
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += lp.rows[r][j] * s.primal[j];
    CHECK(lhs <= lp.rhs[r] + 1e-9);
    CHECK(s.duals[r] >= 0.0);
    // Complementary slackness.
    CHECK(s.duals[r] * (lp.rhs[r] - lhs) <= 1e-8 * std::max(1.0, std::fabs(s.objective)));
  }
  const double dual = dual_objective(lp, s);
  CHECK(std::fabs(dual - s.objective) <= 1e-8 * std::max(1.0, std::fabs(s.objective)));
}

}  // namespace

TEST_CASE("single constraint") {
  LinearProgram lp{{1.0}, {{1.0}}, {5.0}, {0.0}, {std::nullopt}};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.primal[0] == doctest::Approx(5.0));
  CHECK(s.objective == doctest::Approx(5.0));
  CHECK(s.duals[0] == doctest::Approx(1.0));
  check_invariants(lp, s);
}

TEST_CASE("vertex chosen by largest coefficient") {
  LinearProgram lp{{2.0, 1.0}, {{1.0, 1.0}}, {1.0}, {0.0, 0.0}, {std::nullopt, std::nullopt}};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.primal[0] == doctest::Approx(1.0));
  CHECK(s.primal[1] == doctest::Approx(0.0));
  CHECK(s.objective == doctest::Approx(2.0));
  CHECK(s.duals[0] == doctest::Approx(2.0));
  check_invariants(lp, s);
}

TEST_CASE("infeasible and unbounded are reported by status") {
  LinearProgram infeasible{{1.0}, {{1.0}}, {-1.0}, {0.0}, {std::nullopt}};
  CHECK(solve_lp(infeasible).status == LpStatus::kInfeasible);
  LinearProgram crossed{{1.0}, {}, {}, {2.0}, {1.0}};
  CHECK(solve_lp(crossed).status == LpStatus::kInfeasible);
  LinearProgram unbounded{{1.0, 1.0}, {{1.0, -1.0}}, {1.0}, {0.0, 0.0}, {std::nullopt, std::nullopt}};
  CHECK(solve_lp(unbounded).status == LpStatus::kUnbounded);
}

TEST_CASE("malformed LP rejected") {
  LinearProgram bad{{1.0, 2.0}, {{1.0}}, {1.0}, {0.0, 0.0}, {std::nullopt, std::nullopt}};
  CHECK_THROWS_AS(solve_lp(bad), std::invalid_argument);
}

TEST_CASE("degenerate LP terminates") {
  // Classic cycling example under the largest-coefficient rule.
  LinearProgram lp;
  lp.objective = {10.0, -57.0, -9.0, -24.0};
  lp.rows = {{0.5, -5.5, -2.5, 9.0}, {0.5, -1.5, -0.5, 1.0}, {1.0, 0.0, 0.0, 0.0}};
  lp.rhs = {0.0, 0.0, 1.0};
  lp.lower.assign(4, 0.0);
  lp.upper.assign(4, std::nullopt);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(1.0));
  check_invariants(lp, s);
}

TEST_CASE("random LPs match vertex enumeration") {
  Rng rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const std::size_t m = 1 + rng.below(5);
    const LinearProgram lp = random_lp(rng, n, m);
    const LpSolution s = solve_lp(lp);
    const auto best = oracle::vertex_enumeration(lp);
    REQUIRE(best.has_value());
    CAPTURE(trial);
    check_invariants(lp, s);
    CHECK(std::fabs(s.objective - *best) <= 1e-9 * std::max(1.0, std::fabs(*best)));
  }
}

TEST_CASE("objective scaling scales objective and duals") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    LinearProgram lp = random_lp(rng, 4, 4);
    const LpSolution base = solve_lp(lp);
    const double k = rng.uniform(0.1, 50.0);
    for (double& c : lp.objective) c *= k;
    const LpSolution scaled = solve_lp(lp);
    REQUIRE(scaled.status == LpStatus::kOptimal);
    CHECK(std::fabs(scaled.objective - k * base.objective) <= 1e-9 * std::max(1.0, std::fabs(scaled.objective)));
    for (std::size_t j = 0; j < 4; ++j) CHECK(scaled.primal[j] == doctest::Approx(base.primal[j]).epsilon(1e-9));
    for (std::size_t r = 0; r < 4; ++r) {
      CHECK(std::fabs(scaled.duals[r] - k * base.duals[r]) <= 1e-9 * std::max(1.0, std::fabs(scaled.duals[r])));
    }
  }
}

TEST_CASE("time-allocation family matches closed form") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    LinearProgram lp;
    lp.objective.resize(n);
    for (double& c : lp.objective) c = rng.uniform(1e6, 2e8);
    lp.rows = {std::vector<double>(n, 1.0)};
    lp.rhs = {1.0};
    lp.lower.assign(n, 0.0);
    lp.lower[0] = 1e-6;
    lp.upper.assign(n, std::nullopt);
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::kOptimal);
    double best = lp.objective[0];
    for (double c : lp.objective) best = std::max(best, c);
    const double expect = lp.objective[0] * 1e-6 + (1.0 - 1e-6) * best;
    CHECK(rel_diff(s.objective, expect) < 1e-12);
    CHECK(rel_diff(s.duals[0], best) < 1e-12);
    check_invariants(lp, s);
  }
}

TEST_CASE("deterministic") {
  Rng a(9), b(9);
  for (int trial = 0; trial < 20; ++trial) {
    const LpSolution x = solve_lp(random_lp(a, 5, 4));
    const LpSolution y = solve_lp(random_lp(b, 5, 4));
    CHECK(x.primal == y.primal);
    CHECK(x.duals == y.duals);
    CHECK(x.pivots == y.pivots);
  }
}
