// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "ntnopt/baselines.hpp"
#include "ntnopt/benders.hpp"
#include "ntnopt/harness.hpp"
#include "ntnopt/lp.hpp"
#include "ntnopt/primal_decomp.hpp"
#include "ntnopt/rng.hpp"
#include "oracles.hpp"

using namespace ntnopt;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct SolvedCase {
  Instance inst;
  Mode mode;
  BendersResult result;
  bool converged = false;
};

std::vector<SolvedCase> solved;

bool trace_monotone(const BendersState& st) {
  for (std::size_t k = 1; k < st.trace.size(); ++k) {
    if (st.trace[k].lower_bound < st.trace[k - 1].lower_bound) return false;
    if (st.trace[k].upper_bound > st.trace[k - 1].upper_bound) return false;
  }
  return true;
}

BendersResult solve_capturing(const Instance& inst, const SolverOptions& o, bool& converged) {
  try {
    converged = true;
    return benders_solve(inst, o);
  } catch (const MaxIterationsExceeded& e) {
    converged = false;
    return e.result();
  }
}

void criterion1() {
  const double eps = 1e-4;
  int cases = 0, mismatches = 0;
  double worst = 0.0;
  auto run_set = [&](Mode mode, const std::vector<int>& sizes, int per_size, std::uint64_t salt) {
    const auto t0 = Clock::now();
    SolverOptions o;
    o.mode = mode;
    o.epsilon = eps;
    for (int m : sizes) {
      for (int k = 0; k < per_size; ++k) {
        const Instance inst = make_seeded_instance(SystemParams{}, m, 0, derive_seed({salt, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k)}));
        bool conv = false;
        BendersResult r = solve_capturing(inst, o, conv);
        const double opt = brute_force_optimal(inst, mode).objective_bps;
        const double err = std::fabs(r.solution.objective_bps - opt);
        const double allowed = std::max(eps, 1e-6 * std::fabs(opt));
        worst = std::max(worst, err / allowed);
        mismatches += err > allowed ? 1 : 0;
        ++cases;
        solved.push_back({inst, mode, std::move(r), conv});
      }
    }
    return seconds_since(t0);
  };
  std::vector<int> relaxed_sizes;
  for (int m = 2; m <= 12; ++m) relaxed_sizes.push_back(m);
  const double t_relaxed = run_set(Mode::kRelaxed, relaxed_sizes, 5, 11);
  const double t_paper = run_set(Mode::kPaper, {5, 10, 25, 50, 100}, 10, 12);
  const bool ok = mismatches == 0 && t_paper < 5.0 && t_relaxed < 60.0;
  report(1, "oracle equivalence", ok,
         fmt("%d instances (55 relaxed, 50 paper), %d mismatches, worst error/allowance %.3g, "
             "paper set %.2fs (<5s), relaxed set %.2fs (<60s)",
             cases, mismatches, worst, t_paper, t_relaxed));
}

void criterion2() {
  int bad = 0, max_iters = 0;
  for (const SolvedCase& c : solved) {
    const BendersState& st = c.result.state;
    max_iters = std::max(max_iters, st.iteration);
    if (!c.converged || st.gap() > 1e-4 || st.iteration > 50 || !trace_monotone(st)) ++bad;
  }
  ExperimentConfig ref;
  const Instance inst = make_seeded_instance(ref.params, 100, 0, instance_seed(ref.base_seed, 100, 0));
  bool conv = false;
  const BendersResult r = solve_capturing(inst, solver_options(ref), conv);
  const bool ok = bad == 0 && conv && r.state.iteration <= 15 && trace_monotone(r.state);
  report(2, "convergence shape", ok,
         fmt("%zu instances, %d violations, max %d iterations; reference M=100 paper instance: "
             "%d iterations (<=15), final gap %.3g bps",
             solved.size(), bad, max_iters, r.state.iteration, r.state.gap()));
}

void criterion3() {
  Rng rng(3003);
  int bad = 0, max_iter = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t m = 1 + rng.below(30);
    const Instance inst = make_seeded_instance(SystemParams{}, static_cast<int>(m), 0, rng.below(1u << 30));
    TaskDecision y = TaskDecision::zeros(m);
    for (std::size_t i = 0; i < m; ++i) y.y[i] = static_cast<std::uint8_t>(rng.below(2));
    const double direct = solve_subproblem(inst, y).value;
    PrimalDecompOptions o;
    o.max_iter = 500;
    try {
      const PrimalDecompResult pd = primal_decomposition(inst, y, o);
      const double rel = oracle::rel_diff(pd.value, direct);
      worst = std::max(worst, rel);
      max_iter = std::max(max_iter, pd.iterations);
      bad += rel > 1e-4 ? 1 : 0;
    } catch (const PrimalDecompMaxIterations&) {
      ++bad;
      max_iter = 500;
    }
  }
  report(3, "inner-loop equivalence", bad == 0,
         fmt("50 pairs, %d failures, worst relative error %.3g (<=1e-4), max %d iterations (<=500)",
             bad, worst, max_iter));
}

LinearProgram random_lp(Rng& rng) {
  const std::size_t n = 1 + rng.below(6);
  const std::size_t m = 1 + rng.below(6);
  LinearProgram lp;
  lp.objective.resize(n);
  for (double& c : lp.objective) c = rng.uniform(-2.0, 5.0);
  lp.lower.resize(n);
  lp.upper.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    lp.lower[j] = rng.below(3) == 0 ? rng.uniform(-2.0, 0.0) : 0.0;
    if (rng.below(2) == 0) lp.upper[j] = lp.lower[j] + rng.uniform(0.1, 6.0);
  }
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<double> row(n);
    double at_lower = 0.0;
    const bool capacity = r + 1 == m;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = capacity ? rng.uniform(0.1, 2.0) : (rng.below(4) == 0 ? 0.0 : rng.uniform(-2.0, 3.0));
      at_lower += row[j] * lp.lower[j];
    }
    lp.rows.push_back(row);
    lp.rhs.push_back(at_lower + rng.uniform(0.0, 8.0));
  }
  return lp;
}

void criterion4() {
  Rng rng(4004);
  int bad_gap = 0, bad_vertex = 0, not_optimal = 0;
  double worst_gap = 0.0, worst_vertex = 0.0;
  for (int k = 0; k < 200; ++k) {
    const LinearProgram lp = random_lp(rng);
    const LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::kOptimal) {
      ++not_optimal;
      continue;
    }
    const double scale = std::max(1.0, std::fabs(s.objective));
    const double gap = std::fabs(dual_objective(lp, s) - s.objective) / scale;
    const auto best = oracle::vertex_enumeration(lp);
    const double vdiff = best ? std::fabs(*best - s.objective) / scale : INFINITY;
    worst_gap = std::max(worst_gap, gap);
    worst_vertex = std::max(worst_vertex, vdiff);
    bad_gap += gap > 1e-8 ? 1 : 0;
    bad_vertex += vdiff > 1e-9 ? 1 : 0;
  }
  report(4, "LP engine", bad_gap + bad_vertex + not_optimal == 0,
         fmt("200 LPs (<=6 vars), %d non-optimal, worst duality gap %.3g (<=1e-8), "
             "worst vertex mismatch %.3g (<=1e-9)",
             not_optimal, worst_gap, worst_vertex));
}

ExperimentConfig sweep_config(const fs::path& dir) {
  ExperimentConfig c;
  c.hue_counts = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  c.bandwidths_hz = {10e6, 20e6};
  c.runs = 20;
  c.output_dir = dir;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path sweep_dir;
constexpr int kWorkers = 4;

void criterion5() {
  sweep_dir = fs::temp_directory_path() / "ntnopt_acceptance";
  fs::remove_all(sweep_dir);
  const ExperimentConfig c = sweep_config(sweep_dir / "a");
  const auto t0 = Clock::now();
  const SweepOutcome out = run_sweep(c, kWorkers);
  const double secs = seconds_since(t0);

  int dominance = 0, errors = 0;
  for (std::size_t k = 0; k < out.rows.size(); k += 3) {
    const SweepRow& b = out.rows[k];
    const SweepRow& o = out.rows[k + 1];
    const SweepRow& r = out.rows[k + 2];
    errors += (b.errors.empty() && o.errors.empty() && r.errors.empty()) ? 0 : 1;
    if (!(r.objective_bps <= b.objective_bps && b.objective_bps <= o.objective_bps + 1e-9)) ++dominance;
  }

  // Means: strictly increasing in m_h for each (bandwidth, scheme).
  int nonincreasing = 0;
  std::map<std::pair<double, int>, double> last;
  for (const SweepMean& m : out.means) {
    const auto key = std::make_pair(m.bandwidth_hz, static_cast<int>(m.scheme));
    if (auto it = last.find(key); it != last.end() && !(m.objective_bps > it->second)) ++nonincreasing;
    last[key] = m.objective_bps;
  }

  // Paired bandwidth rows: same (m_h, run, scheme), identical y.
  std::map<std::tuple<int, int, int>, const SweepRow*> at10;
  for (const SweepRow& r : out.rows) {
    if (r.bandwidth_hz == 10e6) at10[{r.m_h, r.run, static_cast<int>(r.scheme)}] = &r;
  }
  int pairs = 0, not_double = 0;
  for (const SweepRow& r : out.rows) {
    if (r.bandwidth_hz != 20e6) continue;
    const SweepRow* lo = at10.at({r.m_h, r.run, static_cast<int>(r.scheme)});
    if (!(lo->y == r.y) || lo->run_seed != r.run_seed) continue;
    ++pairs;
    if (r.offload_bps != 2.0 * lo->offload_bps || r.backhaul_bps != 2.0 * lo->backhaul_bps) ++not_double;
  }

  const bool ok = errors == 0 && dominance == 0 && nonincreasing == 0 && pairs > 0 &&
                  not_double == 0 && secs < 300.0;
  report(5, "dominance and monotonicity", ok,
         fmt("%zu rows, %d row errors, %d dominance violations, %d non-increasing mean steps, "
             "%d/%d paired rows not exactly doubled, %.1fs (<300s)",
             out.rows.size(), errors, dominance, nonincreasing, not_double, pairs, secs));
}

void criterion6() {
  Rng rng(6006);
  int cuts = 0, invalid = 0, loose = 0;
  SolverOptions o;
  o.mode = Mode::kRelaxed;
  for (int k = 0; k < 20; ++k) {
    const std::size_t m = 2 + rng.below(9);
    const Instance inst = make_seeded_instance(SystemParams{}, static_cast<int>(m), 0, rng.below(1u << 30));
    bool conv = false;
    const BendersResult r = solve_capturing(inst, o, conv);
    std::vector<double> values(std::size_t{1} << m);
    for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
      values[mask] = solve_subproblem(inst, TaskDecision::from_mask(m, mask)).value;
    }
    for (const BendersCut& cut : r.state.cuts) {
      ++cuts;
      std::uint64_t gen = 0;
      for (std::size_t i = 0; i < m; ++i) gen |= std::uint64_t{cut.y_star[i]} << i;
      if (cut.evaluate(cut.y_star) != values[gen]) ++loose;
      for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
        const double v = values[mask];
        if (cut.evaluate(TaskDecision::from_mask(m, mask)) < v - 1e-9 * std::fabs(v)) ++invalid;
      }
    }
  }
  report(6, "cut validity", invalid == 0 && loose == 0,
         fmt("20 relaxed instances, %d cuts, %d (cut, y) pairs below the subproblem optimum, "
             "%d cuts not exactly tight at their generator",
             cuts, invalid, loose));
}

void criterion7() {
  ExperimentConfig c = sweep_config(sweep_dir / "b");
  run_sweep(c, 1);
  const bool results_same = slurp(sweep_dir / "a" / "results.csv") == slurp(sweep_dir / "b" / "results.csv");
  const bool means_same = slurp(sweep_dir / "a" / "means.csv") == slurp(sweep_dir / "b" / "means.csv");
  report(7, "determinism", results_same && means_same,
         fmt("repeat sweep with 1 worker vs %d workers (%d OpenMP threads available): results.csv %s, means.csv %s",
             kWorkers, omp_get_max_threads(), results_same ? "identical" : "DIFFERENT",
             means_same ? "identical" : "DIFFERENT"));
  fs::remove_all(sweep_dir);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  std::printf("%d of 7 criteria failed\n", failures);
  return failures;
}
