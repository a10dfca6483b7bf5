// Command-line front end: solve one instance, trace Benders convergence, or
// run the scheme-comparison sweep.
//
// Exit codes: 0 success, 2 invalid input, 3 Benders did not converge, 1 other
// failures (I/O).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ntnopt/baselines.hpp"
#include "ntnopt/benders.hpp"
#include "ntnopt/harness.hpp"
#include "ntnopt/serialize.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNotConverged = 3;

struct SolveArgs {
  std::string config;
  std::uint64_t seed = 0;
  std::string mode;
  std::optional<double> epsilon;
  std::optional<int> hues;
  std::string instance_in;
  std::string instance_out;
  std::string time_solver = "lp";
};

int run_solve(const SolveArgs& args) {
  using namespace ntnopt;
  ExperimentConfig config = parse_config(args.config);
  if (!args.mode.empty()) {
    const auto mode = parse_mode(args.mode);
    if (!mode) throw ConfigError("--mode: expected paper or relaxed");
    config.mode = *mode;
  }
  if (args.epsilon) config.epsilon = *args.epsilon;
  if (args.hues) {
    config.hue_counts = {*args.hues};
    config.convergence_hue_count = *args.hues;
  }
  validate(config);

  Instance inst;
  if (!args.instance_in.empty()) {
    std::ifstream in(args.instance_in);
    if (!in) throw ConfigError(args.instance_in + ": cannot open");
    try {
      inst = instance_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
      throw ConfigError(args.instance_in + ": " + e.what());
    }
  } else {
    const int m_h = config.hue_counts.front();
    inst = make_seeded_instance(config.params, m_h, config.num_lues, args.seed);
  }
  if (!args.instance_out.empty()) {
    std::ofstream out(args.instance_out);
    if (!out) throw std::runtime_error(args.instance_out + ": cannot open");
    out << to_json(inst).dump(2) << '\n';
  }

  SolverOptions options = solver_options(config);
  if (args.time_solver == "pd") {
    options.time_solver = TimeSolver::kPrimalDecomposition;
  } else if (args.time_solver != "lp") {
    throw ConfigError("--time-solver: expected lp or pd");
  }

  BendersResult result;
  bool converged = true;
  try {
    result = benders_solve(inst, options);
  } catch (const MaxIterationsExceeded& e) {
    result = e.result();
    converged = false;
  }

  Json report{{"seed", args.seed},
              {"m_h", inst.num_hues()},
              {"mode", std::string(to_string(config.mode))},
              {"instance_fingerprint", instance_fingerprint(inst)},
              {"converged", converged},
              {"iterations", result.state.iteration},
              {"lower_bound_bps", result.state.lb},
              {"upper_bound_bps", result.state.ub},
              {"gap_bps", result.state.gap()},
              {"solution", to_json(result.solution)}};
  std::cout << report.dump(2) << '\n';
  return converged ? 0 : kExitNotConverged;
}

int run_convergence_cmd(const std::string& config_path,
                        const std::string& output_dir) {
  using namespace ntnopt;
  ExperimentConfig config = parse_config(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  const ConvergenceOutcome outcome = run_convergence(config);
  const BendersState& st = outcome.result.state;
  std::cout << "wrote " << outcome.csv_path.string() << " (" << st.iteration
            << " iterations, gap " << st.gap() << " bps)\n";
  if (!outcome.converged) {
    std::cerr << "benders did not reach epsilon within max_iter\n";
    return kExitNotConverged;
  }
  return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& output_dir,
                  int workers, bool timing) {
  using namespace ntnopt;
  ExperimentConfig config = parse_config(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (timing) config.record_wall_time = true;
  const SweepOutcome outcome = run_sweep(config, workers);
  std::size_t failed = 0;
  for (const SweepRow& r : outcome.rows) failed += r.errors.empty() ? 0 : 1;
  std::cout << "wrote " << outcome.results_path.string() << " and "
            << outcome.means_path.string() << " (" << outcome.rows.size()
            << " rows, " << failed << " with errors)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint offloading and time allocation for space-air-sea networks"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one seeded instance with Benders");
  solve_cmd->add_option("--config", solve.config, "Experiment config (JSON)")->required();
  solve_cmd->add_option("--seed", solve.seed, "Instance seed")->required();
  solve_cmd->add_option("--mode", solve.mode, "paper or relaxed");
  solve_cmd->add_option("--epsilon", solve.epsilon, "Benders gap tolerance (bits/s)");
  solve_cmd->add_option("--hues", solve.hues, "Number of HUEs (default: first hue_counts entry)");
  solve_cmd->add_option("--instance", solve.instance_in, "Solve this instance JSON instead of sampling");
  solve_cmd->add_option("--instance-out", solve.instance_out, "Write the instance JSON here");
  solve_cmd->add_option("--time-solver", solve.time_solver, "lp or pd (primal decomposition)");

  std::string conv_config;
  std::string conv_out;
  auto* conv_cmd = app.add_subcommand("convergence", "Write the Benders bound trace");
  conv_cmd->add_option("--config", conv_config, "Experiment config (JSON)")->required();
  conv_cmd->add_option("--output-dir", conv_out, "Override output_dir");

  std::string sweep_config;
  std::string sweep_out;
  int workers = 1;
  bool timing = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Compare Benders, oracle and random schemes");
  sweep_cmd->add_option("--config", sweep_config, "Experiment config (JSON)")->required();
  sweep_cmd->add_option("--workers", workers, "Concurrent cells")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--output-dir", sweep_out, "Override output_dir");
  sweep_cmd->add_flag("--timing", timing, "Fill the wall_ms column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*conv_cmd) return run_convergence_cmd(conv_config, conv_out);
    if (*sweep_cmd) return run_sweep_cmd(sweep_config, sweep_out, workers, timing);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
