#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntnopt/benders.hpp"
#include "ntnopt/params.hpp"
#include "ntnopt/primal_decomp.hpp"
#include "ntnopt/serialize.hpp"

namespace ntnopt {

// Environment variable consulted for the default output directory.
inline constexpr const char* kOutputDirEnv = "NTNOPT_OUTPUT_DIR";

struct ExperimentConfig {
  SystemParams params;
  std::vector<int> hue_counts{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<double> bandwidths_hz{10e6, 20e6};
  int runs = 100;
  std::uint64_t base_seed = 1;
  Mode mode = Mode::kPaper;
  double epsilon = 1e-4;
  double psi_down = -25.0;
  int max_iter = 50;
  // HUE count of the single instance used by the convergence experiment.
  int convergence_hue_count = 100;
  int num_lues = 0;
  // Fill the wall_ms column. Off by default so that repeated sweeps produce
  // byte-identical files.
  bool record_wall_time = false;
  std::filesystem::path output_dir = "results";

  bool operator==(const ExperimentConfig&) const = default;
};

// Validation failure with a field path (or line/column for JSON syntax).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate(const ExperimentConfig& config);

// Defaults for every absent key; unknown keys are rejected. The default
// output_dir is $NTNOPT_OUTPUT_DIR when set.
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& config);
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(std::string_view text);

// Seed of the instance behind sweep cell (m_h, run). Bandwidth is not mixed
// in, so both bandwidth columns of a run see the same topology and fading.
std::uint64_t instance_seed(std::uint64_t base_seed, int m_h, int run);

// Topology + channel for a seed; `params` supplies the bandwidth.
Instance make_seeded_instance(const SystemParams& params, int m_h, int m_l,
                              std::uint64_t seed);

SolverOptions solver_options(const ExperimentConfig& config);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);
void write_primal_decomp_trace_csv(
    std::ostream& out, const std::vector<PrimalDecompTraceRow>& trace);

struct ConvergenceOutcome {
  std::filesystem::path csv_path;
  BendersResult result;
  bool converged = false;
};

// Solves the first-seed instance with convergence_hue_count HUEs and writes
// convergence.csv. Non-convergence is reported through `converged`.
ConvergenceOutcome run_convergence(const ExperimentConfig& config);

struct SweepRow {
  int m_h = 0;
  double bandwidth_hz = 0.0;
  Scheme scheme = Scheme::kBenders;
  std::uint64_t run_seed = 0;
  int run = 0;
  double objective_bps = 0.0;
  double local_bps = 0.0;
  double offload_bps = 0.0;
  double backhaul_bps = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  std::string errors;
  TaskDecision y;
};

struct SweepMean {
  int m_h = 0;
  double bandwidth_hz = 0.0;
  Scheme scheme = Scheme::kBenders;
  int runs = 0;
  double objective_bps = 0.0;
  double local_bps = 0.0;
  double offload_bps = 0.0;
  double backhaul_bps = 0.0;
  double iterations = 0.0;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;    // ordered by (m_h, bandwidth, run, scheme)
  std::vector<SweepMean> means;  // ordered by (m_h, bandwidth, scheme)
  std::filesystem::path results_path;
  std::filesystem::path means_path;
};

// Every (m_h, bandwidth, run) cell solved with Benders, the oracle and the
// random scheme, `workers` cells at a time. Writes results.csv and means.csv
// under output_dir unless `write_files` is false.
SweepOutcome run_sweep(const ExperimentConfig& config, int workers = 1,
                       bool write_files = true);

void write_results_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                       bool with_wall_time);
void write_means_csv(std::ostream& out, const std::vector<SweepMean>& means);

}  // namespace ntnopt
