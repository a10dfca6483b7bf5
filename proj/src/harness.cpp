#include "ntnopt/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "ntnopt/baselines.hpp"
#include "ntnopt/rng.hpp"

namespace ntnopt {
namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "results";
}

int get_int(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key + ": expected integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError(key + ": out of range");
  }
  return static_cast<int>(x);
}

double get_real(const Json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  }
  throw ConfigError(key + ": expected number");
}

Json real_to_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

int scheme_rank(Scheme s) { return static_cast<int>(s); }

}  // namespace

void validate(const ExperimentConfig& c) {
  try {
    validate(c.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("params.") + e.what());
  }
  if (c.hue_counts.empty()) throw ConfigError("hue_counts: must be nonempty");
  for (std::size_t i = 0; i < c.hue_counts.size(); ++i) {
    if (c.hue_counts[i] < 1) {
      throw ConfigError("hue_counts[" + std::to_string(i) + "]: must be >= 1");
    }
    if (c.mode == Mode::kRelaxed && c.hue_counts[i] > 20) {
      throw ConfigError("hue_counts[" + std::to_string(i) +
                        "]: relaxed mode supports at most 20 HUEs");
    }
  }
  if (c.bandwidths_hz.empty()) throw ConfigError("bandwidths_hz: must be nonempty");
  for (std::size_t i = 0; i < c.bandwidths_hz.size(); ++i) {
    if (!std::isfinite(c.bandwidths_hz[i]) || c.bandwidths_hz[i] <= 0.0) {
      throw ConfigError("bandwidths_hz[" + std::to_string(i) + "]: must be > 0");
    }
  }
  if (c.runs < 1) throw ConfigError("runs: must be >= 1");
  if (!(c.epsilon > 0.0)) throw ConfigError("epsilon: must be > 0");
  if (!std::isfinite(c.psi_down)) throw ConfigError("psi_down: must be finite");
  if (c.max_iter < 1) throw ConfigError("max_iter: must be >= 1");
  if (c.convergence_hue_count < 1) {
    throw ConfigError("convergence_hue_count: must be >= 1");
  }
  if (c.mode == Mode::kRelaxed && c.convergence_hue_count > 20) {
    throw ConfigError(
        "convergence_hue_count: relaxed mode supports at most 20 HUEs");
  }
  if (c.num_lues < 0) throw ConfigError("num_lues: must be >= 0");
  if (c.output_dir.empty()) throw ConfigError("output_dir: must be nonempty");
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  c.output_dir = default_output_dir();
  for (const auto& [key, v] : j.items()) {
    if (key == "params") {
      try {
        c.params = params_from_json(v, "params");
      } catch (const SchemaError& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "hue_counts") {
      if (!v.is_array()) throw ConfigError("hue_counts: expected array");
      c.hue_counts.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        c.hue_counts.push_back(get_int(v[i], "hue_counts[" + std::to_string(i) + "]"));
      }
    } else if (key == "bandwidths_hz") {
      if (!v.is_array()) throw ConfigError("bandwidths_hz: expected array");
      c.bandwidths_hz.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        c.bandwidths_hz.push_back(
            get_real(v[i], "bandwidths_hz[" + std::to_string(i) + "]"));
      }
    } else if (key == "runs") {
      c.runs = get_int(v, key);
    } else if (key == "base_seed") {
      if (!v.is_number_unsigned()) {
        throw ConfigError("base_seed: expected nonnegative integer");
      }
      c.base_seed = v.get<std::uint64_t>();
    } else if (key == "mode") {
      const auto mode = v.is_string() ? parse_mode(v.get<std::string>()) : std::nullopt;
      if (!mode) throw ConfigError("mode: expected \"paper\" or \"relaxed\"");
      c.mode = *mode;
    } else if (key == "epsilon") {
      c.epsilon = get_real(v, key);
    } else if (key == "psi_down") {
      c.psi_down = get_real(v, key);
    } else if (key == "max_iter") {
      c.max_iter = get_int(v, key);
    } else if (key == "convergence_hue_count") {
      c.convergence_hue_count = get_int(v, key);
    } else if (key == "num_lues") {
      c.num_lues = get_int(v, key);
    } else if (key == "record_wall_time") {
      if (!v.is_boolean()) throw ConfigError("record_wall_time: expected boolean");
      c.record_wall_time = v.get<bool>();
    } else if (key == "output_dir") {
      if (!v.is_string()) throw ConfigError("output_dir: expected string");
      c.output_dir = v.get<std::string>();
    } else {
      throw ConfigError(key + ": unknown key");
    }
  }
  validate(c);
  return c;
}

Json to_json(const ExperimentConfig& c) {
  Json bandwidths = Json::array();
  for (const double b : c.bandwidths_hz) bandwidths.push_back(b);
  return Json{{"params", to_json(c.params)},
              {"hue_counts", c.hue_counts},
              {"bandwidths_hz", bandwidths},
              {"runs", c.runs},
              {"base_seed", c.base_seed},
              {"mode", std::string(to_string(c.mode))},
              {"epsilon", real_to_json(c.epsilon)},
              {"psi_down", c.psi_down},
              {"max_iter", c.max_iter},
              {"convergence_hue_count", c.convergence_hue_count},
              {"num_lues", c.num_lues},
              {"record_wall_time", c.record_wall_time},
              {"output_dir", c.output_dir.string()}};
}

ExperimentConfig parse_config_text(const std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return config_from_json(Json::object());
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("syntax error: ") + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::uint64_t instance_seed(const std::uint64_t base_seed, const int m_h,
                            const int run) {
  return derive_seed({base_seed, static_cast<std::uint64_t>(m_h),
                      static_cast<std::uint64_t>(run)});
}

Instance make_seeded_instance(const SystemParams& params, const int m_h,
                              const int m_l, const std::uint64_t seed) {
  const Topology topology =
      sample_topology(params, m_h, m_l, derive_seed({seed, 1}));
  return build_instance(params, topology, derive_seed({seed, 2}));
}

SolverOptions solver_options(const ExperimentConfig& c) {
  SolverOptions o;
  o.epsilon = c.epsilon;
  o.max_iter = c.max_iter;
  o.mode = c.mode;
  o.psi_down = c.psi_down;
  return o;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,lower_bound_bps,upper_bound_bps,gap_bps,chosen_y_bitmask\n";
  for (const TraceRow& r : trace) {
    out << r.iteration << ',' << num(r.lower_bound) << ',' << num(r.upper_bound)
        << ',' << num(r.gap()) << ',' << r.chosen_y.bitmask_hex() << '\n';
  }
}

void write_primal_decomp_trace_csv(
    std::ostream& out, const std::vector<PrimalDecompTraceRow>& trace) {
  out << "iteration,theta_s,lambda1,lambda2,value_bps\n";
  for (const auto& r : trace) {
    out << r.iteration << ',' << num(r.theta) << ',' << num(r.lambda1) << ','
        << num(r.lambda2) << ',' << num(r.value) << '\n';
  }
}

ConvergenceOutcome run_convergence(const ExperimentConfig& config) {
  validate(config);
  const std::uint64_t seed =
      instance_seed(config.base_seed, config.convergence_hue_count, 0);
  const Instance inst = make_seeded_instance(
      config.params, config.convergence_hue_count, config.num_lues, seed);

  ConvergenceOutcome outcome;
  try {
    outcome.result = benders_solve(inst, solver_options(config));
    outcome.converged = true;
  } catch (const MaxIterationsExceeded& e) {
    outcome.result = e.result();
    outcome.converged = false;
  }

  ensure_dir(config.output_dir);
  outcome.csv_path = config.output_dir / "convergence.csv";
  std::ofstream out = open_out(outcome.csv_path);
  write_trace_csv(out, outcome.result.state.trace);
  finish(out, outcome.csv_path);
  return outcome;
}

void write_results_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                       const bool with_wall_time) {
  out << "m_h,bandwidth_hz,scheme,run_seed,objective_bps,local_bps,offload_bps,"
         "backhaul_bps,iterations,wall_ms,errors\n";
  for (const SweepRow& r : rows) {
    out << r.m_h << ',' << num(r.bandwidth_hz) << ',' << to_string(r.scheme) << ','
        << r.run_seed << ',' << num(r.objective_bps) << ',' << num(r.local_bps)
        << ',' << num(r.offload_bps) << ',' << num(r.backhaul_bps) << ','
        << r.iterations << ',' << (with_wall_time ? num(r.wall_ms) : "") << ','
        << csv_field(r.errors) << '\n';
  }
}

void write_means_csv(std::ostream& out, const std::vector<SweepMean>& means) {
  out << "m_h,bandwidth_hz,scheme,runs,mean_objective_bps,mean_local_bps,"
         "mean_offload_bps,mean_backhaul_bps,mean_iterations\n";
  for (const SweepMean& m : means) {
    out << m.m_h << ',' << num(m.bandwidth_hz) << ',' << to_string(m.scheme) << ','
        << m.runs << ',' << num(m.objective_bps) << ',' << num(m.local_bps) << ','
        << num(m.offload_bps) << ',' << num(m.backhaul_bps) << ','
        << num(m.iterations) << '\n';
  }
}

SweepOutcome run_sweep(const ExperimentConfig& config, const int workers,
                       const bool write_files) {
  validate(config);
  if (workers < 1) throw ConfigError("workers: must be >= 1");

  struct Cell {
    int m_h;
    double bandwidth;
    int run;
  };
  std::vector<Cell> cells;
  for (const int m : config.hue_counts) {
    for (const double b : config.bandwidths_hz) {
      for (int r = 0; r < config.runs; ++r) cells.push_back({m, b, r});
    }
  }

  constexpr int kSchemes = 3;
  std::vector<SweepRow> rows(cells.size() * kSchemes);
  const SolverOptions options = solver_options(config);

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    const std::uint64_t seed = instance_seed(config.base_seed, cell.m_h, cell.run);
    SweepRow* out = &rows[c * kSchemes];
    for (int s = 0; s < kSchemes; ++s) {
      out[s].m_h = cell.m_h;
      out[s].bandwidth_hz = cell.bandwidth;
      out[s].scheme = static_cast<Scheme>(s);
      out[s].run_seed = seed;
      out[s].run = cell.run;
      out[s].objective_bps = out[s].local_bps = out[s].offload_bps =
          out[s].backhaul_bps = std::numeric_limits<double>::quiet_NaN();
    }

    auto fill = [](SweepRow& row, const Solution& sol) {
      row.objective_bps = sol.objective_bps;
      row.local_bps = sol.breakdown.local_bps;
      row.offload_bps = sol.breakdown.offload_bps;
      row.backhaul_bps = sol.breakdown.backhaul_bps;
      row.y = sol.y;
    };
    using Clock = std::chrono::steady_clock;
    auto elapsed_ms = [](Clock::time_point t0) {
      return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    };

    try {
      SystemParams params = config.params;
      params.bandwidth_hz = cell.bandwidth;
      const Instance inst =
          make_seeded_instance(params, cell.m_h, config.num_lues, seed);

      auto t0 = Clock::now();
      try {
        const BendersResult res = benders_solve(inst, options);
        fill(out[0], res.solution);
        out[0].iterations = res.state.iteration;
      } catch (const MaxIterationsExceeded& e) {
        fill(out[0], e.result().solution);
        out[0].iterations = e.result().state.iteration;
        out[0].errors = "max_iterations gap=" + num(e.gap());
      } catch (const std::exception& e) {
        out[0].errors = e.what();
      }
      out[0].wall_ms = elapsed_ms(t0);

      t0 = Clock::now();
      try {
        fill(out[1], brute_force_optimal(inst, config.mode));
      } catch (const std::exception& e) {
        out[1].errors = e.what();
      }
      out[1].wall_ms = elapsed_ms(t0);

      t0 = Clock::now();
      try {
        fill(out[2], random_scheme(inst, config.mode, derive_seed({seed, 3})));
      } catch (const std::exception& e) {
        out[2].errors = e.what();
      }
      out[2].wall_ms = elapsed_ms(t0);
    } catch (const std::exception& e) {
      for (int s = 0; s < kSchemes; ++s) out[s].errors = e.what();
    }
  }

  SweepOutcome outcome;
  outcome.rows = std::move(rows);

  std::map<std::tuple<std::size_t, std::size_t, int>, SweepMean> acc;
  for (const SweepRow& r : outcome.rows) {
    const auto mi = static_cast<std::size_t>(
        std::find(config.hue_counts.begin(), config.hue_counts.end(), r.m_h) -
        config.hue_counts.begin());
    const auto bi = static_cast<std::size_t>(
        std::find(config.bandwidths_hz.begin(), config.bandwidths_hz.end(),
                  r.bandwidth_hz) -
        config.bandwidths_hz.begin());
    SweepMean& m = acc[{mi, bi, scheme_rank(r.scheme)}];
    m.m_h = r.m_h;
    m.bandwidth_hz = r.bandwidth_hz;
    m.scheme = r.scheme;
    if (std::isnan(r.objective_bps)) continue;
    ++m.runs;
    m.objective_bps += r.objective_bps;
    m.local_bps += r.local_bps;
    m.offload_bps += r.offload_bps;
    m.backhaul_bps += r.backhaul_bps;
    m.iterations += r.iterations;
  }
  for (auto& [key, m] : acc) {
    if (m.runs > 0) {
      const double n = m.runs;
      m.objective_bps /= n;
      m.local_bps /= n;
      m.offload_bps /= n;
      m.backhaul_bps /= n;
      m.iterations /= n;
    }
    outcome.means.push_back(m);
  }

  if (write_files) {
    ensure_dir(config.output_dir);
    outcome.results_path = config.output_dir / "results.csv";
    outcome.means_path = config.output_dir / "means.csv";
    std::ofstream results = open_out(outcome.results_path);
    write_results_csv(results, outcome.rows, config.record_wall_time);
    finish(results, outcome.results_path);
    std::ofstream means = open_out(outcome.means_path);
    write_means_csv(means, outcome.means);
    finish(means, outcome.means_path);
  }
  return outcome;
}

}  // namespace ntnopt
