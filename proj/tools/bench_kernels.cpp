// Serial reference vs OpenMP kernels: master enumeration over min-of-cuts
// and the exhaustive oracle. Prints wall time per variant and checks the two
// agree.
//
//   bench_kernels [--hues 18] [--cuts 16] [--repeat 3]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ntnopt/baselines.hpp"
#include "ntnopt/harness.hpp"
#include "ntnopt/kernels.hpp"
#include "ntnopt/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_ms(int repeat, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = Clock::now();
    f();
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    best = ms < best ? ms : best;
  }
  return best;
}

ntnopt::kernels::CutTable random_cuts(std::size_t m, std::size_t k,
                                      std::uint64_t seed) {
  ntnopt::Rng rng(seed);
  ntnopt::kernels::CutTable cuts(m);
  std::vector<double> slope(m);
  std::vector<std::uint8_t> gen(m);
  for (std::size_t c = 0; c < k; ++c) {
    for (auto& s : slope) s = rng.uniform(-1e7, 1e7);
    for (auto& g : gen) g = static_cast<std::uint8_t>(rng.below(2));
    cuts.add(rng.uniform(1e8, 2e8), slope, gen);
  }
  return cuts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark serial vs OpenMP enumeration kernels"};
  int hues = 18;
  int num_cuts = 16;
  int repeat = 3;
  app.add_option("--hues", hues, "HUEs for the subset enumeration (<= 24)");
  app.add_option("--cuts", num_cuts, "Cuts in the master table");
  app.add_option("--repeat", repeat, "Repetitions; best time is reported");
  CLI11_PARSE(app, argc, argv);
  if (hues < 1 || hues > 24 || num_cuts < 1 || repeat < 1) {
    std::fprintf(stderr, "invalid arguments\n");
    return 2;
  }

  std::printf("threads: %d\n", omp_get_max_threads());

  const auto cuts = random_cuts(static_cast<std::size_t>(hues),
                                static_cast<std::size_t>(num_cuts), 7);
  ntnopt::kernels::MasterPick serial, parallel;
  const double t_serial = best_ms(repeat, [&] { serial = ntnopt::kernels::best_subset_serial(cuts); });
  const double t_parallel = best_ms(repeat, [&] { parallel = ntnopt::kernels::best_subset_parallel(cuts); });
  std::printf("master subset  M=%d K=%d  serial %9.2f ms  parallel %9.2f ms  agree=%s\n",
              hues, num_cuts, t_serial, t_parallel,
              serial.mask == parallel.mask && serial.psi == parallel.psi ? "yes" : "NO");

  const auto wide = random_cuts(2000, static_cast<std::size_t>(num_cuts), 11);
  const double t_single_s = best_ms(repeat, [&] { serial = ntnopt::kernels::best_single_serial(wide); });
  const double t_single_p = best_ms(repeat, [&] { parallel = ntnopt::kernels::best_single_parallel(wide); });
  std::printf("master single  M=2000 K=%d  serial %9.2f ms  parallel %9.2f ms  agree=%s\n",
              num_cuts, t_single_s, t_single_p,
              serial.index == parallel.index && serial.psi == parallel.psi ? "yes" : "NO");

  const ntnopt::SystemParams params;
  const auto relaxed_inst = ntnopt::make_seeded_instance(params, 14, 0, 5);
  ntnopt::Solution a, b;
  const double t_oracle_s = best_ms(repeat, [&] { a = ntnopt::brute_force_optimal_serial(relaxed_inst, ntnopt::Mode::kRelaxed); });
  const double t_oracle_p = best_ms(repeat, [&] { b = ntnopt::brute_force_optimal(relaxed_inst, ntnopt::Mode::kRelaxed); });
  std::printf("oracle relaxed M=14        serial %9.2f ms  parallel %9.2f ms  agree=%s\n",
              t_oracle_s, t_oracle_p,
              a.y == b.y && a.objective_bps == b.objective_bps ? "yes" : "NO");
  return 0;
}
