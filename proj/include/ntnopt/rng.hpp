#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ntnopt {

// Portable seeded generator. The engine (mt19937_64) is fully specified by
// the standard; the distributions below are written out so that sampled
// instances are bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1]; safe as a log argument.
  double uniform_open_low();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller (no cached second variate).
  double normal();
  double exponential();
  // Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Order-sensitive combination of several integers into one seed.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace ntnopt
