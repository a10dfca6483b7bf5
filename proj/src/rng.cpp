#include "ntnopt/rng.hpp"

#include <cmath>
#include <numbers>

namespace ntnopt {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open_low() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential() { return -std::log(uniform_open_low()); }

std::uint64_t Rng::below(const std::uint64_t n) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (const std::uint64_t p : parts) h = mix64(h ^ mix64(p));
  return h;
}

}  // namespace ntnopt
