#pragma once

// Enumeration kernels behind the Benders master problem and the exhaustive
// oracle. Each kernel has a straightforward serial reference and an OpenMP
// version; the two must agree (bit-exact on the chosen decision, see
// tests/test_kernels.cpp). The parallel versions use a fixed work
// decomposition independent of the thread count, so results do not depend on
// OMP_NUM_THREADS.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ntnopt::kernels {

// Optimality cuts in the form  Psi <= anchor_k + sum_i slope_k[i] * (y_i - g_k[i])
// where g_k is the generating decision. Stored row-major.
class CutTable {
 public:
  explicit CutTable(std::size_t m_h) : m_h_(m_h) {}

  void add(double anchor, std::span<const double> slope,
           std::span<const std::uint8_t> generator);

  std::size_t num_hues() const { return m_h_; }
  std::size_t size() const { return anchor_.size(); }
  double anchor(std::size_t k) const { return anchor_[k]; }
  std::span<const double> slope(std::size_t k) const {
    return {slope_.data() + k * m_h_, m_h_};
  }
  std::span<const std::uint8_t> generator(std::size_t k) const {
    return {gen_.data() + k * m_h_, m_h_};
  }
  // anchor_k - sum_{i in g_k} slope_k[i]: the cut's value at y = 0.
  double base(std::size_t k) const { return base_[k]; }
  // Offloader index of a generator with at most one offloader (-1 if none,
  // -2 if several).
  long single_offloader(std::size_t k) const { return single_[k]; }

  // Exact evaluation: anchor + sum over differing coordinates only, so the
  // value at the generator is the anchor itself.
  double evaluate(std::size_t k, std::span<const std::uint8_t> y) const;

 private:
  std::size_t m_h_;
  std::vector<double> anchor_;
  std::vector<double> base_;
  std::vector<double> slope_;
  std::vector<std::uint8_t> gen_;
  std::vector<long> single_;
};

// Best decision found by a master enumeration. For the "at most one
// offloader" family, `index` is -1 for all-local and k for unit vector e_k.
// For the subset family, `mask` is the decision bitmask.
struct MasterPick {
  long index = -1;
  std::uint64_t mask = 0;
  double psi = 0.0;
};

// max over y in {0, e_1, ..., e_M} of min_k cut_k(y); ties go to the lowest
// bitmask (all-local first, then e_1, e_2, ...).
MasterPick best_single_serial(const CutTable& cuts);
MasterPick best_single_parallel(const CutTable& cuts);

// max over all 2^M subsets of min_k cut_k(y); ties go to the lowest mask.
// Requires M <= 30.
MasterPick best_subset_serial(const CutTable& cuts);
MasterPick best_subset_parallel(const CutTable& cuts);

// Index of the largest value, ties to the lowest index. Serial and OpenMP
// variants; used to reduce per-decision oracle values.
std::size_t argmax_serial(std::span<const double> values);
std::size_t argmax_parallel(std::span<const double> values);

}  // namespace ntnopt::kernels
