#include "ntnopt/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ntnopt::kernels {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Strictly better: larger value, or equal value at a lower position.
inline bool better(double v, std::size_t i, double best_v, std::size_t best_i) {
  return v > best_v || (v == best_v && i < best_i);
}

// Candidate c in {-1, 0, ..., M-1} evaluated against cut k.
inline double eval_single(const CutTable& cuts, std::size_t k, long c) {
  const long g = cuts.single_offloader(k);
  if (g == -2) {
    std::vector<std::uint8_t> y(cuts.num_hues(), 0);
    if (c >= 0) y[static_cast<std::size_t>(c)] = 1;
    return cuts.evaluate(k, y);
  }
  if (c == g) return cuts.anchor(k);
  const auto slope = cuts.slope(k);
  double v = cuts.anchor(k);
  if (c >= 0) v += slope[static_cast<std::size_t>(c)];
  if (g >= 0) v -= slope[static_cast<std::size_t>(g)];
  return v;
}

inline double min_over_cuts_single(const CutTable& cuts, long c) {
  double psi = kInf;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    psi = std::min(psi, eval_single(cuts, k, c));
  }
  return psi;
}

void require_cuts(const CutTable& cuts) {
  if (cuts.size() == 0) throw std::invalid_argument("master: empty cut pool");
}

void require_subset_size(const CutTable& cuts) {
  if (cuts.num_hues() > 30) {
    throw std::invalid_argument("subset enumeration limited to 30 HUEs");
  }
}

}  // namespace

void CutTable::add(const double anchor, std::span<const double> slope,
                   std::span<const std::uint8_t> generator) {
  if (slope.size() != m_h_ || generator.size() != m_h_) {
    throw std::invalid_argument("CutTable::add: length mismatch");
  }
  double base = anchor;
  long single = -1;
  for (std::size_t i = 0; i < m_h_; ++i) {
    if (!generator[i]) continue;
    base -= slope[i];
    single = single == -1 ? static_cast<long>(i) : -2;
  }
  anchor_.push_back(anchor);
  base_.push_back(base);
  single_.push_back(single);
  slope_.insert(slope_.end(), slope.begin(), slope.end());
  gen_.insert(gen_.end(), generator.begin(), generator.end());
}

double CutTable::evaluate(std::size_t k, std::span<const std::uint8_t> y) const {
  const auto s = slope(k);
  const auto g = generator(k);
  double v = anchor_[k];
  for (std::size_t i = 0; i < m_h_; ++i) {
    if ((y[i] != 0) != (g[i] != 0)) v += y[i] ? s[i] : -s[i];
  }
  return v;
}

MasterPick best_single_serial(const CutTable& cuts) {
  require_cuts(cuts);
  const long m = static_cast<long>(cuts.num_hues());
  MasterPick best{-1, 0, min_over_cuts_single(cuts, -1)};
  for (long c = 0; c < m; ++c) {
    const double psi = min_over_cuts_single(cuts, c);
    if (psi > best.psi) best = MasterPick{c, 0, psi};
  }
  if (best.index >= 0) best.mask = m <= 64 ? (1ULL << best.index) : 0;
  return best;
}

MasterPick best_single_parallel(const CutTable& cuts) {
  require_cuts(cuts);
  const long m = static_cast<long>(cuts.num_hues());
  // Slot 0 is all-local, slot c+1 is e_c: slot order equals mask order.
  std::vector<double> psi(static_cast<std::size_t>(m) + 1);
#pragma omp parallel for schedule(static)
  for (long slot = 0; slot <= m; ++slot) {
    psi[static_cast<std::size_t>(slot)] = min_over_cuts_single(cuts, slot - 1);
  }
  const std::size_t slot = argmax_parallel(psi);
  MasterPick pick{static_cast<long>(slot) - 1, 0, psi[slot]};
  if (pick.index >= 0) pick.mask = m <= 64 ? (1ULL << pick.index) : 0;
  return pick;
}

MasterPick best_subset_serial(const CutTable& cuts) {
  require_cuts(cuts);
  require_subset_size(cuts);
  const std::size_t m = cuts.num_hues();
  const std::uint64_t count = 1ULL << m;
  MasterPick best{-1, 0, -kInf};
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double psi = kInf;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const auto s = cuts.slope(k);
      double v = cuts.base(k);
      for (std::size_t i = 0; i < m; ++i) {
        if ((mask >> i) & 1U) v += s[i];
      }
      psi = std::min(psi, v);
    }
    if (mask == 0 || psi > best.psi) best = MasterPick{-1, mask, psi};
  }
  return best;
}

MasterPick best_subset_parallel(const CutTable& cuts) {
  require_cuts(cuts);
  require_subset_size(cuts);
  const std::size_t m = cuts.num_hues();
  const std::size_t count = std::size_t{1} << m;
  std::vector<double> psi(count, kInf);
  std::vector<double> value(count);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const auto s = cuts.slope(k);
    value[0] = cuts.base(k);
    // value[mask] = value[mask without its top bit] + slope[top]; this adds
    // the slopes in ascending index order, exactly as the serial loop does.
    for (std::size_t t = 0; t < m; ++t) {
      const std::size_t half = std::size_t{1} << t;
      const double st = s[t];
#pragma omp parallel for schedule(static) if (half >= 4096)
      for (std::size_t j = 0; j < half; ++j) value[half + j] = value[j] + st;
    }
#pragma omp parallel for schedule(static) if (count >= 4096)
    for (std::size_t mask = 0; mask < count; ++mask) {
      psi[mask] = std::min(psi[mask], value[mask]);
    }
  }
  const std::size_t mask = argmax_parallel(psi);
  return MasterPick{-1, mask, psi[mask]};
}

std::size_t argmax_serial(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t argmax_parallel(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax: empty input");
  const std::size_t n = values.size();
  std::size_t best = 0;
  double best_v = values[0];
#pragma omp parallel if (n >= 4096)
  {
    std::size_t local = n;
    double local_v = -kInf;
#pragma omp for schedule(static) nowait
    for (std::size_t i = 0; i < n; ++i) {
      if (local == n || better(values[i], i, local_v, local)) {
        local = i;
        local_v = values[i];
      }
    }
#pragma omp critical(ntnopt_argmax)
    {
      if (local != n && better(local_v, local, best_v, best)) {
        best = local;
        best_v = local_v;
      }
    }
  }
  return best;
}

}  // namespace ntnopt::kernels
