#pragma once

#include <vector>

#include "ntnopt/physics.hpp"

// Hand-built instance with chosen rate coefficients; the channel fields are
// left empty because only the coefficients enter the optimisation.
inline ntnopt::Instance toy_instance(std::vector<double> local,
                                     std::vector<double> leo, double uav,
                                     std::vector<double> weights = {}) {
  ntnopt::Instance inst;
  const std::size_t m = local.size();
  inst.topology.num_hues = static_cast<int>(m);
  inst.local_rate_bps = std::move(local);
  inst.leo_rate_coeff_bps = std::move(leo);
  inst.uav_rate_coeff_bps = uav;
  inst.weights = weights.empty() ? std::vector<double>(m, 1.0) : std::move(weights);
  return inst;
}
