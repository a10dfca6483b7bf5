#include "ntnopt/units.hpp"

#include <cmath>
#include <stdexcept>

namespace ntnopt {

double db_to_linear(const double x_db) {
  if (!std::isfinite(x_db)) {
    throw std::invalid_argument("db_to_linear: input must be finite");
  }
  return std::pow(10.0, x_db / 10.0);
}

double linear_to_db(const double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::invalid_argument("linear_to_db: input must be finite and > 0");
  }
  return 10.0 * std::log10(x);
}

}  // namespace ntnopt
