#pragma once

namespace ntnopt {

inline constexpr double kMetersPerNauticalMile = 1852.0;

// 10^(x/10). Throws std::invalid_argument on non-finite input.
double db_to_linear(double x_db);

// 10*log10(x). Throws std::invalid_argument unless x is finite and > 0.
double linear_to_db(double x);

}  // namespace ntnopt
