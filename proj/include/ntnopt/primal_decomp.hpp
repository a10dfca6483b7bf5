#pragma once

// Primal decomposition of the frame-budget coupling row. A split variable
// theta gives the UAV backhaul tau_u <= theta and the HUEs
// sum_i tau_i <= T - theta; for fixed theta the two LPs are independent. The
// master value phi(theta) = value1(theta) + value2(theta) is concave with
// supergradient lambda2 - lambda1 (duals of the two split rows), so theta
// moves by projected subgradient ascent:
//
//   theta <- clip(theta + zeta_t (lambda2 - lambda1), eps_tau, T).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ntnopt/decision.hpp"
#include "ntnopt/physics.hpp"

namespace ntnopt {

struct Sub1Result {
  std::vector<double> tau;
  double lambda1 = 0.0;
  double value = 0.0;
};

struct Sub2Result {
  double tau_u = 0.0;
  double lambda2 = 0.0;
  double value = 0.0;
};

// HUE side: maximize sum_i z_i((1-y_i) R_i^local + y_i c_i tau_i) subject to
// sum_i tau_i <= T - theta.
Sub1Result solve_sub1(const Instance& instance, const TaskDecision& y_star,
                      double theta);

// UAV side: maximize c_u tau_u subject to eps_tau <= tau_u <= theta.
Sub2Result solve_sub2(const Instance& instance, double theta);

struct PrimalDecompState {
  double theta = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double step = 0.0;
  int iteration = 0;
  double value = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
};

double update_theta(const PrimalDecompState& state);

struct StepSchedule {
  enum class Kind { kDiminishing, kConstant };
  Kind kind = Kind::kDiminishing;
  // Non-positive selects T / |lambda2 - lambda1| at the first iterate.
  double zeta0 = 0.0;

  double at(int iteration, double default_zeta0) const;
};

struct PrimalDecompOptions {
  std::optional<double> theta0;  // default T / 2
  StepSchedule schedule;
  std::optional<double> tol;  // default 1e-6 * |value|
  int max_iter = 500;
  // Solve the two subproblems of an iteration concurrently.
  bool parallel = true;
  bool record_trace = false;
};

struct PrimalDecompTraceRow {
  int iteration = 0;
  double theta = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double value = 0.0;
};

struct PrimalDecompResult {
  TimeAllocation alloc;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double theta = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<PrimalDecompTraceRow> trace;
};

class PrimalDecompMaxIterations : public std::runtime_error {
 public:
  explicit PrimalDecompMaxIterations(PrimalDecompResult best);
  const PrimalDecompResult& best() const { return best_; }

 private:
  PrimalDecompResult best_;
};

// Iterates the two subproblems and the theta update until the value change
// drops below tol, theta rests on a bound with the supergradient pointing
// outward, or the supergradient vanishes. Throws PrimalDecompMaxIterations
// (carrying the best iterate) when max_iter is reached first.
PrimalDecompResult primal_decomposition(const Instance& instance,
                                        const TaskDecision& y_star,
                                        const PrimalDecompOptions& options = {});

}  // namespace ntnopt
