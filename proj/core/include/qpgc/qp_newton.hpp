#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "qpgc/distance.hpp"
#include "qpgc/model.hpp"
#include "qpgc/solve_result.hpp"

namespace qpgc {

struct QpGcConfig {
  double theta0 = 10.0;
  double theta_bar = 1e5;
  double theta_growth = 3.0;
  /// Residual trigger on ||h||_inf for growing theta and for stopping.
  double feas_threshold = 0.01;
  /// Inner stationarity tolerance on ||x - P(x - grad g)||_inf.
  double subproblem_eps = 9e-4;
  /// Stop once |support(x)| >= fraction * n * K. Disabled when empty.
  std::optional<double> support_stop_fraction;
  std::size_t max_outer = 100;
  std::size_t max_inner = 500;
  double box_upper = 1.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  KernelOptions kernel;

  /// Throws ContractViolation on out-of-range fields.
  void validate() const;

  static QpGcConfig ppm();
  static QpGcConfig sbm();
  static QpGcConfig real_world();
};

struct NewtonStats {
  std::size_t iterations = 0;
  std::size_t cg_iterations = 0;
  /// Iterations where the CG direction was replaced by steepest descent.
  std::size_t fallbacks = 0;
  double stationarity = 0.0;
  double value = 0.0;
  bool converged = false;
  /// The line search could not decrease g any further at working precision.
  bool stalled = false;
};

/// Called with every accepted inner iterate and its value.
using IterateObserver = std::function<void(const AssignmentVector&, double)>;

/// Active-set projected Newton for min g(x) over 0 <= x <= M (lambda in p is
/// honored, so it also works for h). Per iteration:
///   - coordinates within min(1e-3, w) of a bound whose gradient points
///     outward are held active (w is the current stationarity measure);
///   - the reduced Newton system on the free set is solved by CG with forcing
///     tolerance min(0.5, sqrt(|g_F|)) |g_F|, at most 50 steps; on
///     non-positive curvature or a non-descent result it falls back to -g_F;
///   - active coordinates move along -g;
///   - projected-arc Armijo backtracking, slope 1e-4, factor 0.5. The
///     decrease is measured as 1/2 (g(x) + g(y))^T (y - x), which is exact for
///     a quadratic and free of cancellation.
/// Throws SolverFailure on a non-finite value.
AssignmentVector projected_newton(const QuadraticModel& model, const PenaltyParams& p, AssignmentVector x0,
                                  double eps, std::size_t max_inner, NewtonStats* stats = nullptr,
                                  const IterateObserver& observer = {});

/// Quadratic penalty method with projected Newton subproblems.
SolveResult solve_qp_gc(const DistanceMatrix& d, std::size_t k, const QpGcConfig& cfg);
SolveResult solve_qp_gc(const QuadraticModel& model, const QpGcConfig& cfg);

}  // namespace qpgc
