#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qpgc/distance.hpp"
#include "qpgc/model.hpp"
#include "qpgc/qp_newton.hpp"
#include "qpgc/solve_result.hpp"

namespace qpgc {

struct QprGcConfig {
  double theta_fixed = 300.0;
  /// Multiplier applied to theta after each outer round; 1 keeps it fixed.
  double theta_growth = 1.0;
  double lambda0 = 1.0;
  double lambda_min = 1e-7;
  std::size_t lambda_decay_iters = 100;
  double bb_alpha0 = 0.1;
  double alpha_min = 1e-10;
  double alpha_max = 1e10;
  std::size_t memory_m = 5;
  double eta = 0.5;
  double gamma = 0.5;
  double tol = 1e-6;
  std::size_t max_outer = 300;
  std::size_t max_inner = 500;
  double box_upper = 1.0;
  bool zero_block_stop = true;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  KernelOptions kernel;

  void validate() const;

  static QprGcConfig ppm();
  static QprGcConfig sbm();
  static QprGcConfig karate();
  static QprGcConfig football();
};

/// lambda0 * (lambda_min / lambda0)^(min(l, T) / T).
double lambda_schedule(std::size_t l, const QprGcConfig& cfg);

/// One accepted SPG step, kept for tests.
struct SpgStep {
  double reference = 0.0;  // max of the last m values
  double value = 0.0;      // accepted h, carried by exact increments
  double slope = 0.0;      // grad^T d
  double step = 0.0;       // accepted line-search fraction
  double sts = 0.0;
  double sty = 0.0;
  double alpha = 0.0;      // step length used for the next direction
};

struct SpgStats {
  std::size_t iterations = 0;
  double value = 0.0;
  double direction_norm = 0.0;  // last ||d||_inf
  bool converged = false;
  bool stalled = false;  // line search found no acceptable step
  std::uint64_t hessian_products = 0;
  std::vector<SpgStep> steps;  // filled only when record_steps is set
  bool record_steps = false;
};

/// Nonmonotone spectral projected gradient on min h(x) over 0 <= x <= M with
/// BB1 steps. Throws SolverFailure on a non-finite value.
AssignmentVector spg(const QuadraticModel& model, const PenaltyParams& p, AssignmentVector x0,
                     const QprGcConfig& cfg, SpgStats* stats = nullptr, const IterateObserver& observer = {});

/// Regularized quadratic penalty method with SPG subproblems.
SolveResult solve_qpr_gc(const DistanceMatrix& d, std::size_t k, const QprGcConfig& cfg);
SolveResult solve_qpr_gc(const QuadraticModel& model, const QprGcConfig& cfg);

}  // namespace qpgc
