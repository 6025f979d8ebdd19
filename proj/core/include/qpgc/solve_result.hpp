#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qpgc/model.hpp"

namespace qpgc {

enum class StopReason {
  kFeasible,     // residual below threshold and the subproblem solved
  kSupportStop,  // support-set early stop
  kThetaCapped,  // theta at its cap, residual stalled for 3 rounds
  kMaxOuter,
  kZeroBlock,    // a block became zero; previous iterate returned
  kConverged,    // lambda schedule finished and iterates stopped moving
};

std::string_view to_string(StopReason r);
std::optional<StopReason> parse_stop_reason(std::string_view s);

struct SolveResult {
  AssignmentVector x_relaxed;
  std::vector<int> labels;
  /// Discrete objective of the rounded labels: sum over same-label pairs of d_ij.
  double objective = 0.0;
  /// f at the relaxed point.
  double relaxed_objective = 0.0;
  /// Last subproblem value (g for QP-GC, h for QPR-GC).
  double final_value = 0.0;
  /// ||h^l||_inf after each outer iteration.
  std::vector<double> feas_trace;
  std::vector<double> theta_trace;
  std::vector<double> lambda_trace;  // QPR-GC only
  std::size_t outer_iters = 0;
  std::size_t inner_iters = 0;
  double wall_time = 0.0;  // seconds
  StopReason stop_reason = StopReason::kMaxOuter;
  std::size_t restart = 0;  // index of the kept start
  std::uint64_t dv_products = 0;
  std::uint64_t hessian_products = 0;
};

/// x0 with entries iid uniform on [0, 1), drawn from the init stream of
/// (seed, restart). Deterministic for a given (n, K, seed, restart).
AssignmentVector random_start(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t restart = 0);

/// Coordinates (flat indices into x) strictly above tol.
std::vector<std::size_t> support_set(const AssignmentVector& x, double tol = 1e-8);

/// Fills labels, objective and relaxed_objective from x_relaxed.
void finish_result(const QuadraticModel& model, SolveResult& result);

/// ||v||_inf; 0 for an empty vector.
double max_abs(std::span<const double> v);

}  // namespace qpgc
