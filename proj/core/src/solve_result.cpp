#include "qpgc/solve_result.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "qpgc/metrics.hpp"
#include "qpgc/rng.hpp"

namespace qpgc {
namespace {

constexpr std::array<std::pair<StopReason, std::string_view>, 6> kReasons{{
    {StopReason::kFeasible, "feasible"},
    {StopReason::kSupportStop, "support_stop"},
    {StopReason::kThetaCapped, "theta_capped"},
    {StopReason::kMaxOuter, "max_outer"},
    {StopReason::kZeroBlock, "zero_block"},
    {StopReason::kConverged, "converged"},
}};

}  // namespace

std::string_view to_string(StopReason r) {
  for (const auto& [reason, name] : kReasons) {
    if (reason == r) return name;
  }
  return "max_outer";
}

std::optional<StopReason> parse_stop_reason(std::string_view s) {
  for (const auto& [reason, name] : kReasons) {
    if (name == s) return reason;
  }
  return std::nullopt;
}

AssignmentVector random_start(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t restart) {
  const CounterRng rng(seed, CounterRng::kInitStream + restart);
  AssignmentVector x(n, k);
  for (std::size_t idx = 0; idx < x.size(); ++idx) x[idx] = rng.uniform(idx);
  return x;
}

std::vector<std::size_t> support_set(const AssignmentVector& x, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < x.size(); ++idx) {
    if (x[idx] > tol) out.push_back(idx);
  }
  return out;
}

void finish_result(const QuadraticModel& model, SolveResult& result) {
  const Clustering c = round_assignment(result.x_relaxed);
  result.labels.assign(c.labels().begin(), c.labels().end());
  result.relaxed_objective = model.objective(result.x_relaxed);
  result.objective = model.objective(one_hot(result.labels, model.clusters()));
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace qpgc
