#include "qpgc/qpr_spg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <string>

#include "qpgc/errors.hpp"

namespace qpgc {

void QprGcConfig::validate() const {
  if (!(theta_fixed > 0.0)) throw ContractViolation("qpr-gc: theta must be > 0");
  if (!(theta_growth >= 1.0)) throw ContractViolation("qpr-gc: theta_growth must be >= 1");
  if (!(lambda0 >= 0.0 && lambda_min >= 0.0)) throw ContractViolation("qpr-gc: lambda values must be >= 0");
  if (!(lambda_min <= lambda0)) throw ContractViolation("qpr-gc: lambda_min must be <= lambda0");
  if (lambda_decay_iters == 0) throw ContractViolation("qpr-gc: lambda_decay_iters must be >= 1");
  if (!(alpha_min > 0.0 && alpha_min <= alpha_max)) throw ContractViolation("qpr-gc: need 0 < alpha_min <= alpha_max");
  if (!(bb_alpha0 > 0.0)) throw ContractViolation("qpr-gc: bb_alpha0 must be > 0");
  if (memory_m == 0) throw ContractViolation("qpr-gc: memory_m must be >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw ContractViolation("qpr-gc: eta must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ContractViolation("qpr-gc: gamma must lie in (0, 1)");
  if (!(tol > 0.0)) throw ContractViolation("qpr-gc: tol must be > 0");
  if (max_outer == 0) throw ContractViolation("qpr-gc: max_outer must be >= 1");
  if (!(box_upper >= 1.0)) throw ContractViolation("qpr-gc: box_upper must be >= 1");
  if (restarts == 0) throw ContractViolation("qpr-gc: restarts must be >= 1");
}

QprGcConfig QprGcConfig::ppm() { return {}; }

QprGcConfig QprGcConfig::sbm() {
  QprGcConfig c;
  c.theta_fixed = 2000.0;
  c.lambda0 = 0.1;
  c.lambda_min = 1e-8;
  c.eta = 0.6;
  c.gamma = 0.8;
  c.tol = 1e-8;
  return c;
}

QprGcConfig QprGcConfig::karate() {
  QprGcConfig c;
  c.theta_fixed = 250.0;
  c.memory_m = 5;
  c.tol = 1e-7;
  return c;
}

QprGcConfig QprGcConfig::football() {
  QprGcConfig c;
  c.theta_fixed = 220.0;
  c.memory_m = 28;
  c.eta = 0.6;
  c.gamma = 0.8;
  c.tol = 1e-6;
  return c;
}

double lambda_schedule(std::size_t l, const QprGcConfig& cfg) {
  if (cfg.lambda0 == 0.0) {
    if (cfg.lambda_min > 0.0) throw ContractViolation("lambda_schedule: lambda0 = 0 needs lambda_min = 0");
    return 0.0;
  }
  if (cfg.lambda_decay_iters == 0) throw ContractViolation("lambda_schedule: decay length must be >= 1");
  const std::size_t t = cfg.lambda_decay_iters;
  if (l >= t) return cfg.lambda_min;
  if (l == 0) return cfg.lambda0;
  if (cfg.lambda_min == 0.0) return 0.0;
  const double frac = static_cast<double>(l) / static_cast<double>(t);
  return cfg.lambda0 * std::pow(cfg.lambda_min / cfg.lambda0, frac);
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool has_zero_block(const AssignmentVector& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto r = x.row(i);
    if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) return true;
  }
  return false;
}

}  // namespace

AssignmentVector spg(const QuadraticModel& model, const PenaltyParams& p, AssignmentVector x,
                     const QprGcConfig& cfg, SpgStats* stats, const IterateObserver& observer) {
  p.validate();
  cfg.validate();
  const double upper = p.box_upper;
  for (double v : x.values()) {
    if (!(v >= 0.0 && v <= upper)) throw ContractViolation("spg: start point outside the box");
  }
  const std::size_t len = x.size();
  const std::uint64_t hv0 = model.hessian_products();
  SpgStats st;
  if (stats) st.record_steps = stats->record_steps;

  Evaluation ev = model.evaluate(x, p);
  if (!std::isfinite(ev.value)) throw SolverFailure("spg: non-finite objective value");
  // Values are carried forward by exact quadratic increments so that the
  // acceptance test keeps its meaning when h is large and steps are tiny.
  double current = ev.value;
  std::deque<double> history{current};
  double alpha = cfg.bb_alpha0;
  AssignmentVector d(x.rows(), x.cols());
  AssignmentVector trial(x.rows(), x.cols());

  for (;;) {
    const AssignmentVector& g = ev.gradient;
    for (std::size_t i = 0; i < len; ++i) d[i] = std::clamp(x[i] - alpha * g[i], 0.0, upper) - x[i];
    st.value = current;
    st.direction_norm = max_abs(d.values());
    if (st.direction_norm <= cfg.tol) {
      st.converged = true;
      break;
    }
    if (st.iterations >= cfg.max_inner) break;

    const double slope = dot(g.values(), d.values());
    const double reference = *std::max_element(history.begin(), history.end());
    double step = 1.0;
    bool accepted = false;
    double candidate = current;
    Evaluation next;
    while (step >= 1e-20) {
      for (std::size_t i = 0; i < len; ++i) trial[i] = std::clamp(x[i] + step * d[i], 0.0, upper);
      next = model.evaluate(trial, p);
      if (!std::isfinite(next.value)) throw SolverFailure("spg: non-finite objective value in line search");
      candidate = current + quadratic_change(x, trial, g, next.gradient);
      if (candidate <= reference + cfg.gamma * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.eta;
    }
    if (!accepted) {
      st.stalled = true;
      break;
    }

    double sts = 0.0;
    double sty = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      const double s = trial[i] - x[i];
      const double y = next.gradient[i] - g[i];
      sts += s * s;
      sty += s * y;
    }
    alpha = sty <= 0.0 ? cfg.bb_alpha0 : std::clamp(sts / sty, cfg.alpha_min, cfg.alpha_max);
    if (st.record_steps) st.steps.push_back({reference, candidate, slope, step, sts, sty, alpha});

    std::swap(x, trial);
    ev = std::move(next);
    current = candidate;
    history.push_back(current);
    if (history.size() > cfg.memory_m) history.pop_front();
    ++st.iterations;
    if (observer) observer(x, current);
  }

  st.hessian_products = model.hessian_products() - hv0;
  if (stats) *stats = std::move(st);
  return x;
}

namespace {

SolveResult qpr_gc_once(const QuadraticModel& model, const QprGcConfig& cfg, std::size_t restart) {
  SolveResult res;
  AssignmentVector x = random_start(model.vertices(), model.clusters(), cfg.seed, restart);
  double theta = cfg.theta_fixed;
  PenaltyParams last{theta, lambda_schedule(0, cfg), cfg.box_upper};
  res.final_value = model.value(x, last);

  for (std::size_t l = 0; l < cfg.max_outer; ++l) {
    const PenaltyParams p{theta, lambda_schedule(l, cfg), cfg.box_upper};
    SpgStats st;
    AssignmentVector next = spg(model, p, x, cfg, &st);
    res.inner_iters += st.iterations;
    res.outer_iters = l + 1;
    if (cfg.zero_block_stop && has_zero_block(next)) {
      res.stop_reason = StopReason::kZeroBlock;
      break;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) change = std::max(change, std::abs(next[i] - x[i]));
    x = std::move(next);
    last = p;
    res.final_value = st.value;
    res.feas_trace.push_back(max_abs(row_residuals(x)));
    res.theta_trace.push_back(theta);
    res.lambda_trace.push_back(p.lambda);
    if (l >= cfg.lambda_decay_iters && change <= cfg.tol) {
      res.stop_reason = StopReason::kConverged;
      break;
    }
    theta *= cfg.theta_growth;
  }
  res.x_relaxed = std::move(x);
  res.restart = restart;
  return res;
}

}  // namespace

SolveResult solve_qpr_gc(const QuadraticModel& model, const QprGcConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t dv0 = model.op().products();
  const std::uint64_t hv0 = model.hessian_products();

  SolveResult best;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    SolveResult cur = qpr_gc_once(model, cfg, r);
    if (r == 0 || cur.final_value < best.final_value) best = std::move(cur);
  }
  finish_result(model, best);
  best.dv_products = model.op().products() - dv0;
  best.hessian_products = model.hessian_products() - hv0;
  best.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return best;
}

SolveResult solve_qpr_gc(const DistanceMatrix& d, std::size_t k, const QprGcConfig& cfg) {
  cfg.validate();
  const DistanceOperator op(d, cfg.kernel);
  const QuadraticModel model(op, k);
  return solve_qpr_gc(model, cfg);
}

}  // namespace qpgc
