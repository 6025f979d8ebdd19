#include "qpgc/qp_newton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "qpgc/errors.hpp"

namespace qpgc {

void QpGcConfig::validate() const {
  if (!(theta0 > 0.0)) throw ContractViolation("qp-gc: theta0 must be > 0");
  if (!(theta_bar >= theta0)) throw ContractViolation("qp-gc: theta_bar must be >= theta0");
  if (!(theta_growth >= 1.0)) throw ContractViolation("qp-gc: theta_growth must be >= 1");
  if (!(feas_threshold >= 0.0)) throw ContractViolation("qp-gc: feas_threshold must be >= 0");
  if (!(subproblem_eps > 0.0)) throw ContractViolation("qp-gc: subproblem_eps must be > 0");
  if (support_stop_fraction && !(*support_stop_fraction >= 0.0 && *support_stop_fraction <= 1.0)) {
    throw ContractViolation("qp-gc: support_stop_fraction must lie in [0, 1]");
  }
  if (max_outer == 0) throw ContractViolation("qp-gc: max_outer must be >= 1");
  if (!(box_upper >= 1.0)) throw ContractViolation("qp-gc: box_upper must be >= 1");
  if (restarts == 0) throw ContractViolation("qp-gc: restarts must be >= 1");
}

QpGcConfig QpGcConfig::ppm() { return {}; }

QpGcConfig QpGcConfig::sbm() {
  QpGcConfig c;
  c.theta0 = 2500.0;
  c.theta_bar = 1e10;
  c.subproblem_eps = 2e-8;
  c.support_stop_fraction = 0.9;
  return c;
}

QpGcConfig QpGcConfig::real_world() {
  QpGcConfig c;
  c.theta0 = 20.0;
  c.subproblem_eps = 1e-5;
  c.feas_threshold = 0.01;
  return c;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double stationarity(const AssignmentVector& x, const AssignmentVector& g, double upper) {
  double w = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    w = std::max(w, std::abs(x[i] - std::clamp(x[i] - g[i], 0.0, upper)));
  }
  return w;
}

void check_finite(double v, const char* where) {
  if (!std::isfinite(v)) throw SolverFailure(std::string(where) + ": non-finite objective value");
}

void check_box(const AssignmentVector& x, double upper, const char* where) {
  for (double v : x.values()) {
    if (!(v >= 0.0 && v <= upper)) throw ContractViolation(std::string(where) + ": start point outside the box");
  }
}

}  // namespace

AssignmentVector projected_newton(const QuadraticModel& model, const PenaltyParams& p, AssignmentVector x,
                                  double eps, std::size_t max_inner, NewtonStats* stats,
                                  const IterateObserver& observer) {
  p.validate();
  check_box(x, p.box_upper, "projected_newton");
  const double upper = p.box_upper;
  const std::size_t len = x.size();
  NewtonStats st;

  std::vector<char> active(len);
  AssignmentVector gf(x.rows(), x.cols());
  AssignmentVector d(x.rows(), x.cols());
  AssignmentVector r(x.rows(), x.cols());
  AssignmentVector dir(x.rows(), x.cols());
  AssignmentVector hp(x.rows(), x.cols());
  AssignmentVector trial(x.rows(), x.cols());

  Evaluation ev = model.evaluate(x, p);
  for (;;) {
    check_finite(ev.value, "projected_newton");
    const AssignmentVector& g = ev.gradient;
    st.value = ev.value;
    st.stationarity = stationarity(x, g, upper);
    if (st.stationarity <= eps) {
      st.converged = true;
      break;
    }
    if (st.iterations >= max_inner) break;

    // Coordinates near a bound whose gradient pushes outward stay put.
    const double margin = std::min(1e-3, st.stationarity);
    for (std::size_t i = 0; i < len; ++i) {
      active[i] = (x[i] <= margin && g[i] > 0.0) || (x[i] >= upper - margin && g[i] < 0.0);
      gf[i] = active[i] ? 0.0 : g[i];
    }

    // Truncated CG on the free block of the Hessian.
    const double gnorm = std::sqrt(dot(gf.values(), gf.values()));
    const double cg_tol = std::min(0.5, std::sqrt(gnorm)) * gnorm;
    std::fill(d.values().begin(), d.values().end(), 0.0);
    for (std::size_t i = 0; i < len; ++i) r[i] = -gf[i];
    dir = r;
    double rr = dot(r.values(), r.values());
    bool fallback = false;
    for (std::size_t j = 0; j < 50; ++j) {
      model.hessian_product(dir, p, hp);
      for (std::size_t i = 0; i < len; ++i) {
        if (active[i]) hp[i] = 0.0;
      }
      const double curv = dot(dir.values(), hp.values());
      if (curv <= 1e-14 * dot(dir.values(), dir.values())) {
        fallback = j == 0;
        break;
      }
      ++st.cg_iterations;
      const double a = rr / curv;
      for (std::size_t i = 0; i < len; ++i) {
        d[i] += a * dir[i];
        r[i] -= a * hp[i];
      }
      const double rr_next = dot(r.values(), r.values());
      if (std::sqrt(rr_next) <= cg_tol) break;
      const double beta = rr_next / rr;
      for (std::size_t i = 0; i < len; ++i) dir[i] = r[i] + beta * dir[i];
      rr = rr_next;
    }
    if (fallback || dot(d.values(), gf.values()) >= 0.0) {
      ++st.fallbacks;
      for (std::size_t i = 0; i < len; ++i) d[i] = -gf[i];
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (active[i]) d[i] = -g[i];
    }

    // Armijo along the projected arc.
    double step = 1.0;
    bool accepted = false;
    Evaluation next;
    while (step >= 1e-20) {
      for (std::size_t i = 0; i < len; ++i) trial[i] = std::clamp(x[i] + step * d[i], 0.0, upper);
      double decrease = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        decrease += active[i] ? g[i] * (x[i] - trial[i]) : -step * g[i] * d[i];
      }
      if (!(decrease > 0.0)) break;  // the step no longer moves x
      next = model.evaluate(trial, p);
      check_finite(next.value, "projected_newton line search");
      if (-quadratic_change(x, trial, g, next.gradient) >= 1e-4 * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      st.stalled = true;
      break;
    }
    std::swap(x, trial);
    ev = std::move(next);
    ++st.iterations;
    if (observer) observer(x, ev.value);
  }

  if (stats) *stats = st;
  return x;
}

namespace {

SolveResult qp_gc_once(const QuadraticModel& model, const QpGcConfig& cfg, std::size_t restart) {
  const std::size_t n = model.vertices();
  const std::size_t k = model.clusters();
  SolveResult res;
  AssignmentVector x = random_start(n, k, cfg.seed, restart);
  double theta = cfg.theta0;
  double best_capped = std::numeric_limits<double>::infinity();
  std::size_t stall = 0;
  const double support_limit =
      cfg.support_stop_fraction ? *cfg.support_stop_fraction * static_cast<double>(n * k) : 0.0;

  for (std::size_t l = 0; l < cfg.max_outer; ++l) {
    const PenaltyParams p{theta, 0.0, cfg.box_upper};
    NewtonStats st;
    x = projected_newton(model, p, std::move(x), cfg.subproblem_eps, cfg.max_inner, &st);
    res.inner_iters += st.iterations;
    res.outer_iters = l + 1;
    res.final_value = st.value;
    const double h = max_abs(row_residuals(x));
    res.feas_trace.push_back(h);
    res.theta_trace.push_back(theta);

    if (h <= cfg.feas_threshold && (st.converged || st.stalled)) {
      res.stop_reason = StopReason::kFeasible;
      break;
    }
    if (cfg.support_stop_fraction &&
        static_cast<double>(support_set(x).size()) >= support_limit) {
      res.stop_reason = StopReason::kSupportStop;
      break;
    }
    if (theta >= cfg.theta_bar) {
      if (h < best_capped) {
        best_capped = h;
        stall = 0;
      } else if (++stall >= 3) {
        res.stop_reason = StopReason::kThetaCapped;
        break;
      }
    }
    if (h > cfg.feas_threshold && theta < cfg.theta_bar) theta *= cfg.theta_growth;
  }
  res.x_relaxed = std::move(x);
  res.restart = restart;
  return res;
}

}  // namespace

SolveResult solve_qp_gc(const QuadraticModel& model, const QpGcConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t dv0 = model.op().products();
  const std::uint64_t hv0 = model.hessian_products();

  SolveResult best;
  if (model.clusters() == 1) {
    // The all-ones vector is the only feasible point.
    best.x_relaxed = AssignmentVector(model.vertices(), 1, 1.0);
    best.outer_iters = 1;
    best.feas_trace = {0.0};
    best.theta_trace = {cfg.theta0};
    best.stop_reason = StopReason::kFeasible;
    best.final_value = model.penalty_value(best.x_relaxed, {cfg.theta0, 0.0, cfg.box_upper}).value;
  } else {
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
      SolveResult cur = qp_gc_once(model, cfg, r);
      if (r == 0 || cur.final_value < best.final_value) best = std::move(cur);
    }
  }
  finish_result(model, best);
  best.dv_products = model.op().products() - dv0;
  best.hessian_products = model.hessian_products() - hv0;
  best.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return best;
}

SolveResult solve_qp_gc(const DistanceMatrix& d, std::size_t k, const QpGcConfig& cfg) {
  cfg.validate();
  const DistanceOperator op(d, cfg.kernel);
  const QuadraticModel model(op, k);
  return solve_qp_gc(model, cfg);
}

}  // namespace qpgc
