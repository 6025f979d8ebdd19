#include <gtest/gtest.h>

#include <cmath>

#include "qpgc/distance.hpp"
#include "qpgc/errors.hpp"
#include "qpgc/metrics.hpp"
#include "qpgc/qpr_spg.hpp"
#include "qpgc/synth.hpp"
#include "support.hpp"

namespace qpgc {
namespace {

using testing::Rng;

QprGcConfig with_seed(QprGcConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  return cfg;
}

TEST(LambdaSchedule, Examples) {
  const QprGcConfig cfg = QprGcConfig::ppm();
  EXPECT_EQ(lambda_schedule(0, cfg), 1.0);
  EXPECT_EQ(lambda_schedule(100, cfg), 1e-7);
  EXPECT_EQ(lambda_schedule(250, cfg), 1e-7);
  EXPECT_LE(testing::rel_err(lambda_schedule(50, cfg), std::pow(10.0, -3.5)), 1e-14);
  QprGcConfig bad = cfg;
  bad.lambda0 = 0.0;
  EXPECT_THROW(lambda_schedule(3, bad), ContractViolation);
  bad.lambda_min = 0.0;
  EXPECT_EQ(lambda_schedule(3, bad), 0.0);
}

TEST(LambdaSchedule, LogLinearDecay) {
  const QprGcConfig cfg = QprGcConfig::sbm();
  for (std::size_t l = 1; l < 100; ++l) {
    const double ratio = lambda_schedule(l, cfg) / lambda_schedule(l - 1, cfg);
    EXPECT_NEAR(ratio, std::pow(1e-7, 0.01), 1e-12);
  }
}

TEST(QprConfig, PresetValues) {
  const QprGcConfig ppm = QprGcConfig::ppm();
  EXPECT_EQ(ppm.theta_fixed, 300.0);
  EXPECT_EQ(ppm.lambda0, 1.0);
  EXPECT_EQ(ppm.lambda_min, 1e-7);
  EXPECT_EQ(ppm.lambda_decay_iters, 100u);
  EXPECT_EQ(ppm.bb_alpha0, 0.1);
  EXPECT_EQ(ppm.eta, 0.5);
  EXPECT_EQ(ppm.gamma, 0.5);
  EXPECT_EQ(ppm.tol, 1e-6);
  EXPECT_EQ(ppm.theta_growth, 1.0);
  EXPECT_EQ(ppm.alpha_min, 1e-10);
  EXPECT_EQ(ppm.alpha_max, 1e10);
  const QprGcConfig sbm = QprGcConfig::sbm();
  EXPECT_GE(sbm.theta_fixed, 1000.0);
  EXPECT_LE(sbm.theta_fixed, 3000.0);
  EXPECT_EQ(sbm.lambda0, 0.1);
  EXPECT_EQ(sbm.lambda_min, 1e-8);
  EXPECT_EQ(sbm.tol, 1e-8);
  EXPECT_EQ(QprGcConfig::football().memory_m, 28u);
  EXPECT_EQ(QprGcConfig::karate().memory_m, 5u);
}

TEST(QprConfig, Validation) {
  const auto invalid = [](auto mutate) {
    QprGcConfig c = QprGcConfig::ppm();
    mutate(c);
    return c;
  };
  EXPECT_THROW(invalid([](QprGcConfig& c) { c.eta = 1.0; }).validate(), ContractViolation);
  EXPECT_THROW(invalid([](QprGcConfig& c) { c.gamma = 0.0; }).validate(), ContractViolation);
  EXPECT_THROW(invalid([](QprGcConfig& c) { c.memory_m = 0; }).validate(), ContractViolation);
  EXPECT_THROW(invalid([](QprGcConfig& c) { c.lambda_min = 2.0; }).validate(), ContractViolation);
  EXPECT_THROW(invalid([](QprGcConfig& c) { c.box_upper = 0.5; }).validate(), ContractViolation);
}

TEST(SolveQprGc, G1PpmExactRecovery) {
  const SyntheticGraph sg = generate_preset(*find_preset("G1_PPM"), 11);
  const SolveResult r = solve_qpr_gc(jaccard(sg.graph), 5, with_seed(QprGcConfig::ppm(), 11));
  const ClusterQuality q =
      quality_report(sg.graph, Clustering(r.labels, 5), GenerationProbabilities{0.9, 0.1});
  EXPECT_EQ(misclassified_count(Clustering(r.labels, 5), Clustering(sg.truth.labels, 5)), 0u);
  EXPECT_TRUE(q.inequality_holds);
}

TEST(SolveQprGc, SeparatesTwoTriangles) {
  const DistanceMatrix d = jaccard(testing::disjoint_cliques({3, 3}));
  const std::vector<int> truth{0, 0, 0, 1, 1, 1};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SolveResult r = solve_qpr_gc(d, 2, with_seed(QprGcConfig::ppm(), seed));
    EXPECT_EQ(misclassified_count(Clustering(r.labels, 2), Clustering(truth, 2)), 0u) << "seed " << seed;
  }
}

TEST(SolveQprGc, DegenerateObjectiveGivesRowStochasticPoint) {
  const DistanceMatrix d(6, Metric::kCustom);
  QprGcConfig cfg = QprGcConfig::ppm();
  cfg.lambda0 = 0.0;
  cfg.lambda_min = 0.0;
  cfg.theta_fixed = 1e6;
  cfg.max_outer = 5;
  const SolveResult r = solve_qpr_gc(d, 3, cfg);
  for (double res : row_residuals(r.x_relaxed)) EXPECT_NEAR(res, 0.0, 1e-6);
  for (int l : r.labels) {
    EXPECT_GE(l, 0);
    EXPECT_LT(l, 3);
  }
}

TEST(SolveQprGc, ZeroBlockStopReturnsPreviousIterate) {
  // Two vertices, one cluster, a large distance and a weak penalty: the
  // subproblem minimum pushes one vertex to zero.
  const std::vector<double> full{0.0, 100.0, 100.0, 0.0};
  const DistanceMatrix d = DistanceMatrix::from_dense(2, full);
  QprGcConfig cfg = QprGcConfig::ppm();
  cfg.theta_fixed = 1.0;
  const SolveResult r = solve_qpr_gc(d, 1, cfg);
  EXPECT_EQ(r.stop_reason, StopReason::kZeroBlock);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_GT(r.x_relaxed(i, 0), 0.0);

  cfg.zero_block_stop = false;
  cfg.max_outer = 3;
  EXPECT_NE(solve_qpr_gc(d, 1, cfg).stop_reason, StopReason::kZeroBlock);
}

TEST(SolveQprGc, BookkeepingAndDeterminism) {
  Rng rng(3);
  const DistanceMatrix d = jaccard(testing::random_graph(30, 0.3, rng));
  const SolveResult a = solve_qpr_gc(d, 3, with_seed(QprGcConfig::ppm(), 4));
  const SolveResult b = solve_qpr_gc(d, 3, with_seed(QprGcConfig::ppm(), 4));
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.x_relaxed, b.x_relaxed);
  EXPECT_EQ(a.lambda_trace.size(), a.feas_trace.size());
  EXPECT_EQ(a.hessian_products, 0u);
  for (double t : a.theta_trace) EXPECT_EQ(t, 300.0);
  EXPECT_NEAR(a.objective, labeling_objective(d, a.labels), 1e-12);
}

TEST(SolveQprGc, ThetaGrowthEscapeHatch) {
  Rng rng(4);
  const DistanceMatrix d = testing::random_distance(8, rng);
  QprGcConfig cfg = QprGcConfig::ppm();
  cfg.theta_growth = 2.0;
  cfg.max_outer = 4;
  cfg.zero_block_stop = false;
  const SolveResult r = solve_qpr_gc(d, 2, cfg);
  ASSERT_EQ(r.theta_trace.size(), 4u);
  EXPECT_EQ(r.theta_trace[3], 2400.0);
}

struct Tiny {
  DistanceMatrix d;
  DistanceOperator op;
  QuadraticModel model;
  Tiny(DistanceMatrix dm, std::size_t k) : d(std::move(dm)), op(d), model(op, k) {}
};

TEST(Spg, StationaryStartNeedsNoStep) {
  Tiny t(jaccard(testing::disjoint_cliques({3, 3}), {.neighborhood = Neighborhood::kClosed}), 2);
  const AssignmentVector x0 = one_hot(std::vector<int>{0, 0, 0, 1, 1, 1}, 2);
  SpgStats st;
  const AssignmentVector x = spg(t.model, {50.0, 0.0, 1.0}, x0, QprGcConfig::ppm(), &st);
  EXPECT_EQ(x, x0);
  EXPECT_EQ(st.iterations, 0u);
  EXPECT_TRUE(st.converged);
}

TEST(Spg, OneDimensionalQuadratic) {
  Tiny t(DistanceMatrix(1, Metric::kCustom), 1);
  QprGcConfig cfg = QprGcConfig::ppm();
  for (double lambda : {0.0, 0.25, 1.0}) {
    SpgStats st;
    const AssignmentVector x = spg(t.model, {1.0, lambda, 1.0}, AssignmentVector(1, 1, 0.3), cfg, &st);
    EXPECT_NEAR(x[0], 1.0 / (1.0 + 2 * lambda), cfg.tol) << "lambda " << lambda;
    EXPECT_LE(st.iterations, 5u);
    EXPECT_TRUE(st.converged);
  }
}

TEST(Spg, MatchesMultiStartOracle) {
  Rng rng(5);
  QprGcConfig cfg = QprGcConfig::ppm();
  cfg.tol = 1e-10;
  cfg.max_inner = 5000;
  for (int trial = 0; trial < 10; ++trial) {
    Tiny t(testing::random_distance(6, rng), 2);
    const double lambda = 0.05;
    const PenaltyParams p{30.0, lambda, 1.0};
    const double reference =
        oracle::multistart_min(testing::to_matrix(t.d), 2, p.theta, lambda, 1.0, 30, 200 + trial);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < 30; ++s) {
      const AssignmentVector x = spg(t.model, p, random_start(6, 2, trial, s), cfg);
      best = std::min(best, t.model.value(x, p));
    }
    EXPECT_NEAR(best, reference, 1e-6) << "trial " << trial;
  }
}

TEST(SpgProperty, NonmonotoneAcceptanceAndBb1Steps) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 3, 25);
    const std::size_t k = testing::uniform_int(rng, 2, 4);
    Tiny t(jaccard(testing::random_graph(n, 0.3, rng)), k);
    QprGcConfig cfg = QprGcConfig::ppm();
    cfg.memory_m = testing::uniform_int(rng, 1, 10);
    const PenaltyParams p{300.0, testing::uniform(rng, 0.0, 1.0), 1.0};
    SpgStats st;
    st.record_steps = true;
    const std::uint64_t hv = t.model.hessian_products();
    spg(t.model, p, random_start(n, k, trial), cfg, &st);
    ASSERT_EQ(st.steps.size(), st.iterations);
    for (const SpgStep& s : st.steps) {
      ASSERT_LT(s.slope, 0.0);
      ASSERT_LE(s.value, s.reference + cfg.gamma * s.step * s.slope);
      ASSERT_LE(s.value, s.reference);
      if (s.sty > 0.0) {
        ASSERT_EQ(s.alpha, std::clamp(s.sts / s.sty, cfg.alpha_min, cfg.alpha_max));
      } else {
        ASSERT_EQ(s.alpha, cfg.bb_alpha0);
      }
    }
    EXPECT_EQ(st.hessian_products, 0u);
    EXPECT_EQ(t.model.hessian_products(), hv);
  }
}

TEST(SpgProperty, WindowOfOneIsMonotone) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Tiny t(testing::random_distance(12, rng), 3);
    QprGcConfig cfg = QprGcConfig::ppm();
    cfg.memory_m = 1;
    const PenaltyParams p{100.0, 0.01, 1.0};
    double last = t.model.value(random_start(12, 3, trial), p);
    spg(t.model, p, random_start(12, 3, trial), cfg, nullptr, [&](const AssignmentVector& x, double value) {
      EXPECT_LE(value, last);
      last = value;
      for (double v : x.values()) {
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
      }
    });
  }
}

TEST(SpgProperty, IteratesStayInLargerBox) {
  Rng rng(8);
  Tiny t(testing::random_distance(10, rng), 2);
  QprGcConfig cfg = QprGcConfig::ppm();
  cfg.box_upper = 3.0;
  spg(t.model, {300.0, 0.0, 3.0}, random_start(10, 2, 1), cfg, nullptr, [&](const AssignmentVector& x, double) {
    for (double v : x.values()) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 3.0);
    }
  });
}

TEST(QprGcProperty, LargeThetaEndsNearlyFeasible) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 4, 25);
    const std::size_t k = testing::uniform_int(rng, 2, 4);
    const DistanceMatrix d = jaccard(testing::random_graph(n, 0.3, rng));
    QprGcConfig cfg = with_seed(QprGcConfig::ppm(), trial);
    cfg.theta_fixed = 1e4;
    cfg.lambda_min = 1e-10;
    const SolveResult r = solve_qpr_gc(d, k, cfg);
    EXPECT_LE(max_abs(row_residuals(r.x_relaxed)), 0.01) << "trial " << trial;
  }
}

}  // namespace
}  // namespace qpgc
