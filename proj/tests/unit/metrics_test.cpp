#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpgc/assignment_problem.hpp"
#include "qpgc/errors.hpp"
#include "qpgc/metrics.hpp"
#include "qpgc/synth.hpp"
#include "support.hpp"

namespace qpgc {
namespace {

using testing::Rng;

std::vector<int> labels_of(const Clustering& c) { return {c.labels().begin(), c.labels().end()}; }

TEST(Rounding, Examples) {
  AssignmentVector x(2, 3);
  x(0, 0) = 0.2, x(0, 1) = 0.7, x(0, 2) = 0.1;
  x(1, 0) = 0.5, x(1, 1) = 0.5;
  EXPECT_EQ(labels_of(round_assignment(x)), (std::vector<int>{1, 0}));
  const std::vector<int> labels{2, 0, 1, 1, 2};
  EXPECT_EQ(labels_of(round_assignment(one_hot(labels, 3))), labels);
}

TEST(Rounding, IdempotentOnBinaryInputs) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = testing::uniform_int(rng, 1, 6);
    const Clustering once = round_assignment(testing::random_x(20, k, rng));
    const Clustering twice = round_assignment(one_hot(once.labels(), k));
    EXPECT_EQ(once, twice);
  }
}

TEST(IntraDensity, Examples) {
  const Graph tri = testing::disjoint_cliques({3});
  EXPECT_DOUBLE_EQ(intra_density(tri, Clustering({0, 0, 0}, 1), 0), 1.0);
  EXPECT_DOUBLE_EQ(intra_density(tri, Clustering({0, 1, 1}, 2), 0), 0.0);
  EXPECT_THROW(intra_density(tri, Clustering({0, 0, 0}, 2), 1), UndefinedDensity);
  EXPECT_THROW(intra_density(tri, Clustering({0, 0, 0}, 2), 2), ContractViolation);
}

TEST(InterDensity, Examples) {
  const Graph two = testing::disjoint_cliques({3, 3});
  EXPECT_DOUBLE_EQ(inter_density(two, Clustering({0, 0, 0, 1, 1, 1}, 2), 0, 1), 0.0);
  // K_{2,3}: sides {0,1} and {2,3,4}.
  std::vector<Edge> edges;
  for (Vertex a : {0u, 1u}) {
    for (Vertex b : {2u, 3u, 4u}) edges.push_back({a, b, 1.0});
  }
  const Graph k23(5, edges);
  EXPECT_DOUBLE_EQ(inter_density(k23, Clustering({0, 0, 1, 1, 1}, 2), 0, 1), 1.0);
  EXPECT_THROW(inter_density(k23, Clustering({0, 0, 0, 0, 0}, 2), 0, 1), UndefinedDensity);
}

TEST(QualityReport, G1PpmGroundTruth) {
  const SyntheticGraph sg = generate_preset(*find_preset("G1_PPM"), 7);
  const ClusterQuality q =
      quality_report(sg.graph, Clustering(sg.truth.labels, 5), GenerationProbabilities{0.9, 0.1});
  EXPECT_NEAR(q.kappa, 0.26, 0.01);
  EXPECT_NEAR(q.mean_intra, 0.90, 0.01);
  ASSERT_TRUE(q.mean_inter);
  EXPECT_NEAR(*q.mean_inter, 0.10, 0.01);
  EXPECT_TRUE(q.inequality_holds);
  EXPECT_EQ(q.effective_k, 5u);
}

TEST(QualityReport, CompleteGraphFailsStrictInequality) {
  // Both halves need two vertices; a singleton has intra density 0.
  for (std::size_t n = 4; n <= 9; ++n) {
    const Graph g = testing::disjoint_cliques({n});
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 2);
    const ClusterQuality q = quality_report(g, Clustering(labels, 2));
    EXPECT_DOUBLE_EQ(q.kappa, 1.0);
    EXPECT_DOUBLE_EQ(q.mean_intra, 1.0);
    EXPECT_FALSE(q.inequality_holds);
  }
}

TEST(QualityReport, EmptyClustersAreSkipped) {
  const Graph two = testing::disjoint_cliques({3, 3});
  const ClusterQuality q = quality_report(two, Clustering({0, 0, 0, 2, 2, 2}, 4));
  EXPECT_EQ(q.effective_k, 2u);
  EXPECT_FALSE(q.intra[1]);
  EXPECT_FALSE(q.intra[3]);
  EXPECT_DOUBLE_EQ(q.mean_intra, 1.0);
  ASSERT_TRUE(q.mean_inter);
  EXPECT_DOUBLE_EQ(*q.mean_inter, 0.0);
  EXPECT_TRUE(q.inter[0 * 4 + 2]);
  EXPECT_FALSE(q.inter[0 * 4 + 1]);
  EXPECT_FALSE(q.eps_intra);
}

TEST(QualityReport, SingleClusterHasNoInterMean) {
  const Graph tri = testing::disjoint_cliques({3});
  const ClusterQuality q = quality_report(tri, Clustering({0, 0, 0}, 1));
  EXPECT_FALSE(q.mean_inter);
  EXPECT_FALSE(q.inequality_holds);
  EXPECT_THROW(quality_report(Graph(1, {}), Clustering({0}, 1)), UndefinedDensity);
}

TEST(QualityReport, MatchesNaiveOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 2, 12);
    const std::size_t k = testing::uniform_int(rng, 1, 4);
    const Graph g = testing::random_graph(n, testing::uniform(rng), rng);
    const auto labels = testing::random_labels(n, k, rng);
    const ClusterQuality q = quality_report(g, Clustering(labels, k), GenerationProbabilities{0.7, 0.2});
    const auto ref = oracle::naive_densities(testing::adjacency(g), labels, k);
    ASSERT_LE(testing::rel_err_floor(q.kappa, ref.kappa, 1.0), 1e-12);
    ASSERT_LE(testing::rel_err_floor(q.mean_intra, ref.mean_intra, 1.0), 1e-12);
    ASSERT_EQ(q.mean_inter.has_value(), ref.mean_inter.has_value());
    if (q.mean_inter) ASSERT_LE(testing::rel_err_floor(*q.mean_inter, *ref.mean_inter, 1.0), 1e-12);
    for (std::size_t c = 0; c < k; ++c) {
      ASSERT_EQ(q.intra[c].has_value(), ref.intra[c].has_value());
      if (q.intra[c]) ASSERT_NEAR(*q.intra[c], *ref.intra[c], 1e-15);
      for (std::size_t b = 0; b < k; ++b) {
        if (b == c) continue;
        const auto& got = q.inter[c * k + b];
        ASSERT_EQ(got.has_value(), !std::isnan(ref.inter[c][b]));
        if (got) ASSERT_NEAR(*got, ref.inter[c][b], 1e-15);
      }
    }
    ASSERT_NEAR(*q.eps_intra, std::abs(ref.mean_intra - 0.7), 1e-12);
  }
}

TEST(QualityReport, ExhaustiveSmallGraphsAgreeWithEdgeCounts) {
  // Every graph on 5 vertices against every labeling into 2 clusters.
  for (std::uint64_t mask = 0; mask < (1U << 10); ++mask) {
    const Graph g = testing::graph_from_mask(5, mask);
    const auto adj = testing::adjacency(g);
    for (unsigned code = 0; code < 32; ++code) {
      std::vector<int> labels(5);
      for (std::size_t i = 0; i < 5; ++i) labels[i] = static_cast<int>(code >> i & 1U);
      const ClusterQuality q = quality_report(g, Clustering(labels, 2));
      const auto ref = oracle::naive_densities(adj, labels, 2);
      ASSERT_NEAR(q.mean_intra, ref.mean_intra, 1e-15);
      ASSERT_EQ(q.mean_inter.has_value(), ref.mean_inter.has_value());
      if (q.mean_inter) ASSERT_NEAR(*q.mean_inter, *ref.mean_inter, 1e-15);
    }
  }
}

TEST(QualityReport, PpmTruthSatisfiesInequality) {
  for (const char* name : {"G1_PPM", "G2_PPM", "G3_PPM"}) {
    const auto p = find_preset(name);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SyntheticGraph sg = generate_preset(*p, seed);
      const ClusterQuality q = quality_report(sg.graph, Clustering(sg.truth.labels, 5));
      ASSERT_GT(p->p_intra, q.kappa);
      ASSERT_GT(q.kappa, p->p_inter);
      EXPECT_TRUE(q.inequality_holds) << name << " seed " << seed;
    }
  }
}

TEST(Misclassified, Examples) {
  const Clustering a({0, 0, 1, 1, 2}, 3);
  EXPECT_EQ(misclassified_count(a, a), 0u);
  EXPECT_EQ(misclassified_count(Clustering({2, 2, 0, 0, 1}, 3), a), 0u);
  EXPECT_EQ(misclassified_count(Clustering({0, 0, 0, 1, 1}, 2), a), 2u);
  EXPECT_THROW(misclassified_count(Clustering({0, 0}, 1), a), ContractViolation);
}

TEST(Misclassified, RectangularMatching) {
  // Prediction with more clusters than truth: extra clusters count as wrong.
  EXPECT_EQ(misclassified_count(Clustering({0, 1, 2, 3}, 4), Clustering({0, 0, 1, 1}, 2)), 2u);
  EXPECT_EQ(misclassified_count(Clustering({0, 0, 1, 1}, 2), Clustering({0, 1, 2, 3}, 4)), 2u);
}

TEST(MisclassifiedProperty, MatchesPermutationOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 1, 30);
    const std::size_t ka = testing::uniform_int(rng, 1, 6);
    const std::size_t kb = testing::uniform_int(rng, 1, 6);
    const auto a = testing::random_labels(n, ka, rng);
    const auto b = testing::random_labels(n, kb, rng);
    ASSERT_EQ(misclassified_count(Clustering(a, ka), Clustering(b, kb)), oracle::naive_misclassified(a, b))
        << "trial " << trial;
  }
}

TEST(MisclassifiedProperty, PermutationInvariantAndSymmetric) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = testing::uniform_int(rng, 1, 7);
    const auto a = testing::random_labels(40, k, rng);
    const auto b = testing::random_labels(40, k, rng);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> relabeled(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) relabeled[i] = perm[static_cast<std::size_t>(a[i])];
    const Clustering ca(a, k), cb(b, k), cr(relabeled, k);
    ASSERT_EQ(misclassified_count(cr, cb), misclassified_count(ca, cb));
    ASSERT_EQ(misclassified_count(ca, cb), misclassified_count(cb, ca));
    ASSERT_EQ(misclassified_count(ca, ca), 0u);
  }
}

TEST(Assignment, SmallKnownCase) {
  // Best total 5 + 7 + 6 on the anti-diagonal-ish layout.
  const std::vector<double> w{1, 2, 5,  //
                              7, 1, 1,  //
                              1, 6, 2};
  EXPECT_EQ(max_weight_assignment(3, 3, w), (std::vector<int>{2, 0, 1}));
}

TEST(Assignment, RectangularLeavesRowsUnmatched) {
  const std::vector<double> w{1, 9, 8, 2, 3, 3};  // 3 rows x 2 cols
  const std::vector<int> m = max_weight_assignment(3, 2, w);
  EXPECT_EQ(m, (std::vector<int>{1, 0, -1}));
}

TEST(Clustering, Validation) {
  EXPECT_THROW(Clustering({0, 3}, 3), ContractViolation);
  EXPECT_THROW(Clustering({0, -1}, 3), ContractViolation);
  const Clustering c = Clustering::from_labels({0, 2, 2});
  EXPECT_EQ(c.num_clusters(), 3u);
  EXPECT_EQ(c.nonempty_clusters(), 2u);
  EXPECT_EQ(std::vector<std::size_t>(c.sizes().begin(), c.sizes().end()), (std::vector<std::size_t>{1, 0, 2}));
}

TEST(LabelingObjective, SumsSameLabelPairs) {
  const std::vector<double> full{0, 1, 2,  //
                                 1, 0, 4,  //
                                 2, 4, 0};
  const DistanceMatrix d = DistanceMatrix::from_dense(3, full);
  EXPECT_DOUBLE_EQ(labeling_objective(d, std::vector<int>{0, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(labeling_objective(d, std::vector<int>{0, 0, 0}), 7.0);
}

}  // namespace
}  // namespace qpgc
