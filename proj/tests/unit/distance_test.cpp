#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qpgc/distance.hpp"
#include "qpgc/errors.hpp"
#include "support.hpp"

namespace qpgc {
namespace {

using testing::Rng;

const Graph kTriangle(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
const Graph kPath(3, {{0, 1, 1.0}, {1, 2, 1.0}});
const Graph kStar(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});

Graph with_unit_weights(const Graph& g) {
  return Graph(g.num_vertices(), std::vector<Edge>(g.edges().begin(), g.edges().end()), true);
}

oracle::NaiveMetric naive(Metric m) {
  switch (m) {
    case Metric::kBurt: return oracle::NaiveMetric::kBurt;
    case Metric::kJaccard: return oracle::NaiveMetric::kJaccard;
    default: return oracle::NaiveMetric::kOtsukaOchiai;
  }
}

constexpr Metric kMetrics[] = {Metric::kBurt, Metric::kJaccard, Metric::kOtsukaOchiai};

TEST(Burt, Examples) {
  EXPECT_DOUBLE_EQ(burt(kPath)(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(burt(kTriangle)(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(burt(kStar)(0, 1), std::sqrt(2.0));
}

TEST(Jaccard, Examples) {
  EXPECT_DOUBLE_EQ(jaccard(kTriangle)(0, 1), 2.0 / 3.0);
  // 0 and 1 both see exactly {2, 3}.
  const Graph twins(4, {{0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}});
  EXPECT_DOUBLE_EQ(jaccard(twins)(0, 1), 0.0);
  const Graph isolated(3, {});
  EXPECT_DOUBLE_EQ(jaccard(isolated)(0, 1), 1.0);
}

TEST(OtsukaOchiai, Examples) {
  EXPECT_DOUBLE_EQ(otsuka_ochiai(kTriangle)(0, 1), 0.5);
  const Graph twins(4, {{0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}});
  EXPECT_NEAR(otsuka_ochiai(twins)(0, 1), 0.0, 1e-15);
  const Graph one_edge(3, {{1, 2, 1.0}});
  EXPECT_DOUBLE_EQ(otsuka_ochiai(one_edge)(0, 1), 1.0);
}

TEST(Jaccard, ClosedNeighborhoodCountsSelf) {
  // Closed sets: a_0 = {0,1,2} = a_1, so the distance vanishes.
  const DistanceMatrix d = jaccard(kTriangle, {.neighborhood = Neighborhood::kClosed});
  EXPECT_DOUBLE_EQ(d(0, 1), 0.0);
  EXPECT_EQ(d.neighborhood(), Neighborhood::kClosed);
  // Path: a_0 = {0,1}, a_2 = {1,2}.
  EXPECT_DOUBLE_EQ(jaccard(kPath, {.neighborhood = Neighborhood::kClosed})(0, 2), 2.0 / 3.0);
}

TEST(Distance, RejectsTinyGraphs) {
  for (Metric m : kMetrics) EXPECT_THROW(compute_distance(Graph(1, {}), m), ContractViolation);
}

TEST(Distance, MetricNames) {
  for (Metric m : kMetrics) EXPECT_EQ(parse_metric(to_string(m)), m);
  EXPECT_EQ(parse_metric("otsuka"), Metric::kOtsukaOchiai);
  EXPECT_FALSE(parse_metric("euclid"));
}

TEST(DistanceMatrix, FromDenseValidates) {
  const std::vector<double> ok{0, 1, 1, 0};
  EXPECT_DOUBLE_EQ(DistanceMatrix::from_dense(2, ok)(1, 0), 1.0);
  EXPECT_THROW(DistanceMatrix::from_dense(2, std::vector<double>{0, 1, 2, 0}), ContractViolation);
  EXPECT_THROW(DistanceMatrix::from_dense(2, std::vector<double>{1, 1, 1, 0}), ContractViolation);
  EXPECT_THROW(DistanceMatrix::from_dense(2, std::vector<double>{0, -1, -1, 0}), ContractViolation);
  EXPECT_THROW(DistanceMatrix::from_dense(2, std::vector<double>{0, NAN, NAN, 0}), ContractViolation);
}

TEST(DistanceMatrix, BinaryRoundTrip) {
  Rng rng(5);
  const Graph g = testing::random_graph(25, 0.3, rng);
  for (Precision prec : {Precision::kDouble, Precision::kSingle}) {
    const DistanceMatrix d = jaccard(g, {.neighborhood = Neighborhood::kClosed, .precision = prec});
    std::stringstream buf;
    write_distance_binary(buf, d);
    EXPECT_EQ(read_distance_binary(buf), d);
  }
  std::stringstream junk("not a dump");
  EXPECT_THROW(read_distance_binary(junk), InputError);
}

TEST(DistanceMatrix, TruncatedDumpRejected) {
  std::stringstream buf;
  write_distance_binary(buf, burt(kStar));
  const std::string s = buf.str();
  std::stringstream cut(s.substr(0, s.size() - 3));
  EXPECT_THROW(read_distance_binary(cut), InputError);
}

TEST(DistanceMatrix, CsvHasFullRows) {
  std::ostringstream out;
  write_distance_csv(out, jaccard(kTriangle));
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST(DistanceProperty, SinglePrecisionIsClose) {
  Rng rng(6);
  const Graph g = testing::random_graph(40, 0.2, rng);
  const DistanceMatrix a = jaccard(g);
  const DistanceMatrix b = jaccard(g, {.precision = Precision::kSingle});
  for (std::size_t k = 0; k < a.packed_size(); ++k) EXPECT_NEAR(a.packed(k), b.packed(k), 1e-7);
}

TEST(DistanceProperty, SymmetricNonnegativeZeroDiagonal) {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 2, 200);
    const Graph g = testing::random_graph(n, testing::uniform(rng, 0.0, 0.4), rng, trial % 3 == 0);
    for (Metric m : kMetrics) {
      const DistanceMatrix d = compute_distance(g, m);
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_EQ(d(i, i), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
          ASSERT_GE(d(i, j), 0.0);
          ASSERT_EQ(d(i, j), d(j, i));
          if (m != Metric::kBurt) ASSERT_LE(d(i, j), 1.0);
        }
      }
    }
  }
}

TEST(DistanceProperty, UnitWeightsReproduceUnweighted) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_graph(testing::uniform_int(rng, 2, 40), 0.3, rng);
    for (Metric m : kMetrics) {
      for (Neighborhood nb : {Neighborhood::kOpen, Neighborhood::kClosed}) {
        const DistanceMatrix a = compute_distance(g, m, {.neighborhood = nb});
        const DistanceMatrix b = compute_distance(with_unit_weights(g), m, {.neighborhood = nb});
        for (std::size_t k = 0; k < a.packed_size(); ++k) ASSERT_NEAR(a.packed(k), b.packed(k), 1e-15);
      }
    }
  }
}

TEST(DistanceProperty, JaccardIsOneExactlyForDisjointNeighborhoods) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const std::uint64_t masks = 1ULL << (n * (n - 1) / 2);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      const Graph g = testing::graph_from_mask(n, mask);
      const DistanceMatrix d = jaccard(g);
      for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) {
          bool shared = false;
          for (const Neighbor& a : g.neighbors(i)) shared = shared || g.weight(a.vertex, j) > 0.0;
          ASSERT_LE(d(i, j), 1.0);
          ASSERT_EQ(d(i, j) == 1.0, !shared) << "n=" << n << " mask=" << mask << " pair " << i << "," << j;
        }
      }
    }
  }
}

TEST(DistanceProperty, MatchesNaiveOnAllSmallGraphs) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const std::uint64_t masks = 1ULL << (n * (n - 1) / 2);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      const Graph g = testing::graph_from_mask(n, mask);
      const auto adj = testing::adjacency(g);
      for (Metric m : kMetrics) {
        for (bool closed : {false, true}) {
          if (m == Metric::kBurt && closed) continue;
          const DistanceMatrix d =
              compute_distance(g, m, {.neighborhood = closed ? Neighborhood::kClosed : Neighborhood::kOpen});
          const auto ref = oracle::naive_distances(adj, naive(m), closed);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) ASSERT_NEAR(d(i, j), ref[i][j], 1e-12) << "mask " << mask;
          }
        }
      }
    }
  }
}

TEST(DistanceProperty, WeightedMatchesNaive) {
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = testing::random_graph(testing::uniform_int(rng, 2, 25), 0.4, rng, true);
    const auto adj = testing::adjacency(g);
    for (Metric m : kMetrics) {
      const DistanceMatrix d = compute_distance(g, m);
      const auto ref = oracle::naive_distances(adj, naive(m));
      for (std::size_t i = 0; i < g.num_vertices(); ++i) {
        for (std::size_t j = 0; j < g.num_vertices(); ++j) {
          ASSERT_LE(testing::rel_err_floor(d(i, j), ref[i][j], 1.0), 1e-12);
        }
      }
    }
  }
}

TEST(DistanceProperty, ThreadCountDoesNotChangeResult) {
  Rng rng(10);
  const Graph g = testing::random_graph(120, 0.1, rng, true);
  for (Metric m : kMetrics) EXPECT_EQ(compute_distance(g, m, {.threads = 1}), compute_distance(g, m, {.threads = 4}));
}

}  // namespace
}  // namespace qpgc
