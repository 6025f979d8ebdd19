#pragma once

// Random instance generators shared by the unit tests. Everything is seeded
// from std::mt19937_64 so a failing case can be replayed from its seed.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qpgc/distance.hpp"
#include "qpgc/graph.hpp"
#include "qpgc/model.hpp"
#include "qpgc/oracle.hpp"

namespace qpgc::testing {

using Rng = std::mt19937_64;
using oracle::Matrix;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// G(n, p); with `weighted`, weights uniform on [0.5, 3).
inline Graph random_graph(std::size_t n, double p, Rng& rng, bool weighted = false) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform(rng) < p) {
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), weighted ? uniform(rng, 0.5, 3.0) : 1.0});
      }
    }
  }
  return Graph(n, std::move(edges), weighted);
}

/// Graph from the bits of `mask` over the lexicographic pairs of n vertices.
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++bit) {
      if (mask >> bit & 1U) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

/// Disjoint cliques of the given sizes, vertices numbered block by block.
inline Graph disjoint_cliques(const std::vector<std::size_t>& sizes, std::vector<int>* labels = nullptr) {
  std::vector<Edge> edges;
  std::size_t start = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    for (std::size_t i = start; i < start + sizes[b]; ++i) {
      if (labels) labels->push_back(static_cast<int>(b));
      for (std::size_t j = i + 1; j < start + sizes[b]; ++j) {
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), 1.0});
      }
    }
    start += sizes[b];
  }
  return Graph(start, std::move(edges));
}

inline Matrix adjacency(const Graph& g) {
  Matrix a(g.num_vertices(), std::vector<double>(g.num_vertices(), 0.0));
  for (const Edge& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = e.weight;
  return a;
}

inline Matrix to_matrix(const DistanceMatrix& d) {
  Matrix m(d.size(), std::vector<double>(d.size(), 0.0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) m[i][j] = d(i, j);
  }
  return m;
}

inline Matrix to_matrix(const AssignmentVector& x) {
  Matrix m(x.rows(), std::vector<double>(x.cols(), 0.0));
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < x.cols(); ++k) m[i][k] = x(i, k);
  }
  return m;
}

/// Symmetric, zero diagonal, entries uniform on [0, scale).
inline DistanceMatrix random_distance(std::size_t n, Rng& rng, double scale = 1.0) {
  DistanceMatrix d(n, Metric::kCustom);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, uniform(rng, 0.0, scale));
  }
  return d;
}

inline AssignmentVector random_x(std::size_t n, std::size_t k, Rng& rng, double lo = 0.0, double hi = 1.0) {
  AssignmentVector x(n, k);
  for (double& v : x.values()) v = uniform(rng, lo, hi);
  return x;
}

inline std::vector<int> random_labels(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<int> labels(n);
  for (int& l : labels) l = static_cast<int>(uniform_int(rng, 0, k - 1));
  return labels;
}

inline double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

/// Relative error with an absolute floor, for quantities that may be ~0.
inline double rel_err_floor(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline std::string data_file(const std::string& name) { return std::string(QPGC_TEST_DATA_DIR) + "/" + name; }

}  // namespace qpgc::testing
