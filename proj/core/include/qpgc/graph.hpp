#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qpgc {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  double weight = 1.0;
};

struct Neighbor {
  Vertex vertex;
  double weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected simple graph on vertices 0..n-1, optionally weighted.
///
/// Immutable after construction. Adjacency is stored as CSR with each
/// neighbor list sorted by vertex id; unweighted graphs report weight 1.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Throws ContractViolation on self-loops,
  /// endpoints >= n, non-positive weights, or repeated pairs (either
  /// orientation). Deduplication is the loader's job, not this constructor's.
  Graph(std::size_t n, std::vector<Edge> edges, bool weighted = false);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool weighted() const noexcept { return weighted_; }

  /// Edges with u < v, sorted lexicographically.
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Sorted neighbor list of i. Throws ContractViolation if i >= n.
  std::span<const Neighbor> neighbors(Vertex i) const;

  std::size_t degree(Vertex i) const { return neighbors(i).size(); }

  /// Weight of edge (i, j), or 0 when absent.
  double weight(Vertex i, Vertex j) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t n_ = 0;
  bool weighted_ = false;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

struct EdgeListOptions {
  bool one_based = false;
  /// Forces the vertex count (for trailing isolated vertices). Must be at
  /// least max index + 1.
  std::optional<std::size_t> num_vertices;
};

struct LoadedGraph {
  Graph graph;
  /// Number of repeated edges that carried the same weight and were dropped.
  std::size_t duplicate_edges = 0;
};

/// Parses a whitespace-separated edge list: "u v" or "u v w" per line, '#'
/// starts a comment. A weight column on any line makes the graph weighted.
/// Throws InputError (with the 1-based line number) on malformed lines,
/// self-loops, non-positive weights, or repeated edges with conflicting weights.
LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
LoadedGraph load_edge_list_file(const std::string& path, const EdgeListOptions& options = {});

/// Writes one "u v" (or "u v w") line per edge, 0-based. A header comment
/// records n so trailing isolated vertices survive a round trip when the
/// reader is given the same count.
void write_edge_list(std::ostream& out, const Graph& g);

/// kappa = |E| / (n(n-1)/2). Throws UndefinedDensity for n < 2.
double overall_density(const Graph& g);

/// Label files hold one non-negative cluster id per line; line i is vertex i.
std::vector<int> read_labels(std::istream& in);
std::vector<int> read_labels_file(const std::string& path);
void write_labels(std::ostream& out, std::span<const int> labels);

}  // namespace qpgc
