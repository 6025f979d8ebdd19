#include "qpgc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <string>
#include <utility>

#include "qpgc/errors.hpp"

namespace qpgc {

Graph::Graph(std::size_t n, std::vector<Edge> edges, bool weighted)
    : n_(n), weighted_(weighted), edges_(std::move(edges)) {
  if (n_ > std::numeric_limits<Vertex>::max()) {
    throw ContractViolation("graph: vertex count exceeds 32-bit range");
  }
  for (Edge& e : edges_) {
    if (e.u == e.v) {
      throw ContractViolation("graph: self-loop on vertex " + std::to_string(e.u));
    }
    if (e.u >= n_ || e.v >= n_) {
      throw ContractViolation("graph: edge endpoint out of range");
    }
    if (!weighted_) e.weight = 1.0;
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ContractViolation("graph: edge weights must be positive and finite");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
      throw ContractViolation("graph: duplicate edge (" + std::to_string(edges_[k].u) + ", " +
                              std::to_string(edges_[k].v) + ")");
    }
  }

  std::vector<std::size_t> degree(n_, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so appending in this order keeps every list
  // sorted except for the "v side" entries, which we sort afterwards.
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t i = 0; i < n_; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

std::span<const Neighbor> Graph::neighbors(Vertex i) const {
  if (i >= n_) {
    throw ContractViolation("graph: vertex " + std::to_string(i) + " out of range");
  }
  return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

double Graph::weight(Vertex i, Vertex j) const {
  const auto list = neighbors(i);
  const auto it = std::lower_bound(list.begin(), list.end(), j,
                                   [](const Neighbor& nb, Vertex v) { return nb.vertex < v; });
  return (it != list.end() && it->vertex == j) ? it->weight : 0.0;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
}

namespace {

bool parse_index(std::string_view token, long long& out) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::map<std::pair<Vertex, Vertex>, double> seen;
  std::vector<Edge> edges;
  bool weighted = false;
  std::size_t duplicates = 0;
  long long max_index = -1;
  std::size_t header_vertices = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      // "# vertices N ..." as written by write_edge_list
      std::istringstream comment(line.substr(hash + 1));
      std::string key;
      std::size_t count = 0;
      if (comment >> key && key == "vertices" && comment >> count) header_vertices = count;
      line.resize(hash);
    }
    std::istringstream fields(line);
    std::string tu, tv, tw, extra;
    if (!(fields >> tu)) continue;  // blank or comment-only
    if (!(fields >> tv)) throw InputError("edge list: expected 'u v [w]'", line_no);
    const bool has_weight = static_cast<bool>(fields >> tw);
    if (fields >> extra) throw InputError("edge list: too many columns", line_no);

    long long u = 0, v = 0;
    if (!parse_index(tu, u) || !parse_index(tv, v)) {
      throw InputError("edge list: vertex ids must be integers", line_no);
    }
    if (options.one_based) {
      --u;
      --v;
    }
    if (u < 0 || v < 0) throw InputError("edge list: negative vertex id", line_no);
    if (u > std::numeric_limits<Vertex>::max() - 1 || v > std::numeric_limits<Vertex>::max() - 1) {
      throw InputError("edge list: vertex id too large", line_no);
    }
    if (u == v) throw InputError("edge list: self-loop", line_no);

    double w = 1.0;
    if (has_weight) {
      weighted = true;
      std::size_t used = 0;
      try {
        w = std::stod(tw, &used);
      } catch (...) {
        used = 0;
      }
      if (used != tw.size()) throw InputError("edge list: weight is not a number", line_no);
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw InputError("edge list: weight must be positive", line_no);
      }
    }

    const std::pair<Vertex, Vertex> key{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
    if (auto it = seen.find(key); it != seen.end()) {
      if (it->second != w) throw InputError("edge list: duplicate edge with conflicting weight", line_no);
      ++duplicates;
      continue;
    }
    seen.emplace(key, w);
    edges.push_back({key.first, key.second, w});
    max_index = std::max({max_index, u, v});
  }

  std::size_t n = std::max(static_cast<std::size_t>(max_index + 1), header_vertices);
  if (options.num_vertices) {
    n = static_cast<std::size_t>(max_index + 1);
    if (*options.num_vertices < n) {
      throw InputError("edge list: --num-vertices smaller than the largest vertex id + 1");
    }
    n = *options.num_vertices;
  }
  if (n == 0) throw InputError("edge list: no vertices");
  return {Graph(n, std::move(edges), weighted), duplicates};
}

LoadedGraph load_edge_list_file(const std::string& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list '" + path + "'");
  return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# vertices " << g.num_vertices() << " edges " << g.num_edges() << "\n";
  const auto old_precision = out.precision(17);
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (g.weighted()) out << ' ' << e.weight;
    out << '\n';
  }
  out.precision(old_precision);
}

double overall_density(const Graph& g) {
  const double n = static_cast<double>(g.num_vertices());
  if (g.num_vertices() < 2) throw UndefinedDensity("overall density needs at least two vertices");
  return static_cast<double>(g.num_edges()) / (0.5 * n * (n - 1.0));
}

std::vector<int> read_labels(std::istream& in) {
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string token, extra;
    if (!(fields >> token)) continue;
    if (fields >> extra) throw InputError("labels: one id per line expected", line_no);
    long long v = 0;
    if (!parse_index(token, v) || v < 0 || v > std::numeric_limits<int>::max()) {
      throw InputError("labels: cluster ids must be non-negative integers", line_no);
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

std::vector<int> read_labels_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open label file '" + path + "'");
  return read_labels(in);
}

void write_labels(std::ostream& out, std::span<const int> labels) {
  for (int l : labels) out << l << '\n';
}

}  // namespace qpgc
