#include "qpgc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpgc/assignment_problem.hpp"
#include "qpgc/errors.hpp"

namespace qpgc {

Clustering::Clustering(std::vector<int> labels, std::size_t k) : labels_(std::move(labels)), k_(k), sizes_(k, 0) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int l = labels_[i];
    if (l < 0 || static_cast<std::size_t>(l) >= k_) {
      throw ContractViolation("clustering: label " + std::to_string(l) + " of vertex " + std::to_string(i) +
                              " outside [0, " + std::to_string(k_) + ")");
    }
    ++sizes_[static_cast<std::size_t>(l)];
  }
}

Clustering Clustering::from_labels(std::vector<int> labels) {
  int top = -1;
  for (int l : labels) top = std::max(top, l);
  return Clustering(std::move(labels), static_cast<std::size_t>(top + 1));
}

std::size_t Clustering::nonempty_clusters() const noexcept {
  return static_cast<std::size_t>(std::count_if(sizes_.begin(), sizes_.end(), [](std::size_t s) { return s > 0; }));
}

Clustering round_assignment(const AssignmentVector& x) {
  std::vector<int> labels(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto r = x.row(i);
    labels[i] = static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
  }
  return Clustering(std::move(labels), x.cols());
}

namespace {

void check_graph(const Graph& g, const Clustering& c) {
  if (g.num_vertices() != c.size()) throw ContractViolation("clustering size does not match the graph");
}

void check_cluster(const Clustering& c, std::size_t cluster) {
  if (cluster >= c.num_clusters()) throw ContractViolation("cluster id out of range");
  if (c.sizes()[cluster] == 0) {
    throw UndefinedDensity("cluster " + std::to_string(cluster) + " is empty");
  }
}

// K x K counts; entry (a, b) with a <= b counts edges between clusters a and b.
std::vector<std::size_t> edge_counts(const Graph& g, const Clustering& c) {
  const std::size_t k = c.num_clusters();
  std::vector<std::size_t> counts(k * k, 0);
  for (const Edge& e : g.edges()) {
    auto a = static_cast<std::size_t>(c[e.u]);
    auto b = static_cast<std::size_t>(c[e.v]);
    if (a > b) std::swap(a, b);
    ++counts[a * k + b];
  }
  return counts;
}

double intra_from(std::size_t edges, std::size_t size) {
  if (size < 2) return 0.0;
  return static_cast<double>(edges) / (0.5 * static_cast<double>(size) * static_cast<double>(size - 1));
}

double inter_from(std::size_t edges, std::size_t a, std::size_t b) {
  return static_cast<double>(edges) / (static_cast<double>(a) * static_cast<double>(b));
}

}  // namespace

double intra_density(const Graph& g, const Clustering& c, std::size_t cluster) {
  check_graph(g, c);
  check_cluster(c, cluster);
  std::size_t edges = 0;
  for (const Edge& e : g.edges()) {
    edges += static_cast<std::size_t>(c[e.u]) == cluster && static_cast<std::size_t>(c[e.v]) == cluster;
  }
  return intra_from(edges, c.sizes()[cluster]);
}

double inter_density(const Graph& g, const Clustering& c, std::size_t a, std::size_t b) {
  check_graph(g, c);
  if (a == b) throw ContractViolation("inter_density needs two different clusters");
  check_cluster(c, a);
  check_cluster(c, b);
  std::size_t edges = 0;
  for (const Edge& e : g.edges()) {
    const auto cu = static_cast<std::size_t>(c[e.u]);
    const auto cv = static_cast<std::size_t>(c[e.v]);
    edges += (cu == a && cv == b) || (cu == b && cv == a);
  }
  return inter_from(edges, c.sizes()[a], c.sizes()[b]);
}

ClusterQuality quality_report(const Graph& g, const Clustering& c, std::optional<GenerationProbabilities> truth) {
  check_graph(g, c);
  ClusterQuality q;
  q.kappa = overall_density(g);
  const std::size_t k = c.num_clusters();
  const auto counts = edge_counts(g, c);
  const auto sizes = c.sizes();

  q.intra.assign(k, std::nullopt);
  q.inter.assign(k * k, std::nullopt);
  double intra_sum = 0.0;
  double inter_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < k; ++a) {
    if (sizes[a] == 0) continue;
    ++q.effective_k;
    q.intra[a] = intra_from(counts[a * k + a], sizes[a]);
    intra_sum += *q.intra[a];
    for (std::size_t b = a + 1; b < k; ++b) {
      if (sizes[b] == 0) continue;
      const double v = inter_from(counts[a * k + b], sizes[a], sizes[b]);
      q.inter[a * k + b] = v;
      q.inter[b * k + a] = v;
      inter_sum += v;
      ++pairs;
    }
  }
  if (q.effective_k > 0) q.mean_intra = intra_sum / static_cast<double>(q.effective_k);
  if (pairs > 0) q.mean_inter = inter_sum / static_cast<double>(pairs);

  if (truth) {
    q.eps_intra = std::abs(q.mean_intra - truth->p_intra);
    if (q.mean_inter) q.eps_inter = std::abs(*q.mean_inter - truth->p_inter);
  }
  q.inequality_holds = q.mean_inter && *q.mean_inter < q.kappa && q.kappa < q.mean_intra;
  return q;
}

std::size_t misclassified_count(const Clustering& predicted, const Clustering& truth) {
  if (predicted.size() != truth.size()) throw ContractViolation("misclassified_count: length mismatch");
  const std::size_t rows = predicted.num_clusters();
  const std::size_t cols = truth.num_clusters();
  std::vector<double> overlap(rows * cols, 0.0);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    overlap[static_cast<std::size_t>(predicted[i]) * cols + static_cast<std::size_t>(truth[i])] += 1.0;
  }
  const auto match = max_weight_assignment(rows, cols, overlap);
  double matched = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (match[r] >= 0) matched += overlap[r * cols + static_cast<std::size_t>(match[r])];
  }
  return predicted.size() - static_cast<std::size_t>(std::llround(matched));
}

double labeling_objective(const DistanceMatrix& d, std::span<const int> labels) {
  if (labels.size() != d.size()) throw ContractViolation("labeling_objective: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) s += d(i, j);
    }
  }
  return s;
}

}  // namespace qpgc
