#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qpgc/graph.hpp"
#include "qpgc/model.hpp"

namespace qpgc {

/// Hard clustering: labels in [0, K), sizes[c] = count of label c.
class Clustering {
 public:
  Clustering() = default;
  /// Throws ContractViolation if a label falls outside [0, k).
  Clustering(std::vector<int> labels, std::size_t k);
  /// K = max label + 1.
  static Clustering from_labels(std::vector<int> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t num_clusters() const noexcept { return k_; }
  std::size_t nonempty_clusters() const noexcept;
  std::span<const int> labels() const noexcept { return labels_; }
  std::span<const std::size_t> sizes() const noexcept { return sizes_; }
  int operator[](std::size_t i) const { return labels_[i]; }

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<int> labels_;
  std::size_t k_ = 0;
  std::vector<std::size_t> sizes_;
};

/// Row-wise argmax; ties go to the smallest index.
Clustering round_assignment(const AssignmentVector& x);

/// |E_cc| / (n_c (n_c - 1) / 2); 0 for a singleton. Throws UndefinedDensity
/// for an empty cluster and ContractViolation for an out-of-range id.
double intra_density(const Graph& g, const Clustering& c, std::size_t cluster);

/// |E_ab| / (n_a n_b) for a != b. Throws UndefinedDensity if either is empty.
double inter_density(const Graph& g, const Clustering& c, std::size_t a, std::size_t b);

struct GenerationProbabilities {
  double p_intra = 0.0;
  double p_inter = 0.0;
};

struct ClusterQuality {
  double kappa = 0.0;
  /// Per declared cluster; empty clusters hold no value.
  std::vector<std::optional<double>> intra;
  /// Row-major K x K, filled for a < b with both nonempty; symmetric.
  std::vector<std::optional<double>> inter;
  std::size_t effective_k = 0;  // nonempty clusters
  double mean_intra = 0.0;
  /// Undefined with fewer than two nonempty clusters.
  std::optional<double> mean_inter;
  std::optional<double> eps_intra;
  std::optional<double> eps_inter;
  /// mean_inter < kappa < mean_intra; false when mean_inter is undefined.
  bool inequality_holds = false;
};

/// Means run over nonempty clusters and pairs of nonempty clusters.
/// Throws UndefinedDensity when the graph has fewer than two vertices.
ClusterQuality quality_report(const Graph& g, const Clustering& c,
                              std::optional<GenerationProbabilities> truth = std::nullopt);

/// n minus the best one-to-one overlap between predicted and true clusters,
/// i.e. the fewest vertices that must change label under the best relabeling.
std::size_t misclassified_count(const Clustering& predicted, const Clustering& truth);

/// Sum over same-label pairs (i < j) of d_ij.
double labeling_objective(const DistanceMatrix& d, std::span<const int> labels);

}  // namespace qpgc
