#pragma once

// Slow reference implementations for tests and the `oracle` subcommand.
// Everything here is a straight transcription of a formula over plain nested
// vectors; nothing calls into the production kernels.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qpgc::oracle {

using Matrix = std::vector<std::vector<double>>;

struct BruteForceResult {
  std::vector<int> best_labels;
  double best_objective = 0.0;
  std::uint64_t num_evaluated = 0;
  /// Labelings within 1e-12 (relative) of the optimum; only when requested.
  std::optional<std::uint64_t> num_ties;
};

inline constexpr std::uint64_t kMaxLabelings = 10'000'000;

/// Exhaustive minimum of sum_{i<j, same label} d_ij over all K^n labelings.
/// The first labeling (in base-K counting order, vertex 0 least significant)
/// that attains the optimum is kept. Throws std::invalid_argument when K^n
/// exceeds `cap`.
BruteForceResult brute_force_min(const Matrix& d, std::size_t k, std::uint64_t cap = kMaxLabelings,
                                 bool count_ties = false);

/// 1/2 sum_i sum_{j != i} d_ij <x_i, x_j> for x given as n rows of K.
double naive_objective(const Matrix& d, const Matrix& x);
double naive_penalty_value(const Matrix& d, const Matrix& x, double theta);
double naive_regularized_value(const Matrix& d, const Matrix& x, double theta, double lambda);
/// Row i: sum_{j != i} d_ij x_j + theta (sum_k x_ik - 1) + 2 lambda x_i.
Matrix naive_gradient(const Matrix& d, const Matrix& x, double theta, double lambda);
/// The nK x nK Hessian, index (i K + a, j K + b).
Matrix naive_hessian(const Matrix& d, std::size_t k, double theta, double lambda);

enum class NaiveMetric { kBurt, kJaccard, kOtsukaOchiai };

/// Distances from a dense weighted adjacency matrix (0 = no edge). With
/// `closed`, Jaccard and Otsuka-Ochiai treat A_ii as 1.
Matrix naive_distances(const Matrix& adjacency, NaiveMetric metric, bool closed = false);

struct NaiveDensities {
  double kappa = 0.0;
  std::vector<std::optional<double>> intra;  // per declared cluster
  Matrix inter;                              // K x K, NaN where undefined
  double mean_intra = 0.0;
  std::optional<double> mean_inter;
};

/// Densities by double loops over vertex pairs of an unweighted adjacency.
NaiveDensities naive_densities(const Matrix& adjacency, const std::vector<int>& labels, std::size_t k);

/// Smallest disagreement over every injective relabeling, by enumeration.
/// Both label sets must have at most 8 values.
std::size_t naive_misclassified(const std::vector<int>& predicted, const std::vector<int>& truth);

/// Best value of theta/lambda-penalized f over the box [0, upper], from
/// `starts` random starts of plain projected gradient with step 1/L.
double multistart_min(const Matrix& d, std::size_t k, double theta, double lambda, double upper,
                      std::size_t starts, std::uint64_t seed, std::size_t iterations = 20000);

}  // namespace qpgc::oracle
