#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qpgc/distance.hpp"

namespace qpgc {

/// The relaxed assignment x in R^{nK}, viewed as n blocks of length K
/// (row i of an n x K row-major array is block x_i). Gradients and Hessian
/// products share the same shape.
class AssignmentVector {
 public:
  AssignmentVector() = default;
  AssignmentVector(std::size_t n, std::size_t k, double fill = 0.0) : n_(n), k_(k), data_(n * k, fill) {}

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return k_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t i, std::size_t k) { return data_[i * k_ + k]; }
  double operator()(std::size_t i, std::size_t k) const { return data_[i * k_ + k]; }
  double& operator[](std::size_t idx) { return data_[idx]; }
  double operator[](std::size_t idx) const { return data_[idx]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * k_, k_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * k_, k_}; }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool same_shape(const AssignmentVector& o) const noexcept { return n_ == o.n_ && k_ == o.k_; }

  friend bool operator==(const AssignmentVector&, const AssignmentVector&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> data_;
};

/// Binary assignment with a single 1 per row at the given label.
AssignmentVector one_hot(std::span<const int> labels, std::size_t k);

struct PenaltyParams {
  double theta = 0.0;
  double lambda = 0.0;
  double box_upper = 1.0;

  /// Throws ContractViolation unless theta >= 0, lambda >= 0, box_upper >= 1.
  void validate() const;
};

enum class KernelBackend {
  kDense,
  /// Opt-in: when more than half of the off-diagonal entries equal the
  /// maximum entry, store only the others and recover the rest from column
  /// sums. Falls back to kDense when the matrix does not qualify.
  kSparseComplement,
};

struct KernelOptions {
  KernelBackend backend = KernelBackend::kDense;
  std::size_t threads = 0;  // 0: QPGC_NUM_THREADS or 1
};

/// The product V -> D V on n x K arrays. This is the one O(K n^2) kernel that
/// the objective, every gradient, and every Hessian-vector product go through.
/// Immutable after construction; apply() is safe to call concurrently.
class DistanceOperator {
 public:
  explicit DistanceOperator(const DistanceMatrix& d, const KernelOptions& options = {});

  std::size_t size() const noexcept { return n_; }
  KernelBackend backend() const noexcept { return backend_; }

  /// out = D * v. Shapes must match (n x K). Accumulates in double, in a fixed
  /// per-row order, so results do not depend on the thread count.
  void apply(const AssignmentVector& v, AssignmentVector& out) const;

  /// Number of apply() calls so far.
  std::uint64_t products() const noexcept { return products_.load(std::memory_order_relaxed); }

 private:
  void apply_dense(const AssignmentVector& v, AssignmentVector& out) const;
  void apply_sparse(const AssignmentVector& v, AssignmentVector& out) const;

  std::size_t n_ = 0;
  std::size_t threads_ = 1;
  KernelBackend backend_ = KernelBackend::kDense;
  std::vector<double> dense_;  // full row-major n x n
  double base_ = 0.0;          // sparse: value of the omitted entries
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_idx_;
  std::vector<double> delta_;  // sparse: d_ij - base
  mutable std::atomic<std::uint64_t> products_{0};
};

struct PenaltyEvaluation {
  double value = 0.0;
  /// h_i = x_i^T 1 - 1
  std::vector<double> residuals;
};

struct Evaluation {
  double value = 0.0;
  AssignmentVector gradient;
  std::vector<double> residuals;
};

/// f(x) = 1/2 x^T (D kron I_K) x and its penalized / regularized variants.
///
///   g(x) = f(x) + theta/2 * sum_i (x_i^T 1 - 1)^2
///   h(x) = g(x) + lambda * ||x||^2
///
/// All entry points validate shapes (ContractViolation on mismatch) and count
/// the Hessian-vector products they perform.
class QuadraticModel {
 public:
  QuadraticModel(const DistanceOperator& op, std::size_t k);

  std::size_t vertices() const noexcept { return op_.size(); }
  std::size_t clusters() const noexcept { return k_; }
  const DistanceOperator& op() const noexcept { return op_; }

  double objective(const AssignmentVector& x) const;
  /// Row i: sum_{j != i} d_ij x_j.
  AssignmentVector block_gradient(const AssignmentVector& x) const;

  PenaltyEvaluation penalty_value(const AssignmentVector& x, const PenaltyParams& p) const;
  double regularized_value(const AssignmentVector& x, const PenaltyParams& p) const;
  AssignmentVector penalty_gradient(const AssignmentVector& x, const PenaltyParams& p) const;
  AssignmentVector regularized_gradient(const AssignmentVector& x, const PenaltyParams& p) const;

  /// Value and gradient of h (of g when lambda == 0) from a single D x product.
  Evaluation evaluate(const AssignmentVector& x, const PenaltyParams& p) const;
  /// Value only, also from a single product.
  double value(const AssignmentVector& x, const PenaltyParams& p) const;

  /// (D kron I + theta I_n kron 1 1^T + 2 lambda I) w, never materialized.
  AssignmentVector hessian_product(const AssignmentVector& w, const PenaltyParams& p) const;
  void hessian_product(const AssignmentVector& w, const PenaltyParams& p, AssignmentVector& out) const;

  std::uint64_t hessian_products() const noexcept { return hessian_products_.load(std::memory_order_relaxed); }

 private:
  void check_shape(const AssignmentVector& x) const;

  const DistanceOperator& op_;
  std::size_t k_;
  mutable std::atomic<std::uint64_t> hessian_products_{0};
};

/// q(y) - q(x) for any quadratic q, from its gradients at both ends:
/// 1/2 (gx + gy)^T (y - x). Unlike a difference of two values it does not
/// cancel when both values are large, so line searches use it.
double quadratic_change(const AssignmentVector& x, const AssignmentVector& y, const AssignmentVector& gx,
                        const AssignmentVector& gy);

/// h_i = x_i^T 1 - 1 for every block.
std::vector<double> row_residuals(const AssignmentVector& x);

}  // namespace qpgc
