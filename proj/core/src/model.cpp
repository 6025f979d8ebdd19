#include "qpgc/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpgc/errors.hpp"
#include "qpgc/parallel.hpp"

namespace qpgc {

AssignmentVector one_hot(std::span<const int> labels, std::size_t k) {
  AssignmentVector x(labels.size(), k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= k) {
      throw ContractViolation("one_hot: label " + std::to_string(labels[i]) + " out of range");
    }
    x(i, static_cast<std::size_t>(labels[i])) = 1.0;
  }
  return x;
}

void PenaltyParams::validate() const {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw ContractViolation("penalty: theta must be finite and >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ContractViolation("penalty: lambda must be finite and >= 0");
  if (!(box_upper >= 1.0)) throw ContractViolation("penalty: box_upper must be >= 1");
}

std::vector<double> row_residuals(const AssignmentVector& x) {
  std::vector<double> h(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (double v : x.row(i)) s += v;
    h[i] = s - 1.0;
  }
  return h;
}

double quadratic_change(const AssignmentVector& x, const AssignmentVector& y, const AssignmentVector& gx,
                        const AssignmentVector& gy) {
  if (!x.same_shape(y) || !x.same_shape(gx) || !x.same_shape(gy)) {
    throw ContractViolation("quadratic_change: shape mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (gx[i] + gy[i]) * (y[i] - x[i]);
  return 0.5 * s;
}

// --- DistanceOperator ------------------------------------------------------

DistanceOperator::DistanceOperator(const DistanceMatrix& d, const KernelOptions& options)
    : n_(d.size()), threads_(options.threads ? options.threads : default_thread_count()) {
  d.validate();

  bool sparse = false;
  if (options.backend == KernelBackend::kSparseComplement && n_ > 1) {
    base_ = d.max_entry();
    std::size_t at_base = 0;
    for (std::size_t k = 0; k < d.packed_size(); ++k) at_base += d.packed(k) == base_;
    sparse = 2 * at_base > d.packed_size();
  }

  if (!sparse) {
    backend_ = KernelBackend::kDense;
    dense_ = d.to_dense();
    return;
  }

  backend_ = KernelBackend::kSparseComplement;
  row_ptr_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i) continue;
      const double v = d(i, j);
      if (v != base_) {
        col_idx_.push_back(static_cast<std::uint32_t>(j));
        delta_.push_back(v - base_);
      }
    }
    row_ptr_[i + 1] = col_idx_.size();
  }
}

void DistanceOperator::apply(const AssignmentVector& v, AssignmentVector& out) const {
  if (v.rows() != n_) throw ContractViolation("D*V: row count does not match the distance matrix");
  if (!out.same_shape(v)) out = AssignmentVector(v.rows(), v.cols());
  products_.fetch_add(1, std::memory_order_relaxed);
  if (backend_ == KernelBackend::kDense) {
    apply_dense(v, out);
  } else {
    apply_sparse(v, out);
  }
}

void DistanceOperator::apply_dense(const AssignmentVector& v, AssignmentVector& out) const {
  const std::size_t k = v.cols();
  const double* vp = v.values().data();
  double* op = out.values().data();
  parallel_for_rows(n_, threads_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double* o = op + i * k;
      std::fill(o, o + k, 0.0);
      const double* drow = dense_.data() + i * n_;
      for (std::size_t j = 0; j < n_; ++j) {
        const double dij = drow[j];
        if (dij == 0.0) continue;
        const double* vj = vp + j * k;
        for (std::size_t c = 0; c < k; ++c) o[c] += dij * vj[c];
      }
    }
  });
}

void DistanceOperator::apply_sparse(const AssignmentVector& v, AssignmentVector& out) const {
  // D = base (J - I) + S, so (D V)_i = base (colsum - V_i) + sum_j S_ij V_j.
  const std::size_t k = v.cols();
  std::vector<double> colsum(k, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t c = 0; c < k; ++c) colsum[c] += v(j, c);
  }
  const double* vp = v.values().data();
  double* op = out.values().data();
  parallel_for_rows(n_, threads_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double* o = op + i * k;
      const double* vi = vp + i * k;
      for (std::size_t c = 0; c < k; ++c) o[c] = base_ * (colsum[c] - vi[c]);
      for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
        const double* vj = vp + std::size_t{col_idx_[e]} * k;
        for (std::size_t c = 0; c < k; ++c) o[c] += delta_[e] * vj[c];
      }
    }
  });
}

// --- QuadraticModel --------------------------------------------------------

QuadraticModel::QuadraticModel(const DistanceOperator& op, std::size_t k) : op_(op), k_(k) {
  if (k == 0) throw ContractViolation("model: K must be >= 1");
}

void QuadraticModel::check_shape(const AssignmentVector& x) const {
  if (x.rows() != op_.size() || x.cols() != k_) {
    throw ContractViolation("model: expected a " + std::to_string(op_.size()) + "x" + std::to_string(k_) +
                            " assignment, got " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double penalty_term(std::span<const double> residuals, double theta) {
  double s = 0.0;
  for (double h : residuals) s += h * h;
  return 0.5 * theta * s;
}

}  // namespace

double QuadraticModel::objective(const AssignmentVector& x) const {
  check_shape(x);
  AssignmentVector dv;
  op_.apply(x, dv);
  return 0.5 * dot(x.values(), dv.values());
}

AssignmentVector QuadraticModel::block_gradient(const AssignmentVector& x) const {
  check_shape(x);
  AssignmentVector dv;
  op_.apply(x, dv);
  return dv;
}

PenaltyEvaluation QuadraticModel::penalty_value(const AssignmentVector& x, const PenaltyParams& p) const {
  p.validate();
  PenaltyEvaluation e;
  e.residuals = row_residuals(x);
  e.value = objective(x) + penalty_term(e.residuals, p.theta);
  return e;
}

double QuadraticModel::regularized_value(const AssignmentVector& x, const PenaltyParams& p) const {
  return penalty_value(x, p).value + p.lambda * dot(x.values(), x.values());
}

AssignmentVector QuadraticModel::penalty_gradient(const AssignmentVector& x, const PenaltyParams& p) const {
  PenaltyParams q = p;
  q.lambda = 0.0;
  return evaluate(x, q).gradient;
}

AssignmentVector QuadraticModel::regularized_gradient(const AssignmentVector& x, const PenaltyParams& p) const {
  return evaluate(x, p).gradient;
}

Evaluation QuadraticModel::evaluate(const AssignmentVector& x, const PenaltyParams& p) const {
  check_shape(x);
  p.validate();
  Evaluation e;
  op_.apply(x, e.gradient);
  e.residuals = row_residuals(x);
  const double f = 0.5 * dot(x.values(), e.gradient.values());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double t = p.theta * e.residuals[i];
    auto gi = e.gradient.row(i);
    auto xi = x.row(i);
    for (std::size_t c = 0; c < k_; ++c) gi[c] += t + 2.0 * p.lambda * xi[c];
  }
  e.value = f + penalty_term(e.residuals, p.theta) + p.lambda * dot(x.values(), x.values());
  return e;
}

double QuadraticModel::value(const AssignmentVector& x, const PenaltyParams& p) const {
  return regularized_value(x, p);
}

AssignmentVector QuadraticModel::hessian_product(const AssignmentVector& w, const PenaltyParams& p) const {
  AssignmentVector out;
  hessian_product(w, p, out);
  return out;
}

void QuadraticModel::hessian_product(const AssignmentVector& w, const PenaltyParams& p, AssignmentVector& out) const {
  check_shape(w);
  p.validate();
  hessian_products_.fetch_add(1, std::memory_order_relaxed);
  op_.apply(w, out);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    auto wi = w.row(i);
    double s = 0.0;
    for (double v : wi) s += v;
    auto oi = out.row(i);
    for (std::size_t c = 0; c < k_; ++c) oi[c] += p.theta * s + 2.0 * p.lambda * wi[c];
  }
}

}  // namespace qpgc
