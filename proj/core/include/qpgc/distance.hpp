#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "qpgc/graph.hpp"

namespace qpgc {

enum class Metric { kBurt, kJaccard, kOtsukaOchiai, kCustom };

/// Whether a vertex counts as its own neighbor in Jaccard / Otsuka-Ochiai.
/// kOpen uses a_i = N(i). kClosed uses a_i = N(i) + {i} with unit self-weight.
/// Burt's distance excludes s = i, j and is unaffected.
enum class Neighborhood { kOpen, kClosed };

enum class Precision { kDouble, kSingle };

std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

/// Dense symmetric n x n matrix with zero diagonal, stored as the packed
/// strict upper triangle (row-major over i < j).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, Metric metric, Precision precision = Precision::kDouble,
                 Neighborhood neighborhood = Neighborhood::kOpen);

  /// From a full row-major n x n matrix. Throws ContractViolation unless the
  /// input is symmetric with zero diagonal and finite non-negative entries.
  static DistanceMatrix from_dense(std::size_t n, std::span<const double> full,
                                   Metric metric = Metric::kCustom);

  std::size_t size() const noexcept { return n_; }
  Metric metric() const noexcept { return metric_; }
  Precision precision() const noexcept { return precision_; }
  Neighborhood neighborhood() const noexcept { return neighborhood_; }
  std::size_t packed_size() const noexcept { return n_ * (n_ - (n_ > 0)) / 2; }

  /// D(i, j); zero on the diagonal.
  double operator()(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double value);

  /// Entry k of the packed triangle, widened to double.
  double packed(std::size_t k) const;

  double max_entry() const;

  /// Row-major expansion to a full n x n matrix of doubles.
  std::vector<double> to_dense() const;

  /// Checks non-negativity and finiteness of every stored entry (symmetry and
  /// the zero diagonal hold by construction). Throws ContractViolation.
  void validate() const;

  static constexpr std::size_t packed_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  Metric metric_ = Metric::kCustom;
  Precision precision_ = Precision::kDouble;
  Neighborhood neighborhood_ = Neighborhood::kOpen;
  std::variant<std::vector<double>, std::vector<float>> values_;
};

struct DistanceOptions {
  Neighborhood neighborhood = Neighborhood::kOpen;
  Precision precision = Precision::kDouble;
  std::size_t threads = 0;  // 0: QPGC_NUM_THREADS or 1
};

/// D_ij = sqrt(sum_{s != i,j} (A_is - A_js)^2), weights used as A entries.
DistanceMatrix burt(const Graph& g, const DistanceOptions& options = {});

/// 1 - |a_i & a_j| / |a_i | a_j| (weighted: sum of min over sum of max).
/// Pairs whose union is empty get distance 1.
DistanceMatrix jaccard(const Graph& g, const DistanceOptions& options = {});

/// 1 - |a_i & a_j| / sqrt(|a_i| |a_j|) (weighted: sum of min over the geometric
/// mean of weighted degrees). Pairs with a zero denominator get distance 1.
DistanceMatrix otsuka_ochiai(const Graph& g, const DistanceOptions& options = {});

DistanceMatrix compute_distance(const Graph& g, Metric metric, const DistanceOptions& options = {});

/// Binary dump, little-endian:
///   magic "QPGCDIST" | u32 version(1) | u32 metric | u32 precision bits (32|64)
///   | u32 neighborhood (0 open, 1 closed) | u64 n | packed upper triangle
void write_distance_binary(std::ostream& out, const DistanceMatrix& d);
DistanceMatrix read_distance_binary(std::istream& in);

/// Full n x n CSV, one row per line, 17 significant digits.
void write_distance_csv(std::ostream& out, const DistanceMatrix& d);

}  // namespace qpgc
