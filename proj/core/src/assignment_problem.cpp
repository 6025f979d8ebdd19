#include "qpgc/assignment_problem.hpp"

#include <algorithm>
#include <limits>

#include "qpgc/errors.hpp"

namespace qpgc {

std::vector<int> max_weight_assignment(std::size_t rows, std::size_t cols, std::span<const double> weights) {
  if (weights.size() != rows * cols) throw ContractViolation("assignment: weight matrix has the wrong size");
  std::vector<int> col_of_row(rows, -1);
  if (rows == 0 || cols == 0) return col_of_row;

  // Square min-cost problem on the negated weights, padded with zeros.
  const std::size_t m = std::max(rows, cols);
  auto cost = [&](std::size_t i, std::size_t j) {
    return i < rows && j < cols ? -weights[i * cols + j] : 0.0;
  };

  // 1-based potentials formulation; p[j] = row matched to column j.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= m; ++j) {
    const std::size_t i = p[j] - 1;
    if (i < rows && j - 1 < cols) col_of_row[i] = static_cast<int>(j - 1);
  }
  return col_of_row;
}

}  // namespace qpgc
