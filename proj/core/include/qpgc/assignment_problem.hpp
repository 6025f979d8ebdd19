#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qpgc {

/// Maximum-weight one-to-one matching on a rows x cols weight matrix
/// (row-major). Rectangular inputs are allowed; min(rows, cols) pairs are
/// matched. Returns col_of_row, with -1 for unmatched rows. O(m^3) Hungarian
/// with potentials, m = max(rows, cols).
std::vector<int> max_weight_assignment(std::size_t rows, std::size_t cols, std::span<const double> weights);

}  // namespace qpgc
