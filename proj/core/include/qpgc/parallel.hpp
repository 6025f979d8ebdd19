#pragma once

#include <cstddef>
#include <functional>

namespace qpgc {

/// Name of the environment variable that sets the default worker count.
inline constexpr const char* kThreadsEnvVar = "QPGC_NUM_THREADS";

/// Worker count used when a caller passes 0: the value of QPGC_NUM_THREADS if
/// it parses as a positive integer, otherwise 1.
std::size_t default_thread_count();

/// Runs body(begin, end) over a static partition of [0, count) into contiguous
/// chunks. Each index is visited by exactly one chunk, so kernels that write
/// disjoint rows stay deterministic regardless of the thread count.
void parallel_for_rows(std::size_t count, std::size_t threads,
                       const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace qpgc
