#pragma once

#include <stdexcept>
#include <string>

namespace qpgc {

// A caller broke a documented precondition (bad shape, out-of-range index,
// probability outside [0,1], ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed external input: edge-list lines, label files, distance dumps.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A density whose denominator is zero for a reason the caller must handle
// (empty cluster, graph with fewer than two vertices).
class UndefinedDensity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A solver hit a non-finite value or another unrecoverable numerical state.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpgc
