#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpgc/distance.hpp"
#include "qpgc/graph.hpp"
#include "qpgc/metrics.hpp"
#include "qpgc/solve_result.hpp"

namespace qpgc::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitSolver = 3,
};

// Bad flag combination or value that parsing alone cannot catch.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string version_string();

/// Lowercase hex SHA-256 of a file's bytes. Throws InputError if unreadable.
std::string file_sha256(const std::string& path);

/// Writes text to `path`, throwing InputError when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

Graph load_graph(const std::string& path, bool one_based, std::optional<std::size_t> num_vertices = std::nullopt);

Neighborhood parse_neighborhood(const std::string& s);
Precision parse_precision(const std::string& s);
Metric parse_metric_or_throw(const std::string& s);

json to_json(const SolveResult& r, bool include_relaxed = false);
json to_json(const ClusterQuality& q);

/// Records inputs, outputs, resolved settings and timing of one run, enough
/// to repeat it.
class RunManifest {
 public:
  RunManifest(std::string command, int argc, char** argv);

  void add_input(const std::string& path);
  void add_output(const std::string& path);
  json& config() { return config_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  json to_json() const;
  void write(const std::string& path) const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  json config_ = json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace qpgc::cli
