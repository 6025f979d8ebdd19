#include "qpgc/synth.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "qpgc/errors.hpp"
#include "qpgc/rng.hpp"

namespace qpgc {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ContractViolation(std::string("generator: ") + what + " must lie in [0, 1]");
  }
}

SyntheticGraph sample_blocks(std::span<const int> sizes, double p_intra, double p_inter,
                             std::uint64_t seed) {
  check_probability(p_intra, "p_intra");
  check_probability(p_inter, "p_inter");
  if (sizes.empty()) throw ContractViolation("generator: empty block-size list");
  for (int s : sizes) {
    if (s < 1) throw ContractViolation("generator: block sizes must be positive");
  }

  GroundTruth truth;
  truth.num_clusters = static_cast<int>(sizes.size());
  truth.p_intra = p_intra;
  truth.p_inter = p_inter;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    truth.labels.insert(truth.labels.end(), static_cast<std::size_t>(sizes[b]), static_cast<int>(b));
  }

  const std::size_t n = truth.labels.size();
  const CounterRng rng(seed, CounterRng::kEdgeStream);
  std::vector<Edge> edges;
  std::uint64_t pair = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++pair) {
      const double p = truth.labels[i] == truth.labels[j] ? p_intra : p_inter;
      if (rng.uniform(pair) < p) {
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), 1.0});
      }
    }
  }
  return {Graph(n, std::move(edges)), std::move(truth), seed};
}

}  // namespace

SyntheticGraph generate_ppm(int num_clusters, int cluster_size, double p_intra, double p_inter,
                            std::uint64_t seed) {
  if (num_clusters < 1 || cluster_size < 1) {
    throw ContractViolation("generate_ppm: cluster count and size must be positive");
  }
  const std::vector<int> sizes(static_cast<std::size_t>(num_clusters), cluster_size);
  return sample_blocks(sizes, p_intra, p_inter, seed);
}

SyntheticGraph generate_sbm(std::span<const int> cluster_sizes, double p_intra, double p_inter,
                            std::uint64_t seed) {
  return sample_blocks(cluster_sizes, p_intra, p_inter, seed);
}

std::vector<int> sample_block_sizes(int min_size, int max_size, int count, std::uint64_t seed) {
  if (min_size < 1 || max_size < min_size || count < 1) {
    throw ContractViolation("sample_block_sizes: need 1 <= min <= max and count >= 1");
  }
  const CounterRng rng(seed, CounterRng::kBlockSizeStream);
  std::vector<int> sizes(static_cast<std::size_t>(count));
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    sizes[b] = static_cast<int>(rng.uniform_int(b, static_cast<std::uint64_t>(min_size),
                                                static_cast<std::uint64_t>(max_size)));
  }
  return sizes;
}

std::vector<int> fit_last_block(std::vector<int> sizes, int total) {
  if (sizes.empty()) throw ContractViolation("fit_last_block: empty size list");
  const long long head = std::accumulate(sizes.begin(), sizes.end() - 1, 0LL);
  if (head >= total) {
    throw ContractViolation("fit_last_block: leading blocks already hold " + std::to_string(head) +
                            " >= " + std::to_string(total) + " vertices; choose another seed");
  }
  sizes.back() = static_cast<int>(total - head);
  return sizes;
}

std::span<const Preset> presets() {
  using enum BlockModel;
  static constexpr std::array<Preset, 15> kPresets{{
      {"G1_PPM", kPlantedPartition, 0.90, 0.10, 5, 250, 50, 50},
      {"G2_PPM", kPlantedPartition, 0.85, 0.15, 5, 250, 50, 50},
      {"G3_PPM", kPlantedPartition, 0.80, 0.20, 5, 250, 50, 50},
      {"G1_SBM3K", kStochasticBlock, 0.90, 0.05, 30, 3000, 25, 200},
      {"G2_SBM3K", kStochasticBlock, 0.90, 0.10, 30, 3000, 25, 200},
      {"G3_SBM3K", kStochasticBlock, 0.85, 0.05, 30, 3000, 25, 200},
      {"G4_SBM3K", kStochasticBlock, 0.85, 0.10, 30, 3000, 25, 200},
      {"G5_SBM3K", kStochasticBlock, 0.80, 0.05, 30, 3000, 25, 200},
      {"G6_SBM3K", kStochasticBlock, 0.80, 0.10, 30, 3000, 25, 200},
      {"G1_SBM6K", kStochasticBlock, 0.90, 0.05, 60, 6000, 35, 200},
      {"G2_SBM6K", kStochasticBlock, 0.90, 0.10, 60, 6000, 35, 200},
      {"G3_SBM6K", kStochasticBlock, 0.85, 0.05, 60, 6000, 35, 200},
      {"G4_SBM6K", kStochasticBlock, 0.85, 0.10, 60, 6000, 35, 200},
      {"G5_SBM6K", kStochasticBlock, 0.80, 0.05, 60, 6000, 35, 200},
      {"G6_SBM6K", kStochasticBlock, 0.80, 0.10, 60, 6000, 35, 200},
  }};
  return kPresets;
}

std::optional<Preset> find_preset(std::string_view name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

SyntheticGraph generate_preset(const Preset& preset, std::uint64_t seed, bool exact_n) {
  if (preset.model == BlockModel::kPlantedPartition) {
    return generate_ppm(preset.num_clusters, preset.min_size, preset.p_intra, preset.p_inter, seed);
  }
  std::vector<int> sizes = sample_block_sizes(preset.min_size, preset.max_size, preset.num_clusters, seed);
  if (exact_n) sizes = fit_last_block(std::move(sizes), preset.num_vertices);
  return generate_sbm(sizes, preset.p_intra, preset.p_inter, seed);
}

}  // namespace qpgc
