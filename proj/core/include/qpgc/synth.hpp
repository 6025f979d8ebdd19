#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpgc/graph.hpp"

namespace qpgc {

struct GroundTruth {
  std::vector<int> labels;
  int num_clusters = 0;
  double p_intra = 0.0;
  double p_inter = 0.0;
};

struct SyntheticGraph {
  Graph graph;
  GroundTruth truth;
  std::uint64_t seed = 0;
};

/// Planted partition model: num_clusters blocks of cluster_size vertices.
/// Vertex v belongs to block v / cluster_size. Every pair (i<j) gets one
/// Bernoulli draw keyed by its lexicographic pair index, with probability
/// p_intra inside a block and p_inter across blocks.
SyntheticGraph generate_ppm(int num_clusters, int cluster_size, double p_intra, double p_inter,
                            std::uint64_t seed);

/// Stochastic block model with heterogeneous block sizes, contiguous blocks
/// in the given order. Same per-pair draw scheme as generate_ppm.
SyntheticGraph generate_sbm(std::span<const int> cluster_sizes, double p_intra, double p_inter,
                            std::uint64_t seed);

/// Exactly `count` block sizes, each uniform on [min_size, max_size].
std::vector<int> sample_block_sizes(int min_size, int max_size, int count, std::uint64_t seed);

/// Adjusts only the last block so that the sizes sum to `total`. Throws
/// ContractViolation when the other blocks already use `total` vertices or more.
std::vector<int> fit_last_block(std::vector<int> sizes, int total);

enum class BlockModel { kPlantedPartition, kStochasticBlock };

/// One row of the synthetic benchmark table.
struct Preset {
  std::string_view name;
  BlockModel model;
  double p_intra;
  double p_inter;
  int num_clusters;
  int num_vertices;
  int min_size;  // equal to max_size for PPM rows
  int max_size;
};

std::span<const Preset> presets();
std::optional<Preset> find_preset(std::string_view name);

/// Generates a preset instance. For SBM rows block sizes come from
/// sample_block_sizes(seed); with exact_n the last block is refit so that n
/// equals the preset's vertex count.
SyntheticGraph generate_preset(const Preset& preset, std::uint64_t seed, bool exact_n = false);

}  // namespace qpgc
