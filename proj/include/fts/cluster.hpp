#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "fts/vectors.hpp"

namespace fts::cluster {

inline constexpr int kNoise = -1;

struct ClusterParams {
  std::size_t min_cluster_size = 1250;
  std::size_t min_samples = 10;
};

struct ClusterAssignment {
  std::vector<int> labels;  // kNoise or 0..n_clusters-1
  std::size_t n_clusters = 0;
  ClusterParams params;
};

struct MstEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

double euclidean(std::span<const float> a, std::span<const float> b);

// Distance from each point to its min_samples-th nearest neighbour, the point
// itself counting as the first.
std::vector<double> core_distances(const vectors::EmbeddingMatrix& points, std::size_t min_samples);

// max(core_a, core_b, d(a, b))
double mutual_reachability(const vectors::EmbeddingMatrix& points, const std::vector<double>& core,
                           std::size_t a, std::size_t b);

// Prim's algorithm over the dense mutual-reachability graph; n - 1 edges in
// the order they join the tree.
std::vector<MstEdge> mutual_reachability_mst(const vectors::EmbeddingMatrix& points,
                                             const std::vector<double>& core);

// Hierarchical density clustering: mutual reachability MST, single-linkage
// hierarchy, condensation at min_cluster_size and excess-of-mass selection.
// Clusters are numbered by their lowest member row.
ClusterAssignment density_cluster(const vectors::EmbeddingMatrix& reduced, ClusterParams params);

std::size_t count_outliers(const ClusterAssignment& assignment) noexcept;

void write_assignments(const ClusterAssignment& a, const std::vector<std::string>& keys,
                       const std::filesystem::path& path);
// Returns labels keyed in file order.
std::vector<std::pair<std::string, int>> read_assignments(const std::filesystem::path& path);

}  // namespace fts::cluster
