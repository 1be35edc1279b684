#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eds/community.h"
#include "eds/dynamics.h"
#include "eds/graph.h"

namespace eds {

struct PipelineConfig {
  CompetitionConfig competition;
  NeighborhoodParams neighborhood;
  int target_clusters = 2;
  std::optional<int> knn_k;
  Weighting weighting = Weighting::kGaussian;
  bool weighted_modularity = true;

  // Requires K >= C >= 1 and valid sub-configurations.
  void validate() const;
};

struct ClusterResult {
  Partition partition;
  MergeTrace trace;
  SystemState state;
  bool converged = false;
  double modularity = 0.0;
  // Density assignment produced fewer than C communities, so nothing was merged.
  bool underfull = false;
};

// Dynamics with K classes, unfolding, density communities, then greedy
// modularity reduction to C.
ClusterResult cluster(const WeightedGraph& g, const PipelineConfig& cfg);

// Density assignment and reduction on an already simulated state.
ClusterResult cluster_from_state(const WeightedGraph& g, const SystemState& state,
                                 const PipelineConfig& cfg);

// Builds the k-NN graph (cfg.knn_k required) and clusters it.
ClusterResult cluster_points(const PointDataset& data, const PipelineConfig& cfg);

// Runs cluster once per seed and keeps the result with the highest final
// modularity (earliest seed on ties). Ground truth plays no part.
ClusterResult best_of_seeds(const WeightedGraph& g, PipelineConfig cfg,
                            const std::vector<std::uint64_t>& seeds);

struct SweepGrid {
  std::vector<int> knn_values;
  std::vector<int> class_count_values;
  std::vector<int> order_values;
  std::vector<std::uint64_t> seeds;

  void validate(bool needs_knn) const;
};

struct SweepResult {
  int knn = 0;  // 0 for a native graph
  int classes = 0;
  int order = 0;
  std::uint64_t seed = 0;       // grid seed
  std::uint64_t run_seed = 0;   // seed handed to the dynamics
  std::optional<double> ari;
  double q = 0.0;
  bool converged = false;
  Partition partition;
};

// Seed used for the dynamics of one grid cell. Independent of the order
// value, so every order shares one simulation.
std::uint64_t cell_seed(std::uint64_t seed, int knn, int classes);

struct SweepOptions {
  double lambda = 0.5;
  int max_steps = 500;
  double convergence_tol = 1e-8;
  Weighting weighting = Weighting::kGaussian;
  bool weighted_modularity = true;
  bool want_ari = true;
  int jobs = 1;
};

// Cartesian sweep over a point dataset. Results are sorted by ARI descending
// (modularity when ARI is off), then by (knn, K, o, seed).
std::vector<SweepResult> sweep(const PointDataset& data, const SweepGrid& grid, int target,
                               const SweepOptions& options = {});

// Sweep over a native graph; grid.knn_values is ignored.
std::vector<SweepResult> sweep(const WeightedGraph& g, const std::optional<std::vector<int>>& truth,
                               const SweepGrid& grid, int target, const SweepOptions& options = {});

}  // namespace eds
