#pragma once

#include <optional>
#include <vector>

#include "eds/dynamics.h"
#include "eds/graph.h"

namespace eds {

// Edges dominated by one class, as an unweighted graph over all vertices.
struct Unfolding {
  int class_id = 0;
  WeightedGraph graph;
  std::vector<EdgeId> source_edges;  // ids in the originating graph
};

struct MergeStep {
  int a = 0;
  int b = 0;
  double q = 0.0;
};

// Greedy reduction record. Community ids in steps refer to the partition
// being reduced; after merging a < b the survivor keeps id a.
struct MergeTrace {
  std::vector<MergeStep> steps;
  double initial_modularity = 0.0;
  long long evaluations = 0;
};

struct Partition {
  std::vector<int> labels;
  int community_count = 0;
  std::optional<MergeTrace> provenance;

  // Builds a partition from arbitrary integer labels, renumbering them to
  // [0, count) in increasing order of the original value.
  static Partition from_labels(const std::vector<int>& raw);
};

struct DensityRow {
  std::vector<double> scores;  // one per unfolding
  bool resolved = false;       // false when every neighbourhood is edgeless
};

// Each edge goes to the class with the largest n^q_ij + n^q_ji, lowest class
// index on ties (so zero-flow edges land in class 0).
std::vector<Unfolding> unfold(const WeightedGraph& g, const SystemState& state);

// Class of every edge, as used by unfold().
std::vector<int> dominating_classes(const WeightedGraph& g,
                                    const std::vector<std::vector<double>>& flows);

DensityRow density_scores(const std::vector<Unfolding>& unfoldings, VertexId j,
                          NeighborhoodParams params);

// Comm(j) = argmax_c s_cj. Unresolved vertices take the majority label of
// their neighbours in g, filled outward from resolved vertices; anything still
// unlabelled afterwards (components with no resolved vertex) gets the lowest
// class. Throws SimulationError when no vertex is resolved.
Partition assign_communities(const WeightedGraph& g, const std::vector<Unfolding>& unfoldings,
                             NeighborhoodParams params);

// Same, using the union of the unfoldings as the fallback graph.
Partition assign_communities(const std::vector<Unfolding>& unfoldings, NeighborhoodParams params);

}  // namespace eds
