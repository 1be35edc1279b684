#pragma once

#include <utility>
#include <vector>

#include "eds/community.h"
#include "eds/graph.h"

namespace eds {

// Newman-Girvan modularity, Q = sum_c [ in_c / m - (deg_c / 2m)^2 ] with m the
// total edge weight and in_c the weight inside c. With weighted == false every
// edge counts as 1.
double modularity(const WeightedGraph& g, const Partition& p, bool weighted = true);

// Unordered community pairs (a < b) joined by at least one edge, sorted.
std::vector<std::pair<int, int>> adjacent_pairs(const WeightedGraph& g, const Partition& p);

// Upper bound on merge evaluations for a reduction from k to c communities.
constexpr long long merge_evaluation_bound(long long k, long long c) {
  return (k - c) * (k + c + 1) / 2;
}

struct ReduceResult {
  Partition partition;  // provenance holds the trace
  MergeTrace trace;
};

// Greedy merging of adjacent communities down to `target`, always committing
// the merge with the highest resulting Q (smallest pair on ties), even when
// that lowers Q. Without adjacent pairs the two smallest communities merge.
ReduceResult reduce(const WeightedGraph& g, const Partition& p, int target, bool weighted = true);

}  // namespace eds
