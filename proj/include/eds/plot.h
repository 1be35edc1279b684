#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eds/graph.h"

namespace eds {

using Position = std::array<double, 2>;

// Fruchterman-Reingold layout in the unit square; deterministic per seed.
std::vector<Position> spring_layout(const WeightedGraph& g, std::uint64_t seed = 0,
                                    int iterations = 300);

// Scatter of the first two coordinates, coloured by label.
std::string scatter_svg(const PointDataset& data, const std::vector<int>& labels);

// Edges coloured by dominating class, vertices by community.
std::string graph_svg(const WeightedGraph& g, const std::vector<Position>& layout,
                      const std::vector<int>& edge_classes, const std::vector<int>& vertex_labels);

// Average-rank axis with the critical-difference interval drawn around the
// control technique.
std::string rank_diagram_svg(const std::vector<std::string>& techniques,
                             const std::vector<double>& avg_ranks, double cd, int control);

}  // namespace eds
