#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace eds {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double weight = 1.0;
};

struct Incidence {
  VertexId neighbor = 0;
  EdgeId edge = 0;
};

// Simple undirected graph with strictly positive weights. Immutable after
// construction. Edges are stored sorted by (u, v); each edge e owns two
// directed slots, 2e for u->v and 2e+1 for v->u.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Throws ParameterError on self-loops, parallel edges, out-of-range
  // endpoints or non-positive weights.
  WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return strength_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Incidence> neighbors(VertexId v) const {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  // Weighted degree, sum_k w_vk.
  double strength(VertexId v) const { return strength_[v]; }
  double total_weight() const { return total_weight_; }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

  // Directed slot index of the traversal from -> (other endpoint of e).
  std::size_t slot(EdgeId e, VertexId from) const {
    return 2 * static_cast<std::size_t>(e) + (edges_[e].u == from ? 0 : 1);
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidence_;
  std::vector<double> strength_;
  double total_weight_ = 0.0;
};

struct PointDataset {
  std::vector<std::vector<double>> points;
  std::optional<std::vector<int>> labels;

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }

  // Throws DataError when dimensions disagree or label count mismatches.
  void validate() const;
};

enum class Weighting { kGaussian, kUnit, kInverse };

struct NeighborhoodParams {
  int order = 1;
};

// Union k-NN graph under Euclidean distance. Distance ties are broken by the
// smaller point index. With sigma the mean distance to the k-th neighbour,
// weights are exp(-d^2 / (2 sigma^2)) (gaussian), 1 (unit) or
// 1 / (1 + d / sigma) (inverse); sigma == 0 gives weight 1 everywhere.
WeightedGraph build_knn_graph(const PointDataset& data, int k,
                              Weighting weighting = Weighting::kGaussian);

// Vertices within BFS distance `order` of j, including j, sorted ascending.
std::vector<VertexId> neighborhood_vertices(const WeightedGraph& g, VertexId j,
                                            NeighborhoodParams params);

// Number of edges with both endpoints in vs.
std::size_t induced_edge_count(const WeightedGraph& g, std::span<const VertexId> vs);

// `i j w` per line, '#' comments. The vertex count is one past the largest
// index unless a `# vertices N` header is present.
WeightedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const WeightedGraph& g);

}  // namespace eds
