#include "eds/graph.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <utility>

#include "eds/errors.h"

namespace eds {

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), strength_(vertex_count, 0.0) {
  if (vertex_count == 0) throw ParameterError("graph must have at least one vertex");
  for (auto& e : edges_) {
    if (e.u == e.v) {
      throw ParameterError("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw ParameterError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           "} references a vertex outside [0," +
                           std::to_string(vertex_count) + ")");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ParameterError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           "} has non-positive weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw ParameterError("parallel edge {" + std::to_string(edges_[i].u) + "," +
                           std::to_string(edges_[i].v) + "}");
    }
  }

  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  incidence_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    incidence_[cursor[e.u]++] = {e.v, id};
    incidence_[cursor[e.v]++] = {e.u, id};
    strength_[e.u] += e.weight;
    strength_[e.v] += e.weight;
    total_weight_ += e.weight;
  }
  // Edges are sorted, so each adjacency list is already ordered by neighbour
  // for the lower endpoint; sort to make that hold for every vertex.
  for (std::size_t v = 0; v < vertex_count; ++v) {
    std::sort(incidence_.begin() + offsets_[v], incidence_.begin() + offsets_[v + 1],
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
}

std::optional<EdgeId> WeightedGraph::find_edge(VertexId a, VertexId b) const {
  if (a >= vertex_count() || b >= vertex_count()) return std::nullopt;
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b,
                             [](const Incidence& x, VertexId v) { return x.neighbor < v; });
  if (it == nb.end() || it->neighbor != b) return std::nullopt;
  return it->edge;
}

void PointDataset::validate() const {
  const std::size_t d = dimension();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) {
      throw DataError("point " + std::to_string(i) + " has dimension " +
                      std::to_string(points[i].size()) + ", expected " + std::to_string(d));
    }
  }
  if (labels && labels->size() != points.size()) {
    throw DataError("label count " + std::to_string(labels->size()) +
                    " does not match point count " + std::to_string(points.size()));
  }
}

WeightedGraph build_knn_graph(const PointDataset& data, int k, Weighting weighting) {
  data.validate();
  const std::size_t n = data.size();
  if (n < 2) throw ParameterError("k-NN graph needs at least 2 points");
  if (k < 1 || static_cast<std::size_t>(k) >= n) {
    throw ParameterError("k must lie in [1, " + std::to_string(n - 1) + "], got " +
                         std::to_string(k));
  }

  auto distance = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    const auto& p = data.points[a];
    const auto& q = data.points[b];
    for (std::size_t c = 0; c < p.size(); ++c) s += (p[c] - q[c]) * (p[c] - q[c]);
    return std::sqrt(s);
  };

  // (neighbour, distance) pairs chosen by each point, in rank order.
  std::vector<std::vector<std::pair<VertexId, double>>> chosen(n);
  std::vector<std::pair<double, VertexId>> candidates;
  candidates.reserve(n - 1);
  double kth_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    candidates.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) candidates.emplace_back(distance(i, j), static_cast<VertexId>(j));
    }
    std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end());
    for (int r = 0; r < k; ++r) chosen[i].emplace_back(candidates[r].second, candidates[r].first);
    kth_sum += candidates[k - 1].first;
  }
  const double sigma = kth_sum / static_cast<double>(n);

  auto weight_of = [&](double d) {
    if (sigma == 0.0) return 1.0;
    switch (weighting) {
      case Weighting::kUnit:
        return 1.0;
      case Weighting::kInverse:
        return 1.0 / (1.0 + d / sigma);
      case Weighting::kGaussian:
        break;
    }
    // Underflow would produce a zero weight; clamp to the smallest normal.
    return std::max(std::exp(-d * d / (2.0 * sigma * sigma)),
                    std::numeric_limits<double>::min());
  };

  std::vector<Edge> edges;
  edges.reserve(n * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, d] : chosen[i]) {
      auto a = static_cast<VertexId>(std::min<std::size_t>(i, j));
      auto b = static_cast<VertexId>(std::max<std::size_t>(i, j));
      edges.push_back({a, b, weight_of(d)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::pair(x.u, x.v) < std::pair(y.u, y.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& x, const Edge& y) { return x.u == y.u && x.v == y.v; }),
              edges.end());
  return WeightedGraph(n, std::move(edges));
}

std::vector<VertexId> neighborhood_vertices(const WeightedGraph& g, VertexId j,
                                            NeighborhoodParams params) {
  if (j >= g.vertex_count()) {
    throw ParameterError("vertex " + std::to_string(j) + " out of range [0," +
                         std::to_string(g.vertex_count()) + ")");
  }
  if (params.order < 1) throw ParameterError("neighborhood order must be >= 1");
  std::vector<int> depth(g.vertex_count(), -1);
  std::vector<VertexId> out{j};
  std::queue<VertexId> frontier;
  depth[j] = 0;
  frontier.push(j);
  while (!frontier.empty()) {
    VertexId v = frontier.front();
    frontier.pop();
    if (depth[v] == params.order) continue;
    for (const auto& inc : g.neighbors(v)) {
      if (depth[inc.neighbor] >= 0) continue;
      depth[inc.neighbor] = depth[v] + 1;
      out.push_back(inc.neighbor);
      frontier.push(inc.neighbor);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t induced_edge_count(const WeightedGraph& g, std::span<const VertexId> vs) {
  std::vector<char> member(g.vertex_count(), 0);
  for (VertexId v : vs) {
    if (v >= g.vertex_count()) throw ParameterError("vertex " + std::to_string(v) + " out of range");
    member[v] = 1;
  }
  std::size_t count = 0;
  for (std::size_t v = 0; v < member.size(); ++v) {
    if (!member[v]) continue;
    for (const auto& inc : g.neighbors(static_cast<VertexId>(v))) {
      if (inc.neighbor > v && member[inc.neighbor]) ++count;
    }
  }
  return count;
}

WeightedGraph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t declared = 0;
  std::size_t max_index = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#') {
      std::string key;
      std::size_t value = 0;
      if (ls >> key >> value && key == "vertices") declared = value;
      continue;
    }
    std::istringstream row(line);
    long long i = -1;
    long long j = -1;
    double w = 1.0;
    if (!(row >> i >> j) || i < 0 || j < 0) {
      throw DataError("edge list line " + std::to_string(lineno) + ": expected `i j [w]`");
    }
    if (!(row >> w)) w = 1.0;
    edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), w});
    max_index = std::max<std::size_t>(max_index, static_cast<std::size_t>(std::max(i, j)));
    any = true;
  }
  std::size_t n = std::max(declared, any ? max_index + 1 : std::size_t{0});
  if (n == 0) throw DataError("edge list is empty");
  try {
    return WeightedGraph(n, std::move(edges));
  } catch (const ParameterError& e) {
    throw DataError(std::string("edge list: ") + e.what());
  }
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "# vertices " << g.vertex_count() << '\n';
  auto old = out.precision(17);
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  out.precision(old);
}

}  // namespace eds
