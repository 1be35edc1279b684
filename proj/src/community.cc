#include "eds/community.h"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "eds/errors.h"

namespace eds {

Partition Partition::from_labels(const std::vector<int>& raw) {
  std::vector<int> values(raw);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Partition p;
  p.labels.reserve(raw.size());
  for (int x : raw) {
    p.labels.push_back(
        static_cast<int>(std::lower_bound(values.begin(), values.end(), x) - values.begin()));
  }
  p.community_count = static_cast<int>(values.size());
  return p;
}

std::vector<int> dominating_classes(const WeightedGraph& g,
                                    const std::vector<std::vector<double>>& flows) {
  std::vector<int> owner(g.edge_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double best = -1.0;
    for (std::size_t c = 0; c < flows.size(); ++c) {
      double f = flows[c][2 * e] + flows[c][2 * e + 1];
      if (f > best) {
        best = f;
        owner[e] = static_cast<int>(c);
      }
    }
  }
  return owner;
}

std::vector<Unfolding> unfold(const WeightedGraph& g, const SystemState& state) {
  const auto owner = dominating_classes(g, state.flows);
  std::vector<std::vector<Edge>> edges(state.class_count());
  std::vector<Unfolding> out(state.class_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    edges[owner[e]].push_back({edge.u, edge.v, 1.0});
    out[owner[e]].source_edges.push_back(e);
  }
  for (int c = 0; c < state.class_count(); ++c) {
    out[c].class_id = c;
    out[c].graph = WeightedGraph(g.vertex_count(), std::move(edges[c]));
  }
  return out;
}

DensityRow density_scores(const std::vector<Unfolding>& unfoldings, VertexId j,
                          NeighborhoodParams params) {
  DensityRow row;
  row.scores.assign(unfoldings.size(), 0.0);
  double total = 0.0;
  for (std::size_t c = 0; c < unfoldings.size(); ++c) {
    const auto& u = unfoldings[c].graph;
    auto hood = neighborhood_vertices(u, j, params);
    row.scores[c] = static_cast<double>(induced_edge_count(u, hood));
    total += row.scores[c];
  }
  if (total > 0.0) {
    row.resolved = true;
    for (auto& s : row.scores) s /= total;
  }
  return row;
}

Partition assign_communities(const WeightedGraph& g, const std::vector<Unfolding>& unfoldings,
                             NeighborhoodParams params) {
  if (unfoldings.empty()) throw ParameterError("no unfoldings given");
  const std::size_t n = g.vertex_count();
  std::vector<int> label(n, -1);
  std::queue<VertexId> frontier;
  for (VertexId j = 0; j < n; ++j) {
    auto row = density_scores(unfoldings, j, params);
    if (!row.resolved) continue;
    auto best = std::max_element(row.scores.begin(), row.scores.end());
    label[j] = unfoldings[best - row.scores.begin()].class_id;
    frontier.push(j);
  }
  if (frontier.empty()) {
    throw SimulationError("no vertex has edges in any unfolding; run the dynamics first");
  }

  while (!frontier.empty()) {
    VertexId v = frontier.front();
    frontier.pop();
    for (const auto& inc : g.neighbors(v)) {
      VertexId u = inc.neighbor;
      if (label[u] >= 0) continue;
      std::map<int, int> votes;
      for (const auto& w : g.neighbors(u)) {
        if (label[w.neighbor] >= 0) ++votes[label[w.neighbor]];
      }
      // std::map iterates in label order, so the first maximum is the lowest.
      int winner = -1;
      int most = 0;
      for (const auto& [l, count] : votes) {
        if (count > most) {
          most = count;
          winner = l;
        }
      }
      label[u] = winner;
      frontier.push(u);
    }
  }

  int lowest = unfoldings.front().class_id;
  for (const auto& u : unfoldings) lowest = std::min(lowest, u.class_id);
  for (auto& l : label) {
    if (l < 0) l = lowest;
  }
  return Partition::from_labels(label);
}

Partition assign_communities(const std::vector<Unfolding>& unfoldings, NeighborhoodParams params) {
  if (unfoldings.empty()) throw ParameterError("no unfoldings given");
  std::vector<Edge> all;
  for (const auto& u : unfoldings) {
    for (const auto& e : u.graph.edges()) all.push_back(e);
  }
  std::sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
            all.end());
  return assign_communities(WeightedGraph(unfoldings.front().graph.vertex_count(), std::move(all)),
                            unfoldings, params);
}

}  // namespace eds
