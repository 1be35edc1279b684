#include "eds/modularity.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "eds/errors.h"

namespace eds {
namespace {

void check_partition(const WeightedGraph& g, const Partition& p) {
  if (p.labels.size() != g.vertex_count()) {
    throw ParameterError("partition labels " + std::to_string(p.labels.size()) +
                         " vertices, graph has " + std::to_string(g.vertex_count()));
  }
  for (int l : p.labels) {
    if (l < 0 || l >= p.community_count) {
      throw ParameterError("partition label " + std::to_string(l) + " outside [0," +
                           std::to_string(p.community_count) + ")");
    }
  }
}

double edge_weight(const Edge& e, bool weighted) { return weighted ? e.weight : 1.0; }

}  // namespace

double modularity(const WeightedGraph& g, const Partition& p, bool weighted) {
  check_partition(g, p);
  if (g.edge_count() == 0) throw ParameterError("modularity is undefined on a graph without edges");
  std::vector<double> inside(p.community_count, 0.0);
  std::vector<double> degree(p.community_count, 0.0);
  double m = 0.0;
  for (const auto& e : g.edges()) {
    double w = edge_weight(e, weighted);
    m += w;
    degree[p.labels[e.u]] += w;
    degree[p.labels[e.v]] += w;
    if (p.labels[e.u] == p.labels[e.v]) inside[p.labels[e.u]] += w;
  }
  double q = 0.0;
  for (int c = 0; c < p.community_count; ++c) {
    double share = degree[c] / (2.0 * m);
    q += inside[c] / m - share * share;
  }
  return q;
}

std::vector<std::pair<int, int>> adjacent_pairs(const WeightedGraph& g, const Partition& p) {
  check_partition(g, p);
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : g.edges()) {
    int a = p.labels[e.u];
    int b = p.labels[e.v];
    if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
  }
  return {pairs.begin(), pairs.end()};
}

ReduceResult reduce(const WeightedGraph& g, const Partition& p, int target, bool weighted) {
  check_partition(g, p);
  if (target < 1 || target > p.community_count) {
    throw ParameterError("target community count must lie in [1, " +
                         std::to_string(p.community_count) + "], got " + std::to_string(target));
  }
  if (g.edge_count() == 0) throw ParameterError("cannot reduce on a graph without edges");

  const int k = p.community_count;
  std::vector<double> degree(k, 0.0);
  std::vector<int> size(k, 0);
  std::vector<std::map<int, double>> link(k);
  double m = 0.0;
  for (int l : p.labels) ++size[l];
  for (const auto& e : g.edges()) {
    double w = edge_weight(e, weighted);
    int a = p.labels[e.u];
    int b = p.labels[e.v];
    m += w;
    degree[a] += w;
    degree[b] += w;
    if (a != b) {
      link[a][b] += w;
      link[b][a] += w;
    }
  }

  ReduceResult result;
  auto& trace = result.trace;
  trace.initial_modularity = modularity(g, p, weighted);
  double q = trace.initial_modularity;

  auto gain = [&](int a, int b, double between) {
    return between / m - degree[a] * degree[b] / (2.0 * m * m);
  };

  // Cached merge gains keyed by (a, b), a < b. A gain only depends on the two
  // communities involved, so a merge invalidates the survivor's pairs only.
  std::map<std::pair<int, int>, double> gains;
  for (int a = 0; a < k && k > target; ++a) {
    for (const auto& [b, w] : link[a]) {
      if (a < b) {
        gains[{a, b}] = gain(a, b, w);
        ++trace.evaluations;
      }
    }
  }

  std::vector<bool> alive(k, true);
  std::vector<int> owner(k);
  for (int c = 0; c < k; ++c) owner[c] = c;
  int count = k;

  while (count > target) {
    int a = -1;
    int b = -1;
    double best = 0.0;
    for (const auto& [pair, dq] : gains) {
      if (a < 0 || dq > best) {
        a = pair.first;
        b = pair.second;
        best = dq;
      }
    }
    if (a < 0) {
      // No adjacent pair left: merge the two smallest communities.
      std::vector<int> order;
      for (int c = 0; c < k; ++c) {
        if (alive[c]) order.push_back(c);
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return size[x] < size[y]; });
      a = std::min(order[0], order[1]);
      b = std::max(order[0], order[1]);
      best = gain(a, b, 0.0);
    }

    for (const auto& [d, w] : link[a]) gains.erase({std::min(a, d), std::max(a, d)});
    for (const auto& [d, w] : link[b]) gains.erase({std::min(b, d), std::max(b, d)});
    for (const auto& [d, w] : link[b]) {
      link[d].erase(b);
      if (d == a) continue;
      link[a][d] += w;
      link[d][a] += w;
    }
    link[a].erase(b);
    link[b].clear();
    degree[a] += degree[b];
    size[a] += size[b];
    alive[b] = false;
    for (int c = 0; c < k; ++c) {
      if (owner[c] == b) owner[c] = a;
    }
    --count;
    q += best;
    trace.steps.push_back({a, b, q});
    if (count == target) break;

    for (const auto& [d, w] : link[a]) {
      gains[{std::min(a, d), std::max(a, d)}] = gain(a, d, w);
      ++trace.evaluations;
    }
  }

  std::vector<int> merged(p.labels.size());
  for (std::size_t v = 0; v < merged.size(); ++v) merged[v] = owner[p.labels[v]];
  result.partition = Partition::from_labels(merged);
  result.partition.provenance = trace;
  return result;
}

}  // namespace eds
