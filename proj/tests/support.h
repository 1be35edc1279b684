#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "eds/graph.h"

namespace eds::testing {

inline WeightedGraph make_graph(std::size_t n, std::vector<std::pair<int, int>> pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b), 1.0});
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph path_graph(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return make_graph(n, pairs);
}

// `count` cliques of `size` vertices; consecutive cliques joined by one edge
// when `chained`.
inline WeightedGraph cliques(int count, int size, bool chained) {
  std::vector<std::pair<int, int>> pairs;
  for (int c = 0; c < count; ++c) {
    int base = c * size;
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) pairs.emplace_back(base + i, base + j);
    if (chained && c + 1 < count) pairs.emplace_back(base + size - 1, base + size);
  }
  return make_graph(static_cast<std::size_t>(count) * size, pairs);
}

inline std::vector<int> block_labels(int count, int size) {
  std::vector<int> labels;
  for (int c = 0; c < count; ++c) labels.insert(labels.end(), size, c);
  return labels;
}

// Connected random graph: a random spanning tree plus extra edges with
// probability p, weights uniform in (0.1, 2] when weighted.
inline WeightedGraph random_graph(int n, double p, std::uint64_t seed, bool weighted = true) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
  auto add = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == b || !seen.insert({a, b}).second) return;
    double w = weighted ? 0.1 + 1.9 * unit(rng) : 1.0;
    edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b), w});
  };
  for (int v = 1; v < n; ++v) add(v, static_cast<int>(rng() % v));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (unit(rng) < p) add(a, b);
  return WeightedGraph(n, std::move(edges));
}

inline std::vector<int> random_labels(int n, int blocks, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> labels(n);
  for (auto& l : labels) l = static_cast<int>(rng() % blocks);
  return labels;
}

// Every set partition of n elements into at most max_blocks blocks, as
// restricted growth strings.
inline std::vector<std::vector<int>> all_partitions(int n, int max_blocks) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= used && b < max_blocks; ++b) {
      cur[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

// ARI from raw pair agreement counts.
inline double brute_force_ari(const std::vector<int>& a, const std::vector<int>& b) {
  double both = 0, only_a = 0, only_b = 0, pairs = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      bool sa = a[i] == a[j];
      bool sb = b[i] == b[j];
      both += sa && sb;
      only_a += sa && !sb;
      only_b += !sa && sb;
      pairs += 1;
    }
  double same_a = both + only_a;
  double same_b = both + only_b;
  double expected = same_a * same_b / pairs;
  double max_index = 0.5 * (same_a + same_b);
  if (max_index == expected) return 1.0;
  return (both - expected) / (max_index - expected);
}

// Same partition up to renaming of labels.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

}  // namespace eds::testing
