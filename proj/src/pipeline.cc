#include "eds/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

#include "eds/errors.h"
#include "eds/eval.h"
#include "eds/modularity.h"

namespace eds {

void PipelineConfig::validate() const {
  competition.validate();
  if (neighborhood.order < 1) throw ParameterError("neighborhood order must be >= 1");
  if (target_clusters < 1) throw ParameterError("target cluster count C must be >= 1");
  if (competition.class_count < target_clusters) {
    throw ParameterError("class count K=" + std::to_string(competition.class_count) +
                         " is below the target cluster count C=" +
                         std::to_string(target_clusters));
  }
  if (knn_k && *knn_k < 1) throw ParameterError("k-NN k must be >= 1");
}

ClusterResult cluster_from_state(const WeightedGraph& g, const SystemState& state,
                                 const PipelineConfig& cfg) {
  ClusterResult out;
  out.state = state;
  Partition initial = assign_communities(g, unfold(g, state), cfg.neighborhood);
  if (initial.community_count < cfg.target_clusters) {
    out.underfull = true;
    out.partition = std::move(initial);
    out.trace.initial_modularity = modularity(g, out.partition, cfg.weighted_modularity);
    out.modularity = out.trace.initial_modularity;
    out.partition.provenance = out.trace;
    return out;
  }
  auto reduced = reduce(g, initial, cfg.target_clusters, cfg.weighted_modularity);
  out.partition = std::move(reduced.partition);
  out.trace = std::move(reduced.trace);
  out.modularity = modularity(g, out.partition, cfg.weighted_modularity);
  return out;
}

ClusterResult cluster(const WeightedGraph& g, const PipelineConfig& cfg) {
  cfg.validate();
  auto ran = run(g, cfg.competition);
  auto out = cluster_from_state(g, ran.state, cfg);
  out.converged = ran.converged;
  return out;
}

ClusterResult cluster_points(const PointDataset& data, const PipelineConfig& cfg) {
  if (!cfg.knn_k) throw ParameterError("clustering points requires a k-NN k");
  return cluster(build_knn_graph(data, *cfg.knn_k, cfg.weighting), cfg);
}

ClusterResult best_of_seeds(const WeightedGraph& g, PipelineConfig cfg,
                            const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw ParameterError("seed list is empty");
  std::optional<ClusterResult> best;
  for (auto seed : seeds) {
    cfg.competition.seed = seed;
    auto r = cluster(g, cfg);
    if (!best || r.modularity > best->modularity) best = std::move(r);
  }
  return std::move(*best);
}

void SweepGrid::validate(bool needs_knn) const {
  if (needs_knn && knn_values.empty()) throw ParameterError("sweep grid has no k-NN values");
  if (class_count_values.empty() || order_values.empty() || seeds.empty()) {
    throw ParameterError("sweep grid lists must be nonempty");
  }
  for (int k : knn_values) {
    if (needs_knn && k < 1) throw ParameterError("k-NN values must be >= 1");
  }
  for (int k : class_count_values) {
    if (k < 1) throw ParameterError("class counts must be >= 1");
  }
  for (int o : order_values) {
    if (o < 1) throw ParameterError("neighborhood orders must be >= 1");
  }
}

std::uint64_t cell_seed(std::uint64_t seed, int knn, int classes) {
  // splitmix64 finaliser over the packed cell coordinates.
  std::uint64_t z = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(knn)) << 32) |
                    static_cast<std::uint32_t>(classes);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return seed ^ z;
}

namespace {

struct Job {
  int knn;
  int classes;
  std::uint64_t seed;
};

template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepResult> sweep_graphs(const std::map<int, WeightedGraph>& graphs,
                                      const std::optional<std::vector<int>>& truth,
                                      const SweepGrid& grid, int target,
                                      const SweepOptions& options) {
  if (options.want_ari && !truth) {
    throw ParameterError("ARI requested but the input carries no ground-truth labels");
  }
  std::vector<Job> jobs;
  for (const auto& [knn, g] : graphs) {
    for (int k : grid.class_count_values) {
      for (auto seed : grid.seeds) jobs.push_back({knn, k, seed});
    }
  }

  std::vector<std::vector<SweepResult>> per_job(jobs.size());
  parallel_for(jobs.size(), options.jobs, [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto& g = graphs.at(job.knn);
    PipelineConfig cfg;
    cfg.competition.class_count = job.classes;
    cfg.competition.lambda = options.lambda;
    cfg.competition.max_steps = options.max_steps;
    cfg.competition.convergence_tol = options.convergence_tol;
    cfg.competition.seed = cell_seed(job.seed, job.knn, job.classes);
    cfg.target_clusters = target;
    cfg.weighting = options.weighting;
    cfg.weighted_modularity = options.weighted_modularity;
    if (job.classes < target || static_cast<std::size_t>(job.classes) > g.vertex_count()) return;
    auto ran = run(g, cfg.competition);
    for (int o : grid.order_values) {
      cfg.neighborhood.order = o;
      auto r = cluster_from_state(g, ran.state, cfg);
      SweepResult s;
      s.knn = job.knn;
      s.classes = job.classes;
      s.order = o;
      s.seed = job.seed;
      s.run_seed = cfg.competition.seed;
      s.q = r.modularity;
      s.converged = ran.converged;
      if (options.want_ari) s.ari = adjusted_rand_index(*truth, r.partition.labels);
      s.partition = std::move(r.partition);
      per_job[i].push_back(std::move(s));
    }
  });

  std::vector<SweepResult> out;
  for (auto& batch : per_job) {
    for (auto& r : batch) out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const SweepResult& a, const SweepResult& b) {
    double sa = a.ari.value_or(a.q);
    double sb = b.ari.value_or(b.q);
    if (sa != sb) return sa > sb;
    return std::tie(a.knn, a.classes, a.order, a.seed) <
           std::tie(b.knn, b.classes, b.order, b.seed);
  });
  return out;
}

}  // namespace

std::vector<SweepResult> sweep(const PointDataset& data, const SweepGrid& grid, int target,
                               const SweepOptions& options) {
  grid.validate(true);
  data.validate();
  std::map<int, WeightedGraph> graphs;
  for (int k : grid.knn_values) graphs.emplace(k, build_knn_graph(data, k, options.weighting));
  return sweep_graphs(graphs, data.labels, grid, target, options);
}

std::vector<SweepResult> sweep(const WeightedGraph& g, const std::optional<std::vector<int>>& truth,
                               const SweepGrid& grid, int target, const SweepOptions& options) {
  grid.validate(false);
  std::map<int, WeightedGraph> graphs{{0, g}};
  return sweep_graphs(graphs, truth, grid, target, options);
}

}  // namespace eds
