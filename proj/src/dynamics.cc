#include "eds/dynamics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eds/errors.h"

namespace eds {
namespace {

void require_no_isolated(const WeightedGraph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) {
      throw SimulationError("vertex " + std::to_string(v) +
                            " is isolated; the walk probability is undefined there");
    }
  }
}

// Sum over classes of n^q_ij + n^q_ji, per edge.
std::vector<double> total_edge_flow(const SystemState& state, std::size_t edge_count) {
  std::vector<double> total(edge_count, 0.0);
  for (const auto& f : state.flows) {
    for (std::size_t e = 0; e < edge_count; ++e) total[e] += f[2 * e] + f[2 * e + 1];
  }
  return total;
}

double subordination_from(double own, double total, int class_count) {
  if (total > 0.0) return 1.0 - own / total;
  return 1.0 / class_count;
}

template <class Count>
std::vector<Count> total_traversals(const std::vector<std::vector<Count>>& traversals,
                                    std::size_t edge_count) {
  std::vector<Count> total(edge_count, 0);
  for (const auto& t : traversals) {
    for (std::size_t e = 0; e < edge_count; ++e) total[e] += t[2 * e] + t[2 * e + 1];
  }
  return total;
}

// Multinomial by sequential conditional binomials.
std::vector<std::int64_t> multinomial(std::int64_t n, std::span<const double> weights, Rng& rng) {
  std::vector<std::int64_t> out(weights.size(), 0);
  double rest = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (std::size_t k = 0; k < weights.size() && n > 0; ++k) {
    if (weights[k] <= 0.0) continue;
    double p = rest > 0.0 ? std::min(1.0, weights[k] / rest) : 1.0;
    std::int64_t x = n;
    if (p < 1.0) x = std::binomial_distribution<std::int64_t>(n, p)(rng);
    out[k] = x;
    n -= x;
    rest -= weights[k];
  }
  return out;
}

}  // namespace

void CompetitionConfig::validate() const {
  if (class_count < 1) throw ParameterError("class count K must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ParameterError("lambda must lie in [0, 1]");
  if (max_steps < 1) throw ParameterError("max steps T must be >= 1");
  if (!(convergence_tol > 0.0)) throw ParameterError("convergence tolerance must be > 0");
  if (!seed_vertices.empty() && seed_vertices.size() != static_cast<std::size_t>(class_count)) {
    throw ParameterError("expected " + std::to_string(class_count) + " seed vertices, got " +
                         std::to_string(seed_vertices.size()));
  }
}

std::vector<VertexId> seed_vertices(const WeightedGraph& g, const CompetitionConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.vertex_count();
  const auto k = static_cast<std::size_t>(cfg.class_count);
  if (k > n) {
    throw ParameterError("class count K=" + std::to_string(k) + " exceeds vertex count " +
                         std::to_string(n));
  }
  if (!cfg.seed_vertices.empty()) {
    auto sorted = cfg.seed_vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParameterError("seed vertices must be distinct");
    }
    if (sorted.back() >= n) throw ParameterError("seed vertex out of range");
    return cfg.seed_vertices;
  }
  std::vector<VertexId> pool(n);
  std::iota(pool.begin(), pool.end(), VertexId{0});
  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

SystemState initial_state(const WeightedGraph& g, const CompetitionConfig& cfg) {
  auto seeds = seed_vertices(g, cfg);
  SystemState s;
  s.nu.assign(seeds.size(), std::vector<double>(g.vertex_count(), 0.0));
  s.flows.assign(seeds.size(), std::vector<double>(2 * g.edge_count(), 0.0));
  for (std::size_t c = 0; c < seeds.size(); ++c) s.nu[c][seeds[c]] = 1.0;
  return s;
}

double subordination(const SystemState& state, int c, EdgeId e) {
  double total = 0.0;
  for (int q = 0; q < state.class_count(); ++q) total += state.edge_flow(q, e);
  return subordination_from(state.edge_flow(c, e), total, state.class_count());
}

ClassTransition build_transition(const WeightedGraph& g, const SystemState& state,
                                 const CompetitionConfig& cfg, int c) {
  require_no_isolated(g);
  const auto total = total_edge_flow(state, g.edge_count());
  ClassTransition t;
  t.probs.resize(2 * g.edge_count());
  t.subordination.resize(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    double sigma = subordination_from(state.edge_flow(c, e), total[e], state.class_count());
    double survive = 1.0 - cfg.lambda * sigma;
    t.subordination[e] = sigma;
    t.probs[2 * e] = edge.weight / g.strength(edge.u) * survive;
    t.probs[2 * e + 1] = edge.weight / g.strength(edge.v) * survive;
  }
  return t;
}

SystemState step(const WeightedGraph& g, const SystemState& state, const CompetitionConfig& cfg) {
  require_no_isolated(g);
  const int k = state.class_count();
  const auto total = total_edge_flow(state, g.edge_count());
  SystemState next;
  next.step = state.step + 1;
  next.nu.assign(k, std::vector<double>(g.vertex_count(), 0.0));
  next.flows.assign(k, std::vector<double>(2 * g.edge_count(), 0.0));

  for (int c = 0; c < k; ++c) {
    const auto& nu = state.nu[c];
    auto& raw = next.nu[c];
    auto& flow = next.flows[c];
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edge(e);
      double sigma = subordination_from(state.edge_flow(c, e), total[e], k);
      double survive = 1.0 - cfg.lambda * sigma;
      double forward = nu[edge.u] * edge.weight / g.strength(edge.u) * survive;
      double backward = nu[edge.v] * edge.weight / g.strength(edge.v) * survive;
      flow[2 * e] = forward;
      flow[2 * e + 1] = backward;
      raw[edge.v] += forward;
      raw[edge.u] += backward;
    }
    double mass = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (!(mass > 0.0)) {
      throw SimulationError("class " + std::to_string(c) + " lost all mass at step " +
                            std::to_string(next.step));
    }
    for (auto& x : raw) x /= mass;
  }
  return next;
}

RunResult run_from(const WeightedGraph& g, SystemState state, const CompetitionConfig& cfg) {
  cfg.validate();
  int calm = 0;
  while (state.step < cfg.max_steps) {
    SystemState next = step(g, state, cfg);
    double change = 0.0;
    for (std::size_t c = 0; c < next.nu.size(); ++c) {
      for (std::size_t i = 0; i < next.nu[c].size(); ++i) {
        change += std::abs(next.nu[c][i] - state.nu[c][i]);
      }
    }
    state = std::move(next);
    calm = change < cfg.convergence_tol ? calm + 1 : 0;
    if (calm >= kConvergenceWindow) return {std::move(state), true};
  }
  return {std::move(state), false};
}

RunResult run(const WeightedGraph& g, const CompetitionConfig& cfg) {
  return run_from(g, initial_state(g, cfg), cfg);
}

std::int64_t StochasticState::active(int c) const {
  return std::accumulate(counts[c].begin(), counts[c].end(), std::int64_t{0});
}

std::vector<std::int64_t> regenerate(std::span<const std::int64_t> counts, std::int64_t deficit,
                                     Rng& rng) {
  std::vector<double> rho(counts.begin(), counts.end());
  if (deficit <= 0) return std::vector<std::int64_t>(counts.size(), 0);
  return multinomial(deficit, rho, rng);
}

StochasticState stochastic_initial(const WeightedGraph& g, const CompetitionConfig& cfg,
                                   std::int64_t n0) {
  if (n0 < 1) throw ParameterError("initial particle count must be >= 1");
  auto seeds = seed_vertices(g, cfg);
  const auto k = seeds.size();
  StochasticState s;
  s.counts.assign(k, std::vector<std::int64_t>(g.vertex_count(), 0));
  s.traversals.assign(k, std::vector<std::int64_t>(2 * g.edge_count(), 0));
  s.generated = s.counts;
  s.absorbed = s.counts;
  s.origins = seeds;
  s.initial_total = n0;
  for (std::size_t c = 0; c < k; ++c) s.counts[c][seeds[c]] = n0;
  return s;
}

StochasticState stochastic_step(const WeightedGraph& g, const StochasticState& state,
                                const CompetitionConfig& cfg, Rng& rng) {
  require_no_isolated(g);
  const int k = static_cast<int>(state.counts.size());
  const auto total = total_traversals(state.traversals, g.edge_count());

  StochasticState next;
  next.initial_total = state.initial_total;
  next.origins = state.origins;
  next.step = state.step + 1;
  next.counts.assign(k, std::vector<std::int64_t>(g.vertex_count(), 0));
  next.traversals.assign(k, std::vector<std::int64_t>(2 * g.edge_count(), 0));
  next.generated = next.counts;
  next.absorbed = next.counts;

  std::vector<double> walk;
  for (int c = 0; c < k; ++c) {
    for (VertexId i = 0; i < g.vertex_count(); ++i) {
      std::int64_t here = state.counts[c][i];
      if (here == 0) continue;
      auto nb = g.neighbors(i);
      walk.resize(nb.size());
      for (std::size_t r = 0; r < nb.size(); ++r) walk[r] = g.edge(nb[r].edge).weight;
      auto moves = multinomial(here, walk, rng);
      for (std::size_t r = 0; r < nb.size(); ++r) {
        if (moves[r] == 0) continue;
        EdgeId e = nb[r].edge;
        std::int64_t own = state.traversals[c][2 * e] + state.traversals[c][2 * e + 1];
        double sigma = subordination_from(static_cast<double>(own),
                                          static_cast<double>(total[e]), k);
        double survive = 1.0 - cfg.lambda * sigma;
        std::int64_t survivors = moves[r];
        if (survive <= 0.0) {
          survivors = 0;
        } else if (survive < 1.0) {
          survivors = std::binomial_distribution<std::int64_t>(moves[r], survive)(rng);
        }
        next.traversals[c][g.slot(e, i)] = survivors;
        next.counts[c][nb[r].neighbor] += survivors;
        next.absorbed[c][i] += moves[r] - survivors;
      }
    }

    auto& counts = next.counts[c];
    if (next.active(c) == 0) {
      // Extinct class: restart from a single particle at its origin.
      counts[next.origins[c]] = 1;
      next.generated[c][next.origins[c]] = 1;
    }
    auto fresh = regenerate(counts, state.initial_total - next.active(c), rng);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      counts[i] += fresh[i];
      next.generated[c][i] += fresh[i];
    }
  }
  return next;
}

StochasticState stochastic_run(const WeightedGraph& g, const CompetitionConfig& cfg,
                               std::int64_t n0) {
  auto state = stochastic_initial(g, cfg, n0);
  Rng rng(cfg.seed);
  while (state.step < cfg.max_steps) state = stochastic_step(g, state, cfg, rng);
  return state;
}

std::vector<std::vector<double>> stochastic_mean_flows(const WeightedGraph& g,
                                                       const CompetitionConfig& cfg,
                                                       std::int64_t n0, int runs) {
  if (runs < 1) throw ParameterError("run count must be >= 1");
  CompetitionConfig fixed = cfg;
  fixed.seed_vertices = seed_vertices(g, cfg);
  std::vector<std::vector<double>> mean(fixed.seed_vertices.size(),
                                        std::vector<double>(2 * g.edge_count(), 0.0));
  for (int r = 0; r < runs; ++r) {
    fixed.seed = cfg.seed ^ static_cast<std::uint64_t>(r);
    auto s = stochastic_run(g, fixed, n0);
    for (std::size_t c = 0; c < mean.size(); ++c) {
      for (std::size_t slot = 0; slot < mean[c].size(); ++slot) {
        mean[c][slot] += static_cast<double>(s.traversals[c][slot]);
      }
    }
  }
  const double scale = 1.0 / (static_cast<double>(runs) * static_cast<double>(n0));
  for (auto& row : mean) {
    for (auto& x : row) x *= scale;
  }
  return mean;
}

}  // namespace eds
