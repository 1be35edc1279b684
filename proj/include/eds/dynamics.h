#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "eds/graph.h"

namespace eds {

struct CompetitionConfig {
  int class_count = 2;          // K
  double lambda = 0.5;          // competition strength in [0, 1]
  int max_steps = 500;          // T
  double convergence_tol = 1e-8;
  std::uint64_t seed = 0;
  // Optional explicit start vertex per class; overrides the seeded draw.
  std::vector<VertexId> seed_vertices;

  void validate() const;
};

// Number of consecutive sub-tolerance steps required before run() stops.
inline constexpr int kConvergenceWindow = 10;

// State of the deterministic system: per-class vertex distributions and
// per-class directed edge flows (indexed by WeightedGraph::slot).
struct SystemState {
  std::vector<std::vector<double>> nu;
  std::vector<std::vector<double>> flows;
  int step = 0;

  int class_count() const { return static_cast<int>(nu.size()); }
  // n^c_ij + n^c_ji on edge e.
  double edge_flow(int c, EdgeId e) const { return flows[c][2 * e] + flows[c][2 * e + 1]; }

  bool operator==(const SystemState&) const = default;
};

struct ClassTransition {
  std::vector<double> probs;         // per directed slot
  std::vector<double> subordination; // per undirected edge
};

// One delta distribution per class on distinct vertices, drawn without
// replacement from the seeded RNG (or taken from cfg.seed_vertices).
SystemState initial_state(const WeightedGraph& g, const CompetitionConfig& cfg);

// The start vertex of each class as used by initial_state.
std::vector<VertexId> seed_vertices(const WeightedGraph& g, const CompetitionConfig& cfg);

// Fraction of the edge's traffic not belonging to class c; 1/K when the edge
// carries no flow at all.
double subordination(const SystemState& state, int c, EdgeId e);

// p^c_ij = w_ij / s_i * (1 - lambda * sigma^c_ij). Throws SimulationError if
// a vertex has no incident edge.
ClassTransition build_transition(const WeightedGraph& g, const SystemState& state,
                                 const CompetitionConfig& cfg, int c);

// Synchronous update of every class from the same input state.
SystemState step(const WeightedGraph& g, const SystemState& state, const CompetitionConfig& cfg);

struct RunResult {
  SystemState state;
  bool converged = false;
};

// Iterates step() until max_steps or until the L1 change of nu stays below
// convergence_tol for kConvergenceWindow consecutive steps.
RunResult run(const WeightedGraph& g, const CompetitionConfig& cfg);
RunResult run_from(const WeightedGraph& g, SystemState state, const CompetitionConfig& cfg);

// Discrete particle simulation used as a reference for the deterministic
// model. Arrays are indexed [class][vertex] or [class][slot]; traversals hold
// the particles that crossed a directed slot and survived in the last step,
// absorbed counts are attributed to the vertex the particle left.
struct StochasticState {
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<std::vector<std::int64_t>> traversals;
  std::vector<std::vector<std::int64_t>> generated;
  std::vector<std::vector<std::int64_t>> absorbed;
  std::vector<VertexId> origins;
  std::int64_t initial_total = 0;
  int step = 0;

  std::int64_t active(int c) const;
};

using Rng = std::mt19937_64;

// Spreads the deficit over vertices with one multinomial draw, probabilities
// proportional to counts. Returns zeros when deficit <= 0 or counts are all
// zero.
std::vector<std::int64_t> regenerate(std::span<const std::int64_t> counts,
                                     std::int64_t deficit, Rng& rng);

// n0 particles per class, all on the class's start vertex.
StochasticState stochastic_initial(const WeightedGraph& g, const CompetitionConfig& cfg,
                                   std::int64_t n0);
StochasticState stochastic_step(const WeightedGraph& g, const StochasticState& state,
                                const CompetitionConfig& cfg, Rng& rng);
// Runs exactly cfg.max_steps particle steps (no convergence test).
StochasticState stochastic_run(const WeightedGraph& g, const CompetitionConfig& cfg,
                               std::int64_t n0);

// Mean of traversals / n0 over `runs` independent runs, run r seeded with
// cfg.seed ^ r. Comparable to SystemState::flows after cfg.max_steps steps.
std::vector<std::vector<double>> stochastic_mean_flows(const WeightedGraph& g,
                                                       const CompetitionConfig& cfg,
                                                       std::int64_t n0, int runs);

}  // namespace eds
