#pragma once

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "eds/community.h"
#include "eds/dynamics.h"
#include "eds/eval.h"
#include "eds/graph.h"
#include "eds/pipeline.h"

namespace eds {

// {step, nu: [[...]], flows: [{class, i, j, value}]}; zero flows are omitted.
nlohmann::json state_to_json(const WeightedGraph& g, const SystemState& state);
SystemState state_from_json(const WeightedGraph& g, const nlohmann::json& j);

// [{a, b, q}, ...]
nlohmann::json trace_to_json(const MergeTrace& trace);

// {ari_table, avg_ranks, chi2, f_f, df: [df1, df2], cd, alpha, ...}
nlohmann::json report_to_json(const EvalReport& report);

// {knn, K, o, seed, ari, q, labels_file}
nlohmann::json sweep_result_to_json(const SweepResult& r, const std::string& labels_file);

// `vertex,label` with a header row.
void write_partition_csv(std::ostream& out, const Partition& p);

// One edge list per unfolding, each introduced by `# class c`.
void write_unfoldings(std::ostream& out, const std::vector<Unfolding>& unfoldings);

}  // namespace eds
